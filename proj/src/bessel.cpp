// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kvn {

namespace {

struct Estimate {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();
};

// sum_k (-1)^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)), in long double; error from the largest term
Estimate series(double nu, double x) {
    if (x == 0.0) return {nu == 0.0 ? 1.0 : 0.0, 0.0};
    const long double h = 0.5L * x, h2 = h * h;
    long double term = std::exp(static_cast<long double>(nu) * std::log(h) - std::lgamma(static_cast<long double>(nu) + 1));
    long double sum = term, big = std::abs(term);
    for (int k = 1; k < 2000; ++k) {
        term *= -h2 / (static_cast<long double>(k) * (k + nu));
        sum += term;
        big = std::max(big, std::abs(term));
        if (k > h && std::abs(term) < 1e-21L * std::abs(sum)) break;
    }
    return {static_cast<double>(sum), static_cast<double>(big * 4 * std::numeric_limits<long double>::epsilon())};
}

// Hankel expansion; truncated at the smallest term, which also bounds the error
Estimate hankel(double nu, double x) {
    const double mu = 4 * nu * nu;
    double P = 1.0, Q = 0.0, t = 1.0, smallest = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = t * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
        if (std::abs(next) > std::abs(t) && k > 1) break;
        t = next;
        switch (k % 4) {
            case 1: Q += t; break;
            case 2: P -= t; break;
            case 3: Q -= t; break;
            case 0: P += t; break;
        }
        smallest = std::abs(t);
        if (smallest < 1e-17) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
    const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
    return {amp * (P * std::cos(chi) - Q * std::sin(chi)), amp * smallest};
}

}  // namespace

double bessel_j(double nu, double x) {
    if (!(nu >= 0.0 && nu <= 50.0)) throw std::domain_error("bessel_j: order must lie in [0, 50]");
    if (!(x >= 0.0)) throw std::domain_error("bessel_j: argument must be non-negative");
    if (x < std::max(20.0, nu)) return series(nu, x).value;
    // Hankel at the two lowest orders of the same fractional part, then upward recurrence,
    // which is stable while the order stays below x
    const double nu0 = nu - std::floor(nu);
    const Estimate a = hankel(nu0, x), b = hankel(nu0 + 1.0, x);
    if (std::max(a.error, b.error) > 1e-12) {
        std::ostringstream os;
        os << "bessel_j: no accurate evaluation at nu=" << nu << ", x=" << x;
        throw std::overflow_error(os.str());
    }
    if (nu == nu0) return a.value;
    double jm = a.value, j = b.value;
    for (double v = nu0 + 1.0; v + 0.5 < nu; v += 1.0) {
        const double jp = 2.0 * v / x * j - jm;
        jm = j;
        j = jp;
    }
    return j;
}

double standard_bessel_zero(double nu, int k) {
    if (k < 1) throw std::invalid_argument("zero index must be >= 1");
    if (!(nu >= 0.0 && nu <= 50.0)) throw std::domain_error("bessel zero: order must lie in [0, 50]");
    // J_nu > 0 on (0, nu]; zeros are at least ~2.4 apart, so a 0.25 scan cannot skip one
    const double step = 0.25;
    double a = std::max(nu, 1e-3), fa = bessel_j(nu, a);
    int found = 0;
    for (int guard = 0; guard < 100000; ++guard) {
        double b = a + step, fb = bessel_j(nu, b);
        if ((fa > 0) != (fb > 0) || fb == 0.0) {
            if (++found == k) {
                double lo = a, hi = b, flo = fa;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                    double mid = 0.5 * (lo + hi), fm = bessel_j(nu, mid);
                    if ((fm > 0) == (flo > 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5 * (lo + hi);
            }
        }
        a = b;
        fa = fb;
    }
    throw std::runtime_error("bessel zero search did not terminate");
}

double bessel_zero(double nu, int k) {
    if (k < 1) throw std::invalid_argument("zero index must be >= 1");
    if (!(nu >= 0.0 && nu <= 50.0)) throw std::domain_error("bessel zero: order must lie in [0, 50]");
    if (nu > 0.0) return k == 1 ? 0.0 : standard_bessel_zero(nu, k - 1);
    return standard_bessel_zero(nu, k);
}

}  // namespace kvn
