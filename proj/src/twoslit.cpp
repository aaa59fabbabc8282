// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "kvnlab/dynamics.hpp"
#include "kvnlab/parallel.hpp"

namespace kvn {

void SlitConfig::validate() const {
    if (!(delta > 0 && delta < x_A)) throw std::invalid_argument("slit config needs 0 < delta < x_A");
    if (!(y_F > 0 && y_F < y_S)) throw std::invalid_argument("slit config needs 0 < y_F < y_S");
    if (!(p_y > 0 && a > 0 && b > 0 && m > 0 && hbar > 0))
        throw std::invalid_argument("slit config needs positive p_y, a, b, m, hbar");
    if (!(x_max > x_min) || x_count < 3) throw std::invalid_argument("slit config needs a screen window of >= 3 points");
    if (gl_nodes < 64) throw std::invalid_argument("slit quadrature needs at least 64 nodes per slit");
}

SlitMode parse_slit_mode(const std::string& s) {
    if (s == "classical") return SlitMode::classical;
    if (s == "quantum") return SlitMode::quantum;
    if (s == "simplified") return SlitMode::simplified;
    throw std::invalid_argument("unknown two-slit mode '" + s + "' (classical, quantum, simplified)");
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1);
            double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1 - z * z) * dp * dp);
    }
    return cache[n] = {x, w};
}

namespace {

template <class T, class F>
T gl_rule(const F& f, double lo, double hi, const std::vector<double>& x, const std::vector<double>& w) {
    const double h = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
    T s{};
    for (size_t k = 0; k < x.size(); ++k) s += w[k] * f(c + h * x[k]);
    return s * h;
}

// Splits [lo, hi] until the two-half estimate matches the whole-interval one to rel_tol.
template <class T, class F>
T adaptive_gl(const F& f, double lo, double hi, const std::vector<double>& x, const std::vector<double>& w,
              double rel_tol, double abs_floor, int depth = 0) {
    const double mid = 0.5 * (lo + hi);
    T whole = gl_rule<T>(f, lo, hi, x, w);
    T halves = gl_rule<T>(f, lo, mid, x, w) + gl_rule<T>(f, mid, hi, x, w);
    if (std::abs(halves - whole) <= std::max(rel_tol * std::abs(halves), abs_floor)) return halves;
    if (depth >= 24) {
        std::ostringstream os;
        os << "slit quadrature did not reach relative " << rel_tol << " on [" << lo << ", " << hi << "]";
        throw std::runtime_error(os.str());
    }
    return adaptive_gl<T>(f, lo, mid, x, w, rel_tol, abs_floor, depth + 1) +
           adaptive_gl<T>(f, mid, hi, x, w, rel_tol, abs_floor, depth + 1);
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

std::vector<double> screen(const SlitConfig& cfg) {
    std::vector<double> x(cfg.x_count);
    for (int i = 0; i < cfg.x_count; ++i) x[i] = cfg.x_min + (cfg.x_max - cfg.x_min) * i / (cfg.x_count - 1);
    return x;
}

}  // namespace

ClassicalSlits two_slit_classical(const SlitConfig& cfg, const RealFn2& G) {
    cfg.validate();
    const auto psi0 = double_gaussian(cfg.a, cfg.b, cfg.p_i);
    const double tS = cfg.t_S(), abar = tS - cfg.t_F(), m = cfg.m;
    const auto [gx, gw] = gauss_legendre(cfg.gl_nodes);
    const auto xs = screen(cfg);
    // density on the screen from initial momentum p: initial position x - p tS/m
    auto density = [&](double x) {
        return [&, x](double p) {
            const double x0 = x - p * tS / m;
            cplx v = psi0(x0, p);
            if (G) v *= std::exp(cplx(0, G(x0, p)));
            return std::norm(v);
        };
    };
    // passing slit s at t_F: |x - p abar/m - s x_A| < delta
    auto slit = [&](double x, double s) {
        return adaptive_gl<double>(density(x), (x - s * cfg.x_A - cfg.delta) * m / abar,
                                   (x - s * cfg.x_A + cfg.delta) * m / abar, gx, gw, cfg.rel_tol, 1e-300);
    };
    ClassicalSlits r;
    std::vector<double> P1(xs.size()), P2(xs.size()), Pb(xs.size());
    parallel_for(static_cast<int>(xs.size()), [&](int i) {
        P1[i] = slit(xs[i], +1.0);
        P2[i] = slit(xs[i], -1.0);
        Pb[i] = P1[i] + P2[i];
    });
    const double N = trapezoid(xs, Pb);
    if (!(N > 0)) throw std::runtime_error("classical two-slit profile vanishes on the screen window");
    for (size_t i = 0; i < xs.size(); ++i) {
        P1[i] /= N;
        P2[i] /= N;
        Pb[i] /= N;
    }
    r.both = {xs, Pb};
    r.only1 = {xs, P1};
    r.only2 = {xs, P2};
    return r;
}

namespace {

// sum over slits of int dx_F K(x - x_F) psi_F(x_F), K the free kernel over t_S - t_F
Profile coherent_slits(const SlitConfig& cfg, const std::function<cplx(double)>& psi_F) {
    const double abar = cfg.t_S() - cfg.t_F(), m = cfg.m, hb = cfg.hbar;
    const auto [gx, gw] = gauss_legendre(cfg.gl_nodes);
    const auto xs = screen(cfg);
    std::vector<double> P(xs.size());
    parallel_for(static_cast<int>(xs.size()), [&](int i) {
        const double x = xs[i];
        auto f = [&](double xf) { return std::exp(cplx(0, m * (x - xf) * (x - xf) / (2 * hb * abar))) * psi_F(xf); };
        cplx psi = 0.0;
        for (double s : {+1.0, -1.0})
            psi += adaptive_gl<cplx>(f, s * cfg.x_A - cfg.delta, s * cfg.x_A + cfg.delta, gx, gw, cfg.rel_tol, 1e-300);
        P[i] = std::norm(psi);
    });
    const double N = trapezoid(xs, P);
    if (!(N > 0)) throw std::runtime_error("two-slit profile vanishes on the screen window");
    for (double& v : P) v /= N;
    return {xs, P};
}

}  // namespace

Profile two_slit(const SlitConfig& cfg, SlitMode mode) {
    cfg.validate();
    switch (mode) {
        case SlitMode::classical: return two_slit_classical(cfg).both;
        case SlitMode::quantum: {
            // freely evolved Gaussian at t_F
            const double tF = cfg.t_F(), m = cfg.m, hb = cfg.hbar, a = cfg.a, pi = cfg.p_i;
            const cplx w = cplx(a * a, hb * tF / m);
            return coherent_slits(cfg, [=](double x) {
                const double c = x - pi * tF / m;
                return std::exp(-c * c / (2.0 * w) + cplx(0, pi * x / hb - pi * pi * tF / (2 * m * hb)));
            });
        }
        case SlitMode::simplified:
            // uniform wave across both openings
            return coherent_slits(cfg, [](double) { return cplx(1.0); });
    }
    throw std::invalid_argument("unknown two-slit mode");
}

int count_minima(const std::vector<double>& P, double floor) {
    const int n = static_cast<int>(P.size());
    if (n < 3) throw std::invalid_argument("profile needs at least 3 samples");
    const double pmax = *std::max_element(P.begin(), P.end());
    const double thr = floor * pmax;
    int count = 0;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(P[i] < P[i - 1] && P[i] < P[i + 1])) continue;
        double left = P[i], right = P[i];
        for (int j = i - 1; j >= 0 && P[j] >= P[i]; --j) left = std::max(left, P[j]);
        for (int j = i + 1; j < n && P[j] >= P[i]; ++j) right = std::max(right, P[j]);
        if (std::min(left, right) - P[i] > thr) ++count;
    }
    return count;
}

}  // namespace kvn
