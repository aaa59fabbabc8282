// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace kvn {

Axis Axis::make(const std::string& label, double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("axis '" + label + "' needs count >= 2 and max > min");
    return {label, lo, hi, n};
}

WaveFunction2D WaveFunction2D::sample(const Axis& x, const Axis& y, const std::function<cplx(double, double)>& f) {
    WaveFunction2D w(x, y);
    for (int i = 0; i < x.count; ++i)
        for (int j = 0; j < y.count; ++j) w(i, j) = f(x.at(i), y.at(j));
    return w;
}

double WaveFunction2D::integrate(const std::function<double(double, double, cplx)>& f) const {
    double s = 0.0;
    for (int i = 0; i < a0.count; ++i) {
        double wi = (i == 0 || i == a0.count - 1) ? 0.5 : 1.0;
        double x = a0.at(i);
        for (int j = 0; j < a1.count; ++j) {
            double wj = (j == 0 || j == a1.count - 1) ? 0.5 : 1.0;
            s += wi * wj * f(x, a1.at(j), (*this)(i, j));
        }
    }
    return s * a0.step() * a1.step();
}

double WaveFunction2D::norm2() const {
    return integrate([](double, double, cplx z) { return std::norm(z); });
}

WaveFunction1D WaveFunction1D::sample(const Axis& x, const std::function<cplx(double)>& f) {
    WaveFunction1D w(x);
    for (int i = 0; i < x.count; ++i) w.v[i] = f(x.at(i));
    return w;
}

double WaveFunction1D::integrate(const std::function<double(double, cplx)>& f) const {
    double s = 0.0;
    for (int i = 0; i < ax.count; ++i) s += ((i == 0 || i == ax.count - 1) ? 0.5 : 1.0) * f(ax.at(i), v[i]);
    return s * ax.step();
}

double WaveFunction1D::norm2() const {
    return integrate([](double, cplx z) { return std::norm(z); });
}

namespace {

// Solve (c_{i-1} + 4 c_i + c_{i+1}) / 6 = f_i with c_{-1} = c_N = 0 along one line.
void prefilter(cplx* f, int n, int stride, std::vector<double>& cp, std::vector<cplx>& dp) {
    cp.resize(n);
    dp.resize(n);
    const double a = 1.0 / 6, b = 4.0 / 6;
    cp[0] = a / b;
    dp[0] = f[0] / b;
    for (int i = 1; i < n; ++i) {
        double m = b - a * cp[i - 1];
        cp[i] = a / m;
        dp[i] = (f[static_cast<size_t>(i) * stride] - a * dp[i - 1]) / m;
    }
    f[static_cast<size_t>(n - 1) * stride] = dp[n - 1];
    for (int i = n - 2; i >= 0; --i) f[static_cast<size_t>(i) * stride] = dp[i] - cp[i] * f[static_cast<size_t>(i + 1) * stride];
}

inline void bweights(double s, double w[4]) {
    double s2 = s * s, s3 = s2 * s, u = 1.0 - s;
    w[0] = u * u * u / 6.0;
    w[1] = (3 * s3 - 6 * s2 + 4) / 6.0;
    w[2] = (-3 * s3 + 3 * s2 + 3 * s + 1) / 6.0;
    w[3] = s3 / 6.0;
}

}  // namespace

BSpline2D::BSpline2D(const WaveFunction2D& f) : a0_(f.a0), a1_(f.a1), c_(f.v) {
    std::vector<double> cp;
    std::vector<cplx> dp;
    for (int i = 0; i < a0_.count; ++i) prefilter(&c_[static_cast<size_t>(i) * a1_.count], a1_.count, 1, cp, dp);
    for (int j = 0; j < a1_.count; ++j) prefilter(&c_[j], a0_.count, a1_.count, cp, dp);
}

cplx BSpline2D::operator()(double x0, double x1) const {
    const double u = (x0 - a0_.min) / a0_.step(), v = (x1 - a1_.min) / a1_.step();
    if (!(u > -2.0 && u < a0_.count + 1.0 && v > -2.0 && v < a1_.count + 1.0)) return 0.0;
    const int i = static_cast<int>(std::floor(u)), j = static_cast<int>(std::floor(v));
    double wu[4], wv[4];
    bweights(u - i, wu);
    bweights(v - j, wv);
    cplx s = 0.0;
    for (int a = 0; a < 4; ++a) {
        int ii = i - 1 + a;
        if (ii < 0 || ii >= a0_.count) continue;
        cplx r = 0.0;
        for (int b = 0; b < 4; ++b) {
            int jj = j - 1 + b;
            if (jj < 0 || jj >= a1_.count) continue;
            r += wv[b] * c_[static_cast<size_t>(ii) * a1_.count + jj];
        }
        s += wu[a] * r;
    }
    return s;
}

namespace {
void run_fft(std::vector<cplx>& x, int sign) {
    const int n = static_cast<int>(x.size());
    auto* p = reinterpret_cast<fftw_complex*>(x.data());
    fftw_plan plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("FFTW plan creation failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}
}  // namespace

void fft_forward(std::vector<cplx>& x) { run_fft(x, FFTW_FORWARD); }
void fft_backward(std::vector<cplx>& x) { run_fft(x, FFTW_BACKWARD); }

}  // namespace kvn
