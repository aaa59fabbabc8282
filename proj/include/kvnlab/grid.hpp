// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace kvn {

using cplx = std::complex<double>;

struct Axis {
    std::string label = "q";  // q, p, lp (lambda_p) or x
    double min = 0.0, max = 1.0;
    int count = 2;
    double step() const { return (max - min) / (count - 1); }
    double at(int i) const { return min + i * step(); }
    static Axis make(const std::string& label, double lo, double hi, int n);
};

// Complex field on a uniform (q,p), (q,lp) grid; row-major with the first axis slow.
struct WaveFunction2D {
    Axis a0, a1;
    std::vector<cplx> v;

    WaveFunction2D() = default;
    WaveFunction2D(const Axis& x, const Axis& y) : a0(x), a1(y), v(static_cast<size_t>(x.count) * y.count) {}
    static WaveFunction2D sample(const Axis& x, const Axis& y, const std::function<cplx(double, double)>& f);

    cplx& operator()(int i, int j) { return v[static_cast<size_t>(i) * a1.count + j]; }
    const cplx& operator()(int i, int j) const { return v[static_cast<size_t>(i) * a1.count + j]; }
    // trapezoid integral of f(x0, x1, psi)
    double integrate(const std::function<double(double, double, cplx)>& f) const;
    double norm2() const;
};

// Complex field on a uniform 1-D grid.
struct WaveFunction1D {
    Axis ax;
    std::vector<cplx> v;

    WaveFunction1D() = default;
    explicit WaveFunction1D(const Axis& x) : ax(x), v(x.count) {}
    static WaveFunction1D sample(const Axis& x, const std::function<cplx(double)>& f);
    double integrate(const std::function<double(double, cplx)>& f) const;
    double norm2() const;
};

// Tensor cubic B-spline interpolant of a 2-D complex field, zero outside the grid.
class BSpline2D {
public:
    explicit BSpline2D(const WaveFunction2D& f);
    cplx operator()(double x0, double x1) const;

private:
    Axis a0_, a1_;
    std::vector<cplx> c_;
};

// 1-D complex FFT helpers (FFTW underneath). Forward: X_k = sum_j x_j e^{-2 pi i jk/N}.
void fft_forward(std::vector<cplx>& x);
void fft_backward(std::vector<cplx>& x);  // unnormalized inverse

}  // namespace kvn
