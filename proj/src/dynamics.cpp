// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "kvnlab/parallel.hpp"

namespace kvn {

namespace {
constexpr double kPi = std::numbers::pi;
}

HamiltonianSpec HamiltonianSpec::free_particle(double m) {
    if (!(m > 0)) throw std::invalid_argument("mass must be positive");
    HamiltonianSpec h;
    h.kind = Kind::free;
    h.m = m;
    return h;
}

HamiltonianSpec HamiltonianSpec::harmonic(double m, double omega) {
    if (!(m > 0)) throw std::invalid_argument("mass must be positive");
    HamiltonianSpec h;
    h.kind = Kind::harmonic;
    h.m = m;
    h.omega = omega;
    return h;
}

HamiltonianSpec HamiltonianSpec::polynomial(const Poly& H, double m) {
    if (H.n() != 1) throw std::invalid_argument("numeric Hamiltonians have one degree of freedom");
    HamiltonianSpec h;
    h.kind = Kind::polynomial;
    h.m = m;
    h.poly = H;
    h.poly_dq = H.derivative(2);
    h.poly_dp = H.derivative(1);
    return h;
}

HamiltonianSpec HamiltonianSpec::polynomial(const std::string& H, double m) { return polynomial(Poly::parse(H, 1), m); }

HamiltonianSpec HamiltonianSpec::custom(RealFn2 H, RealFn2 dq, RealFn2 dp, double m) {
    if (!H || !dq || !dp) throw std::invalid_argument("custom Hamiltonian needs H and both partial derivatives");
    HamiltonianSpec h;
    h.kind = Kind::custom;
    h.m = m;
    h.h = std::move(H);
    h.dh_dq = std::move(dq);
    h.dh_dp = std::move(dp);
    return h;
}

// internal ordering phi^1 = p, phi^2 = q
double HamiltonianSpec::value(double q, double p) const {
    switch (kind) {
        case Kind::free: return p * p / (2 * m);
        case Kind::harmonic: return p * p / (2 * m) + 0.5 * m * omega * omega * q * q;
        case Kind::polynomial: return poly.eval({p, q}).real();
        case Kind::custom: return h(q, p);
    }
    return 0.0;
}

double HamiltonianSpec::dq(double q, double p) const {
    switch (kind) {
        case Kind::free: return 0.0;
        case Kind::harmonic: return m * omega * omega * q;
        case Kind::polynomial: return poly_dq.eval({p, q}).real();
        case Kind::custom: return dh_dq(q, p);
    }
    return 0.0;
}

double HamiltonianSpec::dp(double q, double p) const {
    switch (kind) {
        case Kind::free:
        case Kind::harmonic: return p / m;
        case Kind::polynomial: return poly_dp.eval({p, q}).real();
        case Kind::custom: return dh_dp(q, p);
    }
    return 0.0;
}

double HamiltonianSpec::potential(double x) const {
    if (kind == Kind::polynomial) {
        // the p-dependent part must be p^2/2m
        Poly v(1);
        for (const auto& [e, c] : poly.terms())
            if (e[0] == 0) v.add_term(e, c);
        Poly rest = poly - v - Poly::var(1, 1).pow(2) * cplx(1.0 / (2 * m));
        if (!rest.is_zero(1e-14)) throw std::invalid_argument("quantum evolution needs H = p^2/2m + V(q)");
        return v.eval({0.0, x}).real();
    }
    return value(x, 0.0);
}

std::string HamiltonianSpec::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::free: os << "free(m=" << m << ")"; break;
        case Kind::harmonic: os << "harmonic(m=" << m << ",omega=" << omega << ")"; break;
        case Kind::polynomial: os << poly.str(); break;
        case Kind::custom: os << "custom"; break;
    }
    return os.str();
}

std::pair<double, double> backward_foot(const HamiltonianSpec& H, double q, double p, double t, int steps) {
    using K = HamiltonianSpec::Kind;
    if (H.kind == K::free) return {q - p * t / H.m, p};
    if (H.kind == K::harmonic) {
        const double w = H.omega, c = std::cos(w * t), s = std::sin(w * t), mw = H.m * w;
        if (w == 0.0) return {q - p * t / H.m, p};
        return {q * c - p / mw * s, p * c + mw * q * s};
    }
    if (steps <= 0) steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / 0.01)));
    const double dt = -t / steps;
    auto f = [&](double x, double y) { return std::pair{H.dp(x, y), -H.dq(x, y)}; };
    for (int k = 0; k < steps; ++k) {
        auto [k1q, k1p] = f(q, p);
        auto [k2q, k2p] = f(q + 0.5 * dt * k1q, p + 0.5 * dt * k1p);
        auto [k3q, k3p] = f(q + 0.5 * dt * k2q, p + 0.5 * dt * k2p);
        auto [k4q, k4p] = f(q + dt * k3q, p + dt * k3p);
        q += dt / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
        p += dt / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
    }
    return {q, p};
}

namespace {

void check_qp(const Axis& q, const Axis& p) {
    if (q.label == "lp" || p.label == "lp") throw std::invalid_argument("Liouville evolution works on (q,p) axes");
}

inline bool inside(const Axis& a, double x) { return x >= a.min && x <= a.max; }

template <class Eval>
WaveFunction2D evolve_impl(const HamiltonianSpec& H, const Axis& q, const Axis& p, double t,
                           const LiouvilleOptions& opt, const Eval& eval, bool check_range) {
    check_qp(q, p);
    WaveFunction2D out(q, p);
    parallel_for(q.count, [&](int i) {
        const double qi = q.at(i);
        for (int j = 0; j < p.count; ++j) {
            auto [fq, fp] = backward_foot(H, qi, p.at(j), t, opt.steps);
            if (check_range && !(inside(q, fq) && inside(p, fp))) {
                if (opt.off_grid == OffGrid::abort) {
                    std::ostringstream os;
                    os << "characteristic from (" << qi << ", " << p.at(j) << ") leaves the grid at (" << fq << ", "
                       << fp << ")";
                    throw std::runtime_error(os.str());
                }
                out(i, j) = 0.0;
                continue;
            }
            out(i, j) = eval(fq, fp);
        }
    });
    return out;
}

}  // namespace

WaveFunction2D liouville_evolve(const HamiltonianSpec& H, const WaveFunction2D& psi0, double t,
                                const LiouvilleOptions& opt) {
    if (t == 0.0) return psi0;
    BSpline2D spline(psi0);
    return evolve_impl(H, psi0.a0, psi0.a1, t, opt, [&](double x, double y) { return spline(x, y); }, true);
}

WaveFunction2D liouville_evolve(const HamiltonianSpec& H, const PhaseFn& psi0, const Axis& q, const Axis& p,
                                double t, const LiouvilleOptions& opt) {
    return evolve_impl(H, q, p, t, opt, psi0, false);
}

namespace {

std::vector<double> wavenumbers(int n, double dx) {
    std::vector<double> k(n);
    for (int j = 0; j < n; ++j) k[j] = 2 * kPi / (n * dx) * (j < (n + 1) / 2 ? j : j - n);
    return k;
}

double edge_power_fraction(const std::vector<cplx>& spectrum, const std::vector<double>& k) {
    double top = 0.0, edge = 0.0, all = 0.0;
    for (double v : k) top = std::max(top, std::abs(v));
    for (size_t j = 0; j < k.size(); ++j) {
        double w = std::norm(spectrum[j]);
        all += w;
        if (std::abs(k[j]) > 0.8 * top) edge += w;
    }
    return all > 0 ? edge / all : 0.0;
}

}  // namespace

WaveFunction1D schrodinger_evolve(const HamiltonianSpec& H, const WaveFunction1D& psi0, double t, double hbar,
                                  const SchrodingerOptions& opt) {
    if (!(hbar > 0)) throw std::invalid_argument("hbar must be positive");
    if (t == 0.0) return psi0;
    const int n = psi0.ax.count;
    const double dx = psi0.ax.step(), m = H.m;
    const auto k = wavenumbers(n, dx);

    std::vector<cplx> buf = psi0.v;
    fft_forward(buf);
    if (edge_power_fraction(buf, k) > opt.spectral_tail) {
        std::ostringstream os;
        os << "grid too coarse for hbar=" << hbar << ": momentum content reaches the Nyquist edge hbar*pi/dx="
           << hbar * kPi / dx;
        throw std::runtime_error(os.str());
    }

    const bool has_v = H.kind != HamiltonianSpec::Kind::free;
    int steps = opt.steps;
    if (steps <= 0) {
        if (!has_v) {
            steps = 1;
        } else {
            // 0.1 rad of kinetic phase per step at the highest occupied momentum
            double smax = 0.0, kocc = 0.0;
            for (const auto& z : buf) smax = std::max(smax, std::norm(z));
            for (int j = 0; j < n; ++j)
                if (std::norm(buf[j]) > 1e-12 * smax) kocc = std::max(kocc, std::abs(k[j]));
            const double pedge = hbar * std::max(kocc, 2 * kPi / (n * dx));
            const double dt_max = 0.1 * hbar / (pedge * pedge / (2 * m));
            steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / dt_max)));
        }
    }
    const double dt = t / steps;

    std::vector<cplx> kin(n), half(n);
    for (int j = 0; j < n; ++j) kin[j] = std::exp(cplx(0, -hbar * k[j] * k[j] * dt / (2 * m))) / double(n);
    if (has_v)
        for (int j = 0; j < n; ++j) half[j] = std::exp(cplx(0, -H.potential(psi0.ax.at(j)) * dt / (2 * hbar)));

    WaveFunction1D out = psi0;
    if (!has_v) {
        for (int j = 0; j < n; ++j) buf[j] *= kin[j];
        fft_backward(buf);
        out.v = buf;
        return out;
    }
    buf = psi0.v;
    for (int s = 0; s < steps; ++s) {
        for (int j = 0; j < n; ++j) buf[j] *= half[j];
        fft_forward(buf);
        for (int j = 0; j < n; ++j) buf[j] *= kin[j];
        fft_backward(buf);
        for (int j = 0; j < n; ++j) buf[j] *= half[j];
    }
    out.v = buf;
    return out;
}

WaveFunction2D to_mixed_representation(const WaveFunction2D& psi) {
    const Axis& p = psi.a1;
    if (p.label == "lp") throw std::invalid_argument("state is already in the (q, lp) representation");
    const int n = p.count;
    if (n % 2) throw std::invalid_argument("p axis needs an even number of points");
    const double dp = p.step(), dl = 2 * kPi / (n * dp);
    Axis lam{"lp", -(n / 2) * dl, (n / 2 - 1) * dl, n};
    WaveFunction2D out(psi.a0, lam);
    const double pre = dp / std::sqrt(2 * kPi);
    std::vector<cplx> carrier(n);
    for (int k = 0; k < n; ++k) carrier[k] = pre * std::exp(cplx(0, -p.min * lam.at(k)));
    for (int i = 0; i < psi.a0.count; ++i) {
        std::vector<cplx> row(n);
        for (int j = 0; j < n; ++j) row[j] = (j % 2 ? -1.0 : 1.0) * psi(i, j);
        fft_forward(row);
        for (int k = 0; k < n; ++k) out(i, k) = carrier[k] * row[k];
    }
    return out;
}

WaveFunction2D from_mixed_representation(const WaveFunction2D& psi, const Axis& p) {
    const Axis& lam = psi.a1;
    const int n = lam.count;
    if (lam.label != "lp") throw std::invalid_argument("state is not in the (q, lp) representation");
    if (p.count != n) throw std::invalid_argument("p axis must have as many points as the lp axis");
    const double dl = lam.step();
    if (std::abs(dl * p.step() * n - 2 * kPi) > 1e-9 * 2 * kPi)
        throw std::invalid_argument("p axis is not the Fourier dual of the lp axis");
    WaveFunction2D out(psi.a0, p);
    const double pre = dl / std::sqrt(2 * kPi);
    std::vector<cplx> carrier(n);
    for (int k = 0; k < n; ++k) carrier[k] = std::exp(cplx(0, p.min * lam.at(k)));
    for (int i = 0; i < psi.a0.count; ++i) {
        std::vector<cplx> row(n);
        for (int k = 0; k < n; ++k) row[k] = carrier[k] * psi(i, k);
        fft_backward(row);
        for (int j = 0; j < n; ++j) out(i, j) = pre * (j % 2 ? -1.0 : 1.0) * row[j];
    }
    return out;
}

namespace {

// returns op(psi) along the second axis: multiplies the discrete spectrum by factor(k)
std::vector<cplx> spectral_row(std::vector<cplx> row, double dx, double factor) {
    const int n = static_cast<int>(row.size());
    const auto k = wavenumbers(n, dx);
    fft_forward(row);
    for (int j = 0; j < n; ++j) row[j] *= factor * k[j] / double(n);
    if (n % 2 == 0) row[n / 2] = 0.0;
    fft_backward(row);
    return row;
}

void check_norm(double nrm, double tol) {
    if (std::abs(nrm - 1.0) > tol) {
        std::ostringstream os;
        os << "moments need a normalized state, got norm " << nrm;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

Moments moments(const WaveFunction2D& psi, double norm_tol) {
    Moments r;
    r.norm = psi.norm2();
    check_norm(r.norm, norm_tol);
    r.mean0 = psi.integrate([](double x, double, cplx z) { return x * std::norm(z); }) / r.norm;
    r.var0 = psi.integrate([&](double x, double, cplx z) { return (x - r.mean0) * (x - r.mean0) * std::norm(z); }) /
             r.norm;
    if (psi.a1.label != "lp") {
        r.mean1 = psi.integrate([](double, double y, cplx z) { return y * std::norm(z); }) / r.norm;
        r.var1 = psi.integrate([&](double, double y, cplx z) { return (y - r.mean1) * (y - r.mean1) * std::norm(z); }) /
                 r.norm;
        return r;
    }
    // p = i d/dlp: in Fourier space i * (i k) = -k
    WaveFunction2D pp(psi.a0, psi.a1);
    const int n = psi.a1.count;
    for (int i = 0; i < psi.a0.count; ++i) {
        std::vector<cplx> row(psi.v.begin() + static_cast<long>(i) * n, psi.v.begin() + static_cast<long>(i + 1) * n);
        row = spectral_row(std::move(row), psi.a1.step(), -1.0);
        std::copy(row.begin(), row.end(), pp.v.begin() + static_cast<long>(i) * n);
    }
    double s1 = 0.0, s2 = 0.0;
    const double w = psi.a0.step() * psi.a1.step();
    for (int i = 0; i < psi.a0.count; ++i) {
        const double wi = (i == 0 || i == psi.a0.count - 1) ? 0.5 : 1.0;
        for (int j = 0; j < n; ++j) {
            const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            s1 += wi * wj * (std::conj(psi(i, j)) * pp(i, j)).real();
            s2 += wi * wj * std::norm(pp(i, j));
        }
    }
    r.mean1 = s1 * w / r.norm;
    r.var1 = s2 * w / r.norm - r.mean1 * r.mean1;
    return r;
}

Moments moments(const WaveFunction1D& psi, double hbar, double norm_tol) {
    Moments r;
    r.norm = psi.norm2();
    check_norm(r.norm, norm_tol);
    r.mean0 = psi.integrate([](double x, cplx z) { return x * std::norm(z); }) / r.norm;
    r.var0 = psi.integrate([&](double x, cplx z) { return (x - r.mean0) * (x - r.mean0) * std::norm(z); }) / r.norm;
    // p = -i hbar d/dx: -i hbar (i k) = hbar k
    WaveFunction1D pp(psi.ax);
    pp.v = spectral_row(psi.v, psi.ax.step(), hbar);
    double s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < psi.ax.count; ++j) {
        const double wj = (j == 0 || j == psi.ax.count - 1) ? 0.5 : 1.0;
        s1 += wj * (std::conj(psi.v[j]) * pp.v[j]).real();
        s2 += wj * std::norm(pp.v[j]);
    }
    r.mean1 = s1 * psi.ax.step() / r.norm;
    r.var1 = s2 * psi.ax.step() / r.norm - r.mean1 * r.mean1;
    return r;
}

PhaseFn double_gaussian(double a, double b, double p_i) {
    if (!(a > 0 && b > 0)) throw std::invalid_argument("Gaussian widths must be positive");
    const double N = 1.0 / std::sqrt(kPi * a * b);
    return [=](double q, double p) -> cplx {
        return N * std::exp(-q * q / (2 * a * a) - (p - p_i) * (p - p_i) / (2 * b * b));
    };
}

std::function<cplx(double)> gaussian_1d(double a, double p_i, double hbar) {
    if (!(a > 0)) throw std::invalid_argument("Gaussian width must be positive");
    const double N = std::pow(kPi * a * a, -0.25);
    return [=](double x) { return N * std::exp(cplx(-x * x / (2 * a * a), p_i * x / hbar)); };
}

Axis auto_axis(const std::string& label, double center, double sigma, int count) {
    return Axis::make(label, center - 8 * sigma, center + 8 * sigma, count);
}

NsmResult nsm_classical(const HamiltonianSpec& H, const PhaseFn& psi0, const Axis& q, const Axis& p, double tau) {
    if (tau < 0) throw std::invalid_argument("tau must be non-negative");
    NsmResult r;
    r.ax0 = q;
    r.ax1 = p;
    // no measurement: the wave itself is propagated on the grid, then squared
    WaveFunction2D psi = liouville_evolve(H, WaveFunction2D::sample(q, p, psi0), tau);
    // NSM of phi at t=0: mixture of delta states, each carried along its own trajectory
    const size_t N = psi.v.size();
    r.rho_free.resize(N);
    r.rho_nsm.resize(N);
    parallel_for(q.count, [&](int i) {
        for (int j = 0; j < p.count; ++j) {
            auto [fq, fp] = backward_foot(H, q.at(i), p.at(j), tau);
            const size_t idx = static_cast<size_t>(i) * p.count + j;
            r.rho_free[idx] = std::norm(psi.v[idx]);
            r.rho_nsm[idx] = std::norm(psi0(fq, fp));
        }
    });
    for (size_t k = 0; k < N; ++k) r.max_diff = std::max(r.max_diff, std::abs(r.rho_free[k] - r.rho_nsm[k]));
    return r;
}

namespace {
double coefficient_of_variation(const Axis& x, const std::vector<double>& rho, double window) {
    double s = 0.0, s2 = 0.0;
    int cnt = 0;
    for (int i = 0; i < x.count; ++i) {
        if (std::abs(x.at(i)) > window) continue;
        s += rho[i];
        s2 += rho[i] * rho[i];
        ++cnt;
    }
    if (cnt < 2) throw std::invalid_argument("central window holds fewer than two grid points");
    const double mean = s / cnt, var = std::max(0.0, s2 / cnt - mean * mean);
    return std::sqrt(var) / mean;
}
}  // namespace

NsmResult nsm_quantum(const std::function<cplx(double)>& psi0, const Axis& x, double tau, double hbar, double m,
                      double sigma_meas, double window) {
    if (tau < 0) throw std::invalid_argument("tau must be non-negative");
    if (!(sigma_meas > 0)) throw std::invalid_argument("measurement resolution must be positive");
    NsmResult r;
    r.ax0 = x;
    const auto Hf = HamiltonianSpec::free_particle(m);
    const int n = x.count;
    const double dx = x.step();

    auto free = schrodinger_evolve(Hf, WaveFunction1D::sample(x, psi0), tau, hbar);
    r.rho_free.resize(n);
    for (int i = 0; i < n; ++i) r.rho_free[i] = std::norm(free.v[i]);

    // one narrow packet at the grid centre; free evolution is translation invariant
    const int c = n / 2;
    const double xc = x.at(c);
    auto packet = gaussian_1d(sigma_meas, 0.0, hbar);
    auto pk = schrodinger_evolve(Hf, WaveFunction1D::sample(x, [&](double s) { return packet(s - xc); }), tau, hbar);
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = std::norm(pk.v[i]);

    std::vector<double> w(n);
    double wmax = 0.0;
    for (int j = 0; j < n; ++j) wmax = std::max(wmax, w[j] = std::norm(psi0(x.at(j))));
    std::vector<int> support;
    for (int j = 0; j < n; ++j)
        if (w[j] > 1e-18 * wmax) support.push_back(j);
    r.rho_nsm.assign(n, 0.0);
    parallel_for(n, [&](int i) {
        double s = 0.0;
        for (int j : support) {
            const int o = c + i - j;
            if (o >= 0 && o < n) s += w[j] * d[o];
        }
        r.rho_nsm[i] = s * dx;
    });
    for (int i = 0; i < n; ++i) r.max_diff = std::max(r.max_diff, std::abs(r.rho_free[i] - r.rho_nsm[i]));
    r.cv_free = coefficient_of_variation(x, r.rho_free, window);
    r.cv_nsm = coefficient_of_variation(x, r.rho_nsm, window);
    return r;
}

PhaseBlindness phase_blindness_check(const HamiltonianSpec& H, const RealFn2& F, const RealFn2& G, const RealFn2& O,
                                     const Axis& q, const Axis& p, const std::vector<double>& times) {
    PhaseBlindness r;
    r.t = times;
    PhaseFn with = [&](double x, double y) { return F(x, y) * std::exp(cplx(0, G(x, y))); };
    PhaseFn without = [&](double x, double y) { return cplx(F(x, y)); };
    PhaseFn Fc = without;
    PhaseFn Gc = [&](double x, double y) { return cplx(G(x, y)); };
    auto expect = [&](const WaveFunction2D& w) {
        return w.integrate([&](double x, double y, cplx z) { return O(x, y) * std::norm(z); });
    };
    for (double t : times) {
        auto a = liouville_evolve(H, with, q, p, t);
        auto b = liouville_evolve(H, without, q, p, t);
        const double ea = expect(a), eb = expect(b);
        r.with_phase.push_back(ea);
        r.without_phase.push_back(eb);
        r.max_deviation = std::max(r.max_deviation, std::abs(ea - eb));
        auto Ft = liouville_evolve(H, Fc, q, p, t);
        auto Gt = liouville_evolve(H, Gc, q, p, t);
        for (size_t k = 0; k < a.v.size(); ++k)
            r.max_split_deviation =
                std::max(r.max_split_deviation, std::abs(Ft.v[k] * std::exp(cplx(0, Gt.v[k].real())) - a.v[k]));
    }
    return r;
}

}  // namespace kvn
