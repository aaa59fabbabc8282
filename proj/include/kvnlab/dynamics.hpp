// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kvnlab/grid.hpp"
#include "kvnlab/poly.hpp"

namespace kvn {

using PhaseFn = std::function<cplx(double, double)>;
using RealFn2 = std::function<double(double, double)>;

// One degree of freedom. Quantum evolution reads the potential as H(x, 0) and assumes p^2/2m kinetics.
struct HamiltonianSpec {
    enum class Kind { free, harmonic, polynomial, custom };
    Kind kind = Kind::free;
    double m = 1.0;
    double omega = 1.0;
    Poly poly;                          // polynomial: in (q, p), n = 1
    Poly poly_dq, poly_dp;
    RealFn2 h, dh_dq, dh_dp;            // custom

    static HamiltonianSpec free_particle(double m = 1.0);
    static HamiltonianSpec harmonic(double m, double omega);
    static HamiltonianSpec polynomial(const Poly& H, double m = 1.0);
    static HamiltonianSpec polynomial(const std::string& H, double m = 1.0);
    static HamiltonianSpec custom(RealFn2 H, RealFn2 dq, RealFn2 dp, double m = 1.0);

    double value(double q, double p) const;
    double dq(double q, double p) const;
    double dp(double q, double p) const;
    double potential(double x) const;
    std::string str() const;
};

enum class OffGrid { zero_pad, abort };

struct LiouvilleOptions {
    int steps = 0;  // RK4 steps per characteristic, 0 = automatic (dt <= 0.01)
    OffGrid off_grid = OffGrid::zero_pad;
};

// Phase-space point reached at time -t from (q, p); exact for free and harmonic flows.
std::pair<double, double> backward_foot(const HamiltonianSpec& H, double q, double p, double t, int steps = 0);

// psi(q,p,t) = psi0(foot) with psi0 interpolated by a cubic B-spline.
WaveFunction2D liouville_evolve(const HamiltonianSpec& H, const WaveFunction2D& psi0, double t,
                                const LiouvilleOptions& opt = {});
// Same, with the initial wave given analytically (no interpolation).
WaveFunction2D liouville_evolve(const HamiltonianSpec& H, const PhaseFn& psi0, const Axis& q, const Axis& p,
                                double t, const LiouvilleOptions& opt = {});

struct SchrodingerOptions {
    int steps = 0;             // 0 = automatic
    double spectral_tail = 1e-10;  // allowed power fraction near the grid-edge momentum
};
// Strang split-step on a periodic grid; the kinetic factor is exact, so V = 0 takes one step.
WaveFunction1D schrodinger_evolve(const HamiltonianSpec& H, const WaveFunction1D& psi0, double t, double hbar = 1.0,
                                  const SchrodingerOptions& opt = {});

// psi(q, lp) = (2 pi)^{-1/2} int dp e^{-i p lp} psi(q, p). The p axis needs an even count.
WaveFunction2D to_mixed_representation(const WaveFunction2D& psi);
WaveFunction2D from_mixed_representation(const WaveFunction2D& psi, const Axis& p);

struct Moments {
    double norm = 0.0;
    double mean0 = 0.0, var0 = 0.0;  // q or x
    double mean1 = 0.0, var1 = 0.0;  // p
};
// (q,p): both multiplicative. (q,lp): p = i d/dlp, spectral.
Moments moments(const WaveFunction2D& psi, double norm_tol = 1e-4);
// x multiplicative, p = -i hbar d/dx, spectral.
Moments moments(const WaveFunction1D& psi, double hbar = 1.0, double norm_tol = 1e-4);

// psi0 = N exp(-q^2/2a^2 - (p - p_i)^2/2b^2), normalized to 1 on R^2.
PhaseFn double_gaussian(double a, double b, double p_i);
// psi0 = N exp(-x^2/2a^2 + i p_i x / hbar)
std::function<cplx(double)> gaussian_1d(double a, double p_i, double hbar = 1.0);

Axis auto_axis(const std::string& label, double center, double sigma, int count = 512);

// ---- two slits

struct SlitConfig {
    double x_A = 0.5, delta = 0.1;
    double y_F = 1.0, y_S = 2.0, p_y = 1.0;
    double a = 1.0, b = 1.0, m = 1.0, hbar = 1.0;
    double p_i = 0.0;
    double x_min = -20.0, x_max = 20.0;
    int x_count = 4001;
    int gl_nodes = 64;
    double rel_tol = 1e-8;
    double t_F() const { return m * y_F / p_y; }
    double t_S() const { return m * y_S / p_y; }
    void validate() const;
};

enum class SlitMode { classical, quantum, simplified };
SlitMode parse_slit_mode(const std::string& s);

struct Profile {
    std::vector<double> x, P;
};

struct ClassicalSlits {
    Profile both, only1, only2;  // shared normalization: both integrates to 1
};
// Optional injected phase G(q, p) multiplies the double Gaussian by e^{iG}.
ClassicalSlits two_slit_classical(const SlitConfig& cfg, const RealFn2& G = {});
Profile two_slit(const SlitConfig& cfg, SlitMode mode);

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

int count_minima(const std::vector<double>& P, double floor = 1e-6);

// ---- measurements

struct NsmResult {
    Axis ax0, ax1;                     // ax1 unused in quantum mode
    std::vector<double> rho_free, rho_nsm;
    double max_diff = 0.0;
    double cv_free = 0.0, cv_nsm = 0.0;  // quantum, over |x| <= window
};
NsmResult nsm_classical(const HamiltonianSpec& H, const PhaseFn& psi0, const Axis& q, const Axis& p, double tau);
// Position NSM realised as a mixture of freely evolved packets of width sigma_meas.
NsmResult nsm_quantum(const std::function<cplx(double)>& psi0, const Axis& x, double tau, double hbar = 1.0,
                      double m = 1.0, double sigma_meas = 0.05, double window = 5.0);

struct PhaseBlindness {
    std::vector<double> t;
    std::vector<double> with_phase, without_phase;
    double max_deviation = 0.0;
    double max_split_deviation = 0.0;  // F and G evolved separately vs F e^{iG}
};
PhaseBlindness phase_blindness_check(const HamiltonianSpec& H, const RealFn2& F, const RealFn2& G, const RealFn2& O,
                                     const Axis& q, const Axis& p, const std::vector<double>& times);

}  // namespace kvn
