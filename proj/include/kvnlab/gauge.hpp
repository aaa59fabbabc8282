// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kvnlab/dynamics.hpp"
#include "kvnlab/superpoly.hpp"

namespace kvn {

// Units e = c = 1 throughout.
struct GaugeField {
    enum class Kind { landau, flux_line, polynomial };
    Kind kind = Kind::landau;
    double B = 0.0;       // landau
    double flux = 0.0;    // flux_line
    std::vector<Poly> A;  // polynomial: A_i(q) for i = 1..n (n = 3 for landau)

    static GaugeField landau(double B);  // A = (0, B x, 0)
    static GaugeField flux_line(double flux);
    static GaugeField polynomial(const std::vector<Poly>& A);
    // A_i as polynomials in the n = 3 phase-space variables; throws for flux_line
    std::vector<Poly> components(int n) const;
    std::string str() const;
};

struct Substitution {
    std::string from, to;
};

struct CoupledLiouvillian {
    SuperPoly free_bosonic;        // lambda-symbol form of the free Liouvillian
    SuperPoly coupled_bosonic;     // p -> p - A, lambda_q -> lambda_q - Acal applied to free_bosonic
    SuperPoly via_superfield;      // i int dtheta dthetabar H(Phi^p - A(Phi^q))
    SuperPoly direct;              // CPI Hamiltonian of H(p - A(q))
    std::vector<Substitution> rules;
    double bosonic_residual = 0.0;    // coupled_bosonic vs lambda part of direct
    double superfield_residual = 0.0; // via_superfield vs direct
};
// H is the free Hamiltonian as a polynomial in (x,y,z,px,py,pz) or any n.
CoupledLiouvillian minimal_coupling(const Poly& H, const GaugeField& field);
// Bosonic Liouvillian with p shifted by A_p and lambda_q shifted by the Acal built from A_lam.
SuperPoly coupled_bosonic(const Poly& H, const std::vector<Poly>& A_p, const std::vector<Poly>& A_lam);
// bosonic (ghost-free) part of a super-polynomial
SuperPoly bosonic_part(const SuperPoly& F);

// Gauge function alpha(q) in one dimension with its derivative.
struct GaugeFunction {
    std::function<double(double)> alpha, dalpha;
    static GaugeFunction linear(double beta);
    static GaugeFunction constant(double c);
};
enum class GaugeRep { qp, qlp };
// (q,p): psi'(q,p) = psi(q, p - alpha'(q)); (q,lp): psi' = exp(-i lp alpha'(q)) psi.
WaveFunction2D gauge_transform(const WaveFunction2D& psi, const GaugeFunction& g);
PhaseFn gauge_transform(const PhaseFn& psi, const GaugeFunction& g, GaugeRep rep);

// Velocity rate dv_x/dt = {v_x, L} for the bosonic Liouvillian coupled with A' = A + grad(alpha)
// in the momenta, and with A' (transform_lambda) or the untransformed A in the lambda shift.
// Returned in the untransformed chart, so it is alpha-free exactly when the coupling is covariant.
SuperPoly velocity_rate(const Poly& H, const std::vector<Poly>& A, const Poly& alpha, bool transform_lambda,
                        double m = 1.0);

struct SpectrumLevel {
    std::string label;
    double value = 0.0;
    int degeneracy = 1;
};
struct SpectrumResult {
    std::vector<SpectrumLevel> levels;  // sorted by value
    std::string context;
    std::vector<double> values() const;
};

// Classical Landau Liouvillian on the truncated (n_+, n_-) oscillator basis, N_tr states per mode.
SpectrumResult landau_spectrum(double B, int n_tr, double m = 1.0);
// hbar omega (n + 1/2) + pz^2/2m for n < n_levels
SpectrumResult landau_quantum(double B, int n_levels, double hbar = 1.0, double m = 1.0, double pz = 0.0);

struct LandauFdCheck {
    std::vector<double> eigenvalues;  // in units of omega, from the lowest shells of the grid operator
    double max_integer_distance = 0.0;
    int shells = 0;
};
// Fourth-order finite differences of omega (d_X d_L - X L) on an n x n Dirichlet grid over [-L, L]^2.
LandauFdCheck landau_fd_check(int grid = 128, double half_width = 7.0, int shells = 6, unsigned seed = 7);

struct ConstantOfMotion {
    std::string name;
    Poly f;
    double residual = 0.0;  // max coefficient of [f, H-tilde]
};
// x0 = py/B, y0 = y - px/B, rho^2 = (v_x^2 + v_y^2)/omega^2 for H = (p - A)^2/2m, A = (0, Bx, 0).
std::vector<ConstantOfMotion> landau_constants(double B, double m = 1.0);

struct AbLevel {
    double alpha = 0.0;
    int k = 0, m = 0;
    double nu = 0.0, zero = 0.0;
    double coefficient = 0.0;  // alpha_{k,nu}^2 / 2, the energy in units hbar^2/(mu b^2)
    double energy = 0.0;
    bool classical_identical = false;
    double classical_max_diff = 0.0;
};
struct AbResult {
    std::vector<AbLevel> levels;
    SpectrumResult quantum_free, quantum_flux;
    SpectrumResult classical_free, classical_flux;
    bool symbolic_identity = false;
    double classical_max_diff = 0.0;
};
// Quantum levels E = hbar^2 alpha_{k,|m - alpha|}^2/(2 mu b^2) + pz^2/(2 mu); classical radial
// Liouvillian discretized with and without flux after the p_theta shift.
AbResult ab_spectra(double flux_alpha, double b, const std::vector<std::pair<int, int>>& levels, double pz = 0.0,
                    double lz = 0.0, double mu = 1.0, double hbar = 1.0, int fd_grid = 14);

}  // namespace kvn
