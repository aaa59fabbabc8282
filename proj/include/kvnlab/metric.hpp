// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "kvnlab/cartan.hpp"

namespace kvn {

enum class MetricKind { svh, gauge, symplectic, genSymplectic, genGaugeA, genGaugeB };
MetricKind parse_metric_kind(const std::string& s);
std::string metric_kind_name(MetricKind k);

struct MetricParams {
    double b = -1.0;        // genSymplectic, genGaugeB
    double theta = 0.0;     // phase theta_alpha of the gauge families
    double gamma = 0.0;     // gamma_I of genGaugeA
    cplx g03{0.0, -1.0};    // overall entry g^{03}
};

// <Phi|psi> = int dphi Phi_i^* g^{ij} psi_j, g in the tensor (matrix) basis.
struct MetricSpec {
    MetricKind kind = MetricKind::svh;
    int n = 1;
    MetricParams params;
    Mat g;
    std::string label() const;
    std::string param_string() const;
};

MetricSpec build_metric(MetricKind kind, int n, const MetricParams& params = {});
// n=1 chapter basis (psi0, psi_q, psi_p, coefficient of c^q c^p) <-> matrix basis
Mat chapter_to_matrix_basis(const Mat& g_chapter);

struct EigenSummary {
    std::vector<double> values;  // ascending
    std::string classification;  // positive-definite, indefinite, degenerate, negative-definite
};
EigenSummary metric_eigenvalues(const MetricSpec& m, double tol = 1e-12);

cplx inner(const MetricSpec& m, const Vec& phi, const Vec& psi);

// g^{-1} A^* g with A^* the flat formal adjoint
DiffOp adjoint(const DiffOp& A, const MetricSpec& m);

struct HermiticityReport {
    MetricKind kind;
    std::string metric_label;
    std::string hamiltonian;
    double residual = 0.0;  // max coefficient of g A - A^* g
    bool hermitian = false;
};
HermiticityReport hermiticity_report(const Poly& H, const MetricSpec& m, double tol = 1e-10);

struct NogoRow {
    std::string metric_label;
    MetricKind kind;
    std::string params;
    bool positive = false;
    double min_eig = 0.0, max_eig = 0.0;
    std::vector<HermiticityReport> reports;  // one per Hamiltonian
    bool hermitian_for_all() const;
};
std::vector<NogoRow> nogo_scan(const std::vector<Poly>& family, const std::vector<MetricSpec>& metrics);

enum class PhysicalKind { svh, symplectic };
// svh: (sum_i c^{q_i} c^{p_i})^k / k!, k = 0..n; symplectic: (sum_i xi^i xi^{i*})^k, k even.
std::vector<Vec> physical_basis(PhysicalKind kind, int n);
SectorOperator xi_op(int n, int i, bool star);  // (c^q +- i c^p)/sqrt 2

struct KernelCheck {
    int degree = 0;
    int kernel_dim = 0;
    int family_size = 0;
    bool extra_vectors = false;
    double smallest_kept = 0.0, largest_dropped = 0.0;
};
// Kernel of the stacked fermionic block of H-tilde on one form degree.
KernelCheck physical_kernel_check(int n, int degree, const std::vector<Poly>& hamiltonians,
                                  const std::vector<std::vector<double>>& points, double tol = 1e-9);

struct JacobiSeries {
    std::vector<double> t;
    std::vector<std::vector<double>> form_norm;     // [point][step], SvH norm of the one-form
    std::vector<std::vector<double>> jacobi_norm;   // [point][step], |delta phi| from neighbouring trajectories
    double max_mismatch = 0.0;
};
// Evolves the one-form components of each point along its trajectory with the fermionic
// block of H-tilde, and a Jacobi field from finite differences of neighbouring trajectories
// started along omega psi0.
JacobiSeries jacobi_norm_evolution(const Poly& H, const std::vector<std::vector<double>>& points,
                                   const std::vector<std::vector<double>>& psi0, double T, int steps,
                                   double fd_eps = 1e-5);
// Least-squares slope of log(series) over t in [t0, t1].
double log_growth_rate(const std::vector<double>& t, const std::vector<double>& series, double t0, double t1);

}  // namespace kvn
