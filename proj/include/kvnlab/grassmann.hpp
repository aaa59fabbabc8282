// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace kvn {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Memory guard for the 2^{2n} sector. Can be raised at run time.
int n_max();
void set_n_max(int n);

// Internal ordering is phi^1=p1, phi^2=q1, phi^3=p2, ... (1-based).
inline int q_index(int i) { return 2 * i; }
inline int p_index(int i) { return 2 * i - 1; }
// "q", "p", "q2", "p3", and for n=3 also x,y,z,px,py,pz.
int parse_label(const std::string& label, int n);
std::string index_label(int a, int n);

struct SectorOperator {
    int n = 0;
    SpMat m;

    int dim() const { return static_cast<int>(m.rows()); }
    Mat dense() const { return Mat(m); }
    SectorOperator operator*(const SectorOperator& o) const;
    SectorOperator operator+(const SectorOperator& o) const;
    SectorOperator operator-(const SectorOperator& o) const;
    SectorOperator operator*(cplx s) const;
    SectorOperator adjoint() const;
};

SectorOperator identity_op(int n);
SectorOperator build_c(int n, int a);
SectorOperator build_cbar(int n, int a);
SectorOperator anticommutator(const SectorOperator& A, const SectorOperator& B);
SectorOperator commutator(const SectorOperator& A, const SectorOperator& B);
SectorOperator number_operator(int n, int a);
SectorOperator form_number(int n);

// Basis index <-> ascending internal index set. Factor k sits at bit (2n-k).
std::vector<int> basis_word(int n, int index);
int basis_index(int n, const std::vector<int>& ascending);
int basis_degree(int n, int index);
std::vector<int> degree_indices(int n, int p);

struct FormComponent {
    std::vector<int> indices;  // ascending internal indices
    cplx value;
};
std::vector<FormComponent> form_components(const Vec& v, int n, int p, double tol = 0.0);

double max_abs(const SpMat& m);

}  // namespace kvn
