// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kvnlab/grassmann.hpp"
#include "kvnlab/poly.hpp"

namespace kvn {

// Finite sum of  S * m(phi) * d^alpha  with S a sector matrix, m a monomial.
// Terms are keyed by (alpha, monomial exponent) and carry the complex sector matrix
// so proportional sector parts merge automatically.
class DiffOp {
public:
    using Key = std::pair<Exponent, Exponent>;  // (derivative multi-index, monomial)

    DiffOp() = default;
    explicit DiffOp(int n) : n_(n) {}

    static DiffOp sector(const SectorOperator& S);
    static DiffOp multiply(const Poly& f, const SectorOperator& S);
    static DiffOp multiply(const Poly& f);
    static DiffOp derivative(int n, int a);
    static DiffOp derivative(int n, const Exponent& alpha);

    int n() const { return n_; }
    int dim() const { return 1 << (2 * n_); }
    const std::map<Key, SpMat>& terms() const { return t_; }

    DiffOp operator+(const DiffOp& o) const;
    DiffOp operator-(const DiffOp& o) const;
    DiffOp operator*(const DiffOp& o) const;  // composition, Leibniz on coefficients
    DiffOp operator*(cplx s) const;
    DiffOp& operator+=(const DiffOp& o);

    // L2 formal adjoint under the flat measure; boundary terms dropped.
    DiffOp formal_adjoint() const;
    DiffOp fermionic_part() const;  // alpha = 0 terms
    DiffOp bosonic_part() const;    // alpha != 0 terms
    bool has_derivatives() const;

    double max_abs() const;
    bool is_zero(double tol = 1e-12) const { return max_abs() <= tol; }
    // +1 even, -1 odd, 0 mixed, judged from the sector matrix entries.
    int parity() const;

    // Apply to a multiform whose components are polynomials.
    std::vector<Poly> apply(const std::vector<Poly>& psi) const;
    // Sector matrix of the alpha = 0 terms evaluated at a phase-space point.
    Mat eval_sector(const std::vector<double>& phi) const;
    // Sector-matrix coefficient of one derivative monomial d^alpha, as a matrix of polynomials.
    std::vector<std::vector<Poly>> coefficient(const Exponent& alpha) const;

    void add(const Exponent& alpha, const Exponent& mono, const SpMat& S);

private:
    int n_ = 0;
    std::map<Key, SpMat> t_;
};

inline DiffOp operator*(cplx s, const DiffOp& A) { return A * s; }

enum class Grading { minus, plus, automatic };
// AB - BA, AB + BA, or chosen from the parities (both odd -> anticommutator).
DiffOp graded_commutator(const DiffOp& A, const DiffOp& B, Grading g = Grading::automatic);

}  // namespace kvn
