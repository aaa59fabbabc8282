// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kvnlab/diffop.hpp"

namespace kvn {

// omega^{ab} with omega^{q_i p_i} = +1, in internal ordering; omega_{ab} is its inverse.
Eigen::MatrixXd omega_upper(int n);
Eigen::MatrixXd omega_lower(int n);

DiffOp exterior_derivative(int n);
DiffOp interior_contraction(const std::vector<Poly>& V);
std::vector<Poly> hamiltonian_vector(const Poly& H);
DiffOp lie_derivative(const std::vector<Poly>& V);  // d iota_V + iota_V d
DiffOp lie_derivative(const Poly& H);               // along the Hamiltonian flow of H
// H-tilde = -i L_h
DiffOp evolution_operator(const Poly& H);
// -i w^{ab} d_bH d_a + i cbar_a w^{ab} d_b d_k H c^k, written out term by term
DiffOp evolution_operator_explicit(const Poly& H);

SectorOperator hodge_star(int n);
DiffOp codifferential(int n);           // -* d *
DiffOp codifferential_explicit(int n);  // -sum cbar_a d_a
DiffOp laplacian(int n);                // d delta + delta d
DiffOp laplacian_explicit(int n);       // -sum d_a^2

enum class ChargeName { Q, Qbar, K, Kbar, Qf, N, Nbar, QH, QHbar };
ChargeName parse_charge(const std::string& s);
std::string charge_name(ChargeName c);
DiffOp charge(ChargeName name, int n, const std::optional<Poly>& H = std::nullopt,
              std::optional<double> beta = std::nullopt);

struct IrrepMatrices {
    Mat Q, Qbar, iN, minus_iNbar, H, Qf, K, Kbar;
    std::vector<Mat> all() const { return {Q, Qbar, iN, minus_iNbar, H, Qf, K, Kbar}; }
};
IrrepMatrices irrep_matrices(double h);
// Dimension of {X : XA = AX for all A} from the SVD of the stacked linear system.
int commutant_dimension(const std::vector<Mat>& set, double tol = 1e-10);

}  // namespace kvn
