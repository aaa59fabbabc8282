// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kvnlab/superpoly.hpp"

namespace kvn {

enum class TensorKind { form, multivector, vvform };

// Antisymmetric tensor data. For forms and multivectors the key is the index tuple
// (internal, 1-based); for a vector-valued form the key is {i, i_1, ..., i_{j+1}}.
struct TensorSpec {
    TensorKind kind = TensorKind::form;
    int n = 1;
    int rank = 0;  // number of antisymmetric indices
    std::map<std::vector<int>, Poly> comps;

    static TensorSpec form(int n, int p) { return {TensorKind::form, n, p, {}}; }
    static TensorSpec multivector(int n, int p) { return {TensorKind::multivector, n, p, {}}; }
    static TensorSpec vvform(int n, int rank) { return {TensorKind::vvform, n, rank, {}}; }
    static TensorSpec vector_field(const std::vector<Poly>& V);

    TensorSpec& set(const std::vector<int>& idx, const Poly& v);
    // Sorted keys with sign absorbed; throws on inconsistent or repeated-index data.
    TensorSpec canonical() const;
    Poly get(const std::vector<int>& idx) const;  // any ordering, antisymmetric lookup
    double distance(const TensorSpec& o) const;   // max coefficient difference after canonicalization
};

SuperPoly hat(const TensorSpec& T);
// Inverse of hat on lambda- and theta-free input of a single kind.
TensorSpec unhat(const SuperPoly& F, std::optional<TensorKind> hint = std::nullopt);

// CPI charges as super-polynomials.
SuperPoly Q_sp(int n);
SuperPoly Qbar_sp(int n);
SuperPoly Qf_sp(int n);
SuperPoly K_sp(int n);
SuperPoly Kbar_sp(int n);
// lambda_a omega^{ab} d_b H + i cbar_a omega^{ab} d_b d_d H c^d
SuperPoly cpi_hamiltonian(const Poly& H);
// H_V = lambda_a V^a + i cbar_a d_b V^a c^b
SuperPoly lie_generator(const std::vector<Poly>& V);

enum class CartanOp { d, iota, lie, sharp, flat, pb };
CartanOp parse_cartan_op(const std::string& s);
// arg2 is used by iota/lie (the vector field, as a hat image) and pb (the second function).
SuperPoly cartan_via_epb(CartanOp op, const SuperPoly& arg, const SuperPoly& arg2 = SuperPoly());
SuperPoly cartan_iota(const std::vector<Poly>& V, const SuperPoly& F);
SuperPoly cartan_lie(const std::vector<Poly>& V, const SuperPoly& F);
SuperPoly lie_bracket_epb(const std::vector<Poly>& V, const std::vector<Poly>& W);
std::vector<Poly> lie_bracket_coords(const std::vector<Poly>& V, const std::vector<Poly>& W);

SuperPoly sn_bracket(const TensorSpec& P, const TensorSpec& R);
SuperPoly fn_bracket(const TensorSpec& J, const TensorSpec& L);
SuperPoly nr_bracket(const TensorSpec& J, const TensorSpec& L);
SuperPoly fn_generator(const SuperPoly& Jhat);  // H_J = {J, Q}

// Phi^a = phi^a + theta c^a + thetabar omega^{ab} cbar_b + i thetabar theta omega^{ab} lambda_b
SuperPoly superfield(int n, int a);
SuperPoly substitute(const Poly& H, const std::vector<SuperPoly>& fields);
// H(Phi) = H + theta N - thetabar Nbar + i theta thetabar Hcal
struct SuperfieldExpansion {
    SuperPoly full, H0, N, Nbar, Hcal;
};
SuperfieldExpansion superfield_expand(const Poly& H);
// Berezin integral with  int dtheta dthetabar thetabar theta = +1
SuperPoly berezin(const SuperPoly& F);

}  // namespace kvn
