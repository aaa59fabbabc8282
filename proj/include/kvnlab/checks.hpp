// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kvnlab/metric.hpp"

namespace kvn {

// One verified identity: residual is the max coefficient of (lhs - rhs).
struct CheckResult {
    std::string name;
    double residual = 0.0;
    bool pass = false;
};
using CheckList = std::vector<CheckResult>;

bool all_pass(const CheckList& checks);

// Integer coefficients in [-3, 3], total degree in [1, max_degree]. Draws straight from
// the engine so the same seed gives the same polynomial on every standard library.
Poly random_poly(int n, int max_degree, int terms, std::mt19937_64& rng);

// {c^a, c^b} = {cbar_a, cbar_b} = 0, {c^a, cbar_b} = delta
CheckList grassmann_checks(int n, double tol = 1e-12);
// d^2, delta^2, Delta, ** on n = 1, and H-tilde against the explicit Lie derivative for each H
CheckList cartan_checks(int n, const std::vector<Poly>& hamiltonians, double tol = 1e-12);
// The CPI charge algebra, plus [Q_H, Qbar_H]_+ = 2 i beta H-tilde for each H
CheckList charge_checks(int n, const std::vector<Poly>& hamiltonians, double beta = 1.0, double tol = 1e-12);

struct BracketCheckOptions {
    int n = 2;
    int sn_pairs = 3;
    int superfield_count = 5;
    int max_degree = 3;
    double tol = 1e-12;
};
// SN on vectors vs the coordinate Lie bracket, NR vs i{J,L} with the un-hat round trip and
// the endomorphism commutator, FN vs [iota_J, d], superfield identity on random H.
CheckList bracket_checks(std::uint64_t seed, const BracketCheckOptions& opt = {});

// The default scan: harmonic (m omega = 1 and not), quartic, cubic, and a q p coupling.
std::vector<Poly> nogo_family();
std::vector<MetricSpec> nogo_metrics();

}  // namespace kvn
