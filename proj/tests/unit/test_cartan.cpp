// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "kvnlab/cartan.hpp"
#include "kvnlab/checks.hpp"

using namespace kvn;

namespace {
const std::vector<Poly>& hams() {
    static const std::vector<Poly> h = {Poly::parse("p^2/2", 1), Poly::parse("p^2/2+q^2", 1),
                                        Poly::parse("p^2/2+q^3", 1)};
    return h;
}
}  // namespace

TEST_SUITE("cartan") {
TEST_CASE("d on a zero form gives (0, d_q psi, d_p psi, 0)") {
    const Poly f = Poly::parse("q^2*p+3*p", 1);
    const Poly z(1);
    const auto out = exterior_derivative(1).apply({f, z, z, z});
    CHECK((out[0]).is_zero());
    CHECK((out[1] - f.derivative(q_index(1))).is_zero());
    CHECK((out[2] - f.derivative(p_index(1))).is_zero());
    CHECK(out[3].is_zero());
}

TEST_CASE("d^2 = 0 and the Laplacian at n = 2") {
    const auto d = exterior_derivative(2);
    CHECK((d * d).max_abs() == 0.0);
    CHECK((laplacian(2) - laplacian_explicit(2)).max_abs() == 0.0);
    CHECK((codifferential(2) * codifferential(2)).max_abs() == 0.0);
}

TEST_CASE("interior contraction with a constant field at n = 1") {
    // iota_V maps c^q -> V^q, c^p -> V^p, c^p c^q -> V^p c^q - V^q c^p
    const auto iv = interior_contraction({Poly::constant(1, 3.0), Poly::constant(1, 5.0)});  // V^p = 3, V^q = 5
    const Mat M = iv.eval_sector({0.0, 0.0});
    CHECK(M(0, 1) == cplx(5.0));
    CHECK(M(0, 2) == cplx(3.0));
    CHECK(M(1, 3) == cplx(3.0));
    CHECK(M(2, 3) == cplx(-5.0));
}

TEST_CASE("H-tilde for p^2/2: the fermionic block couples psi_q to psi_p with -i") {
    const Mat F = evolution_operator(Poly::parse("p^2/2", 1)).fermionic_part().eval_sector({0.3, 0.7});
    Mat want = Mat::Zero(4, 4);
    want(2, 1) = cplx(0, -1);
    CHECK((F - want).norm() < 1e-15);
}

TEST_CASE("L_h = d i_h + i_h d against the explicit form") {
    for (const auto& H : hams()) CHECK((evolution_operator(H) - evolution_operator_explicit(H)).max_abs() == 0.0);
    const Poly H2 = Poly::parse("p1^2/2+p2^2/2+q1^3+q1*q2^2", 2);
    CHECK((evolution_operator(H2) - evolution_operator_explicit(H2)).max_abs() == 0.0);
}

TEST_CASE("Hodge star at n = 1") {
    const Mat S = hodge_star(1).dense();
    CHECK(S(3, 0) == cplx(-1.0));
    CHECK(S.col(0).norm() == doctest::Approx(1.0));
    CHECK(S(2, 1) == cplx(1.0));
    Mat want = Mat::Zero(4, 4);
    want.diagonal() << 1, -1, -1, 1;
    CHECK((S * S - want).norm() == 0.0);
}

TEST_CASE("codifferential matches the explicit matrix at n = 1") {
    CHECK((codifferential(1) - codifferential_explicit(1)).max_abs() == 0.0);
}

TEST_CASE("charges at n = 1") {
    const Mat Qf = charge(ChargeName::Qf, 1).eval_sector({0, 0});
    Mat want = Mat::Zero(4, 4);
    want.diagonal() << 0, 1, 1, 2;
    CHECK((Qf - want).norm() == 0.0);
    const Mat K = charge(ChargeName::K, 1).eval_sector({0, 0});
    Mat k = Mat::Zero(4, 4);
    k(3, 0) = 1.0;
    CHECK((K - k).norm() == 0.0);
}

TEST_CASE("charge algebra at n = 1 and n = 2") {
    for (const auto& c : charge_checks(1, {hams()[1], hams()[2]})) {
        INFO(c.name);
        CHECK(c.residual <= 1e-12);
    }
    for (const auto& c : charge_checks(2, {Poly::parse("p1^2/2+p2^2/2+q1^2*q2-q2^4", 2)}, 0.7)) {
        INFO(c.name);
        CHECK(c.residual <= 1e-12);
    }
}

TEST_CASE("irreducible representation") {
    const auto r1 = irrep_matrices(1.0);
    Mat q = Mat::Zero(4, 4);
    q(2, 0) = q(3, 1) = 1.0;
    CHECK((r1.Q - q).norm() == 0.0);
    const auto r4 = irrep_matrices(4.0);
    CHECK((r4.Q * r4.minus_iNbar + r4.minus_iNbar * r4.Q - 4.0 * Mat::Identity(4, 4)).norm() < 1e-14);
    CHECK(commutant_dimension(r4.all()) == 1);
}

TEST_CASE("cartan checks pass for every listed Hamiltonian") {
    for (const auto& c : cartan_checks(1, hams())) {
        INFO(c.name);
        CHECK(c.residual == 0.0);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS(charge(ChargeName::QH, 1));
    CHECK_THROWS(parse_charge("Z"));
}
}
