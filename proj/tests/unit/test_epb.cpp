// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "kvnlab/checks.hpp"
#include "kvnlab/epb.hpp"

using namespace kvn;

namespace {
const cplx I(0, 1);

SuperPoly P1(const char* s) { return SuperPoly::from_poly(Poly::parse(s, 1)); }

// homogeneous random super-polynomial: parity 0 even, 1 odd
SuperPoly random_super(int n, int parity, std::mt19937_64& rng) {
    SuperPoly r(n);
    const int d = 2 * n;
    for (int t = 0; t < 3; ++t) {
        SuperPoly m = SuperPoly::constant(n, cplx(double(rng() % 5) - 2.0, double(rng() % 3) - 1.0));
        for (int k = 0, e = int(rng() % 3); k < e; ++k) m = m * SuperPoly::phi(n, 1 + int(rng() % d));
        for (int k = 0, e = int(rng() % 2); k < e; ++k) m = m * SuperPoly::lam(n, 1 + int(rng() % d));
        int odd = int(rng() % 3);
        if (odd % 2 != parity) ++odd;
        for (int k = 0; k < odd; ++k) {
            const int a = 1 + int(rng() % d);
            m = m * (rng() % 2 ? SuperPoly::c(n, a) : SuperPoly::cbar(n, a));
        }
        r += m;
    }
    return r;
}

std::vector<Poly> field(int n, std::initializer_list<const char*> comps) {
    std::vector<Poly> v;
    for (const char* c : comps) v.push_back(Poly::parse(c, n));
    return v;
}

TensorSpec wedge(const std::vector<Poly>& X, const std::vector<Poly>& Y) {
    const int n = static_cast<int>(X.size()) / 2;
    TensorSpec B = TensorSpec::multivector(n, 2);
    for (int a = 1; a <= 2 * n; ++a)
        for (int b = a + 1; b <= 2 * n; ++b) {
            const Poly v = X[a - 1] * Y[b - 1] - X[b - 1] * Y[a - 1];
            if (!v.is_zero()) B.set({a, b}, v);
        }
    return B;
}
}  // namespace

TEST_SUITE("epb") {
TEST_CASE("elementary brackets") {
    CHECK((epb(SuperPoly::phi(1, 1), SuperPoly::lam(1, 1)) - SuperPoly::constant(1, 1.0)).max_abs() == 0.0);
    CHECK((epb(SuperPoly::cbar(1, q_index(1)), SuperPoly::c(1, q_index(1))) - SuperPoly::constant(1, -I)).max_abs() == 0.0);
    CHECK(epb(SuperPoly::phi(1, 1), SuperPoly::phi(1, 2)).max_abs() == 0.0);
}

TEST_CASE("hat map normalizations") {
    TensorSpec a = TensorSpec::form(1, 1);
    a.set({q_index(1)}, Poly::parse("q*p", 1)).set({p_index(1)}, Poly::parse("3", 1));
    const SuperPoly want = P1("q*p") * SuperPoly::c(1, q_index(1)) + P1("3") * SuperPoly::c(1, p_index(1));
    CHECK((hat(a) - want).max_abs() == 0.0);
    TensorSpec z = TensorSpec::form(1, 0);
    z.set({}, Poly::parse("q^2", 1));
    CHECK((hat(z) - P1("q^2")).max_abs() == 0.0);
    // (1/2) V^{ab} cbar_a cbar_b with V^{pq} = -V^{qp} = f gives f cbar_p cbar_q
    TensorSpec V = TensorSpec::multivector(1, 2);
    V.set({p_index(1), q_index(1)}, Poly::parse("q+p", 1));
    CHECK((hat(V) - P1("q+p") * SuperPoly::cbar(1, p_index(1)) * SuperPoly::cbar(1, q_index(1))).max_abs() == 0.0);
}

TEST_CASE("Q_f counts the form degree") {
    TensorSpec F = TensorSpec::form(2, 2);
    F.set({1, 3}, Poly::parse("q1*p2", 2)).set({2, 4}, Poly::parse("3", 2));
    const auto Fh = hat(F);
    CHECK((epb(Qf_sp(2), Fh) * I - Fh * 2.0).max_abs() == 0.0);
}

TEST_CASE("Lie bracket of V = (p, 0), W = (0, q) in (q, p) components") {
    const auto V = field(1, {"0", "p"}), W = field(1, {"q", "0"});  // internal order (p, q)
    const auto co = lie_bracket_coords(V, W);
    CHECK((co[0] - Poly::parse("p", 1)).is_zero());
    CHECK((co[1] - Poly::parse("-q", 1)).is_zero());
    CHECK((lie_bracket_epb(V, W) - hat(TensorSpec::vector_field(co))).max_abs() == 0.0);
}

TEST_CASE("Poisson bracket via nested extended brackets") {
    CHECK((cartan_via_epb(CartanOp::pb, SuperPoly::phi(1, q_index(1)), SuperPoly::phi(1, p_index(1))) -
           SuperPoly::constant(1, 1.0)).max_abs() == 0.0);
}

TEST_CASE("Cartan operations via brackets: sharp undoes flat, H_V = {Q, V}") {
    const auto V = field(1, {"q^2", "p*q+1"});
    const auto Vh = hat(TensorSpec::vector_field(V));
    CHECK((cartan_via_epb(CartanOp::sharp, cartan_via_epb(CartanOp::flat, Vh)) - Vh).max_abs() == 0.0);
    CHECK((epb(Q_sp(1), Vh) - lie_generator(V)).max_abs() == 0.0);
}

TEST_CASE("SN long form: decomposable bivector against a vector at n = 2") {
    const auto X = field(2, {"q1", "p2*q2", "1", "p1"});
    const auto Y = field(2, {"q2^2", "0", "p1*q1", "2"});
    const auto Z = field(2, {"p2", "q1*q2", "q1", "p1^2"});
    const auto sn = sn_bracket(wedge(X, Y), TensorSpec::vector_field(Z));
    // removed-factor sum: [X^Y, Z] = Y^[X,Z] - X^[Y,Z]
    const auto oracle = hat(wedge(Y, lie_bracket_coords(X, Z))) - hat(wedge(X, lie_bracket_coords(Y, Z)));
    CHECK((sn - oracle).max_abs() == 0.0);
    const auto back = unhat(sn, TensorKind::multivector);
    CHECK(back.rank == 2);
    CHECK((hat(back) - sn).max_abs() == 0.0);
}

TEST_CASE("SN on a vector with itself vanishes") {
    const auto V = TensorSpec::vector_field(field(1, {"q^2*p", "p+q"}));
    CHECK(sn_bracket(V, V).max_abs() == 0.0);
}

TEST_CASE("NR of the identity map with itself") {
    TensorSpec Id = TensorSpec::vvform(2, 1);
    for (int a = 1; a <= 4; ++a) Id.set({a, a}, Poly::constant(2, 1.0));
    CHECK((nr_bracket(Id, Id) - epb(hat(Id), hat(Id)) * I).max_abs() == 0.0);
    CHECK(nr_bracket(Id, Id).max_abs() == 0.0);
}

TEST_CASE("FN on vector-valued 0-forms reduces to the Lie bracket") {
    const auto V = field(1, {"q^2", "p*q"}), W = field(1, {"p", "q^3"});
    TensorSpec J = TensorSpec::vvform(1, 0), L = TensorSpec::vvform(1, 0);
    for (int a = 1; a <= 2; ++a) {
        J.set({a}, V[a - 1]);
        L.set({a}, W[a - 1]);
    }
    CHECK((fn_bracket(J, L) - hat(TensorSpec::vector_field(lie_bracket_coords(V, W)))).max_abs() == 0.0);
}

TEST_CASE("FN Lie derivative {H_J, F} = -[iota_J, d] F on a random one-form at n = 1") {
    std::mt19937_64 rng(11);
    TensorSpec J = TensorSpec::vvform(1, 1), F = TensorSpec::form(1, 1);
    for (int a = 1; a <= 2; ++a) {
        F.set({a}, random_poly(1, 3, 2, rng));
        for (int b = 1; b <= 2; ++b) J.set({a, b}, random_poly(1, 2, 2, rng));
    }
    const auto Jh = hat(J), Fh = hat(F), Q = Q_sp(1);
    auto iota = [&](const SuperPoly& X) { return epb(Jh, X) * I; };
    auto d = [&](const SuperPoly& X) { return epb(Q, X) * I; };
    // iota_J has degree 0 for a vector-valued one-form, so [iota_J, d] is a commutator
    const auto lhs = iota(d(Fh)) - d(iota(Fh));
    CHECK((lhs + epb(fn_generator(Jh), Fh)).max_abs() == 0.0);
}

TEST_CASE("superfield expansion") {
    const auto e = superfield_expand(Poly::parse("p^2/2+q^2/2", 1));
    const int q = q_index(1), p = p_index(1);
    const SuperPoly want = SuperPoly::lam(1, q) * SuperPoly::phi(1, p) - SuperPoly::lam(1, p) * SuperPoly::phi(1, q) +
                           (SuperPoly::cbar(1, q) * SuperPoly::c(1, p) - SuperPoly::cbar(1, p) * SuperPoly::c(1, q)) * I;
    CHECK((e.Hcal - want).max_abs() == 0.0);
    CHECK((e.Hcal - cpi_hamiltonian(Poly::parse("p^2/2+q^2/2", 1))).max_abs() == 0.0);
    CHECK(superfield_expand(Poly::constant(1, 3.0)).Hcal.max_abs() == 0.0);
}

TEST_CASE("superfield identity on random Hamiltonians") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 5; ++k) {
        const Poly H = random_poly(2, 4, 4, rng);
        CHECK((superfield_expand(H).Hcal - cpi_hamiltonian(H)).max_abs() == 0.0);
    }
}

TEST_CASE("graded Jacobi identity on random super-polynomials") {
    std::mt19937_64 rng(2024);
    for (int n = 1; n <= 2; ++n)
        for (int trial = 0; trial < 8; ++trial) {
            const int pa = int(rng() % 2), pb = int(rng() % 2), pc = int(rng() % 2);
            const auto A = random_super(n, pa, rng), B = random_super(n, pb, rng), C = random_super(n, pc, rng);
            const double sign = (pa * pb) % 2 ? -1.0 : 1.0;
            const auto r = epb(A, epb(B, C)) - epb(epb(A, B), C) - epb(B, epb(A, C)) * sign;
            CHECK(r.max_abs() < 1e-12);
            // graded antisymmetry
            CHECK((epb(A, B) + epb(B, A) * sign).max_abs() < 1e-12);
        }
}

TEST_CASE("hat is linear and injective") {
    std::mt19937_64 rng(9);
    for (int p = 0; p <= 3; ++p) {
        TensorSpec F = TensorSpec::form(2, p), G = TensorSpec::form(2, p), S = TensorSpec::form(2, p);
        const auto idx = [&] {
            std::vector<std::vector<int>> out;
            for (int i : degree_indices(2, p)) out.push_back(basis_word(2, i));
            return out;
        }();
        for (const auto& k : idx) {
            const Poly a = random_poly(2, 2, 2, rng), b = random_poly(2, 2, 2, rng);
            F.set(k, a);
            G.set(k, b);
            S.set(k, a + b);
        }
        CHECK((hat(S) - hat(F) - hat(G)).max_abs() == 0.0);
        CHECK(unhat(hat(F), TensorKind::form).distance(F) == 0.0);
        TensorSpec M = TensorSpec::multivector(2, p);
        M.comps = F.comps;
        CHECK(unhat(hat(M), TensorKind::multivector).distance(M) == 0.0);
    }
}

TEST_CASE("bracket outputs land in the hat image") {
    for (const auto& c : bracket_checks(77)) {
        INFO(c.name);
        CHECK(c.residual == 0.0);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS(epb(SuperPoly::phi(1, 1), SuperPoly::phi(2, 1)));
    CHECK_THROWS(sn_bracket(TensorSpec::form(1, 1), TensorSpec::form(1, 1)));
    CHECK_THROWS(fn_bracket(TensorSpec::form(1, 1), TensorSpec::vvform(1, 1)));
    CHECK_THROWS(parse_cartan_op("wedge"));
    TensorSpec bad = TensorSpec::form(1, 2);
    bad.set({1, 1}, Poly::parse("q", 1));
    CHECK_THROWS(bad.canonical());
}
}
