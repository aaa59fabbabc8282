// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>

#include "kvnlab/checks.hpp"
#include "kvnlab/metric.hpp"

using namespace kvn;

namespace {
MetricSpec gen_symplectic(double b) {
    MetricParams p;
    p.b = b;
    return build_metric(MetricKind::genSymplectic, 1, p);
}
}  // namespace

TEST_SUITE("metric") {
TEST_CASE("SvH is the identity") {
    CHECK((build_metric(MetricKind::svh, 1).g - Mat::Identity(4, 4)).norm() == 0.0);
    CHECK((build_metric(MetricKind::svh, 2).g - Mat::Identity(16, 16)).norm() == 0.0);
}

TEST_CASE("generalized symplectic at b = -1 is the symplectic product") {
    CHECK((gen_symplectic(-1.0).g - build_metric(MetricKind::symplectic, 1).g).norm() == 0.0);
}

TEST_CASE("generalized symplectic eigenvalues {1, b, -b, -b^2}") {
    for (double b : {2.0, 0.5, 3.0}) {
        auto got = metric_eigenvalues(gen_symplectic(b)).values;
        std::vector<double> want = {1.0, b, -b, -b * b};
        std::sort(want.begin(), want.end());
        REQUIRE(got.size() == 4);
        for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
    CHECK(metric_eigenvalues(gen_symplectic(2.0)).classification == "indefinite");
}

TEST_CASE("gauge product: two +1, two -1 and a negative-norm state") {
    const auto g = build_metric(MetricKind::gauge, 1);
    const auto e = metric_eigenvalues(g).values;
    CHECK(e[0] == doctest::Approx(-1.0));
    CHECK(e[1] == doctest::Approx(-1.0));
    CHECK(e[2] == doctest::Approx(1.0));
    CHECK(e[3] == doctest::Approx(1.0));
    Vec w(4);
    w << 1.0, 0.0, 0.0, cplx(0, 1);
    CHECK(inner(g, w, w).real() == doctest::Approx(-2.0));
    CHECK(std::abs(inner(g, w, w).imag()) < 1e-15);
}

TEST_CASE("hermiticity of H-tilde") {
    const auto svh = build_metric(MetricKind::svh, 1);
    CHECK(hermiticity_report(Poly::parse("p^2/2+q^2/2", 1), svh).hermitian);
    CHECK_FALSE(hermiticity_report(Poly::parse("p^2/2+q^4", 1), svh).hermitian);
    CHECK_FALSE(hermiticity_report(Poly::parse("p^2/2+q^2", 1), svh).hermitian);
    for (auto k : {MetricKind::gauge, MetricKind::symplectic})
        CHECK(hermiticity_report(Poly::parse("p^2/2+q^4", 1), build_metric(k, 1)).residual <= 1e-12);
}

TEST_CASE("no-go scan") {
    const std::vector<Poly> fam = {Poly::parse("p^2/2+q^2", 1), Poly::parse("p^2/2+q^4", 1), Poly::parse("p^2/2+q^3", 1)};
    const std::vector<MetricSpec> ms = {build_metric(MetricKind::svh, 1), build_metric(MetricKind::gauge, 1),
                                        build_metric(MetricKind::symplectic, 1), gen_symplectic(2.0)};
    for (const auto& row : nogo_scan(fam, ms)) CHECK_FALSE((row.positive && row.hermitian_for_all()));
    for (const auto& row : nogo_scan(nogo_family(), nogo_metrics())) CHECK_FALSE((row.positive && row.hermitian_for_all()));
    // one matched harmonic oscillator alone: SvH passes both
    const auto single = nogo_scan({Poly::parse("p^2/2+q^2/2", 1)}, {build_metric(MetricKind::svh, 1)});
    CHECK(single[0].positive);
    CHECK(single[0].hermitian_for_all());
}

TEST_CASE("SvH physical states at n = 2") {
    const auto basis = physical_basis(PhysicalKind::svh, 2);
    REQUIRE(basis.size() == 3);
    const auto two = form_components(basis[1], 2, 2, 1e-14);
    REQUIRE(two.size() == 2);
    // c^{q1} c^{p1} + c^{q2} c^{p2}, stored with ascending internal indices (p before q)
    for (const auto& c : two) {
        CHECK(c.indices.size() == 2);
        CHECK(c.indices[1] == c.indices[0] + 1);
        CHECK(c.value == cplx(-1.0));
    }
    const auto H = Poly::parse("p1^2/2+p2^2/2+q1^4+q1*q2^3+p1*q2", 2);
    const auto ferm = evolution_operator(H).fermionic_part();
    for (const auto& x : std::vector<std::vector<double>>{{0.3, -0.7, 1.1, 0.2}, {-1.2, 0.5, 0.4, 0.9}})
        for (const auto& v : basis) CHECK((ferm.eval_sector(x) * v).norm() < 1e-13);
}

TEST_CASE("kernel dimension matches the constructed family") {
    const std::vector<Poly> hs = {Poly::parse("p1^2/2+p2^2/2+q1^3+2*q1*q2^2-q2*p1*p2+p1^3/3+q1*p2", 2),
                                  Poly::parse("p1^2*q2+p2^2*q1+q1^3-q2^3+p1*p2*q1", 2)};
    const std::vector<std::vector<double>> pts = {{0.3, -0.7, 1.1, 0.2}, {-1.2, 0.5, 0.4, 0.9}, {0.8, 1.3, -0.6, -0.4}};
    for (int deg = 0; deg <= 4; ++deg) {
        const auto k = physical_kernel_check(2, deg, hs, pts);
        INFO("degree " << deg);
        CHECK(k.kernel_dim == k.family_size);
        CHECK_FALSE(k.extra_vectors);
    }
}

TEST_CASE("symplectic physical states have the right norms") {
    const auto g = build_metric(MetricKind::symplectic, 2);
    for (const auto& v : physical_basis(PhysicalKind::symplectic, 2)) CHECK(std::abs(inner(g, v, v)) > 1e-12);
}

TEST_CASE("Jacobi fields and one-form norms") {
    const std::vector<std::vector<double>> pts = {{0.1, 0.2}}, dirs = {{1.0, 0.0}};
    const auto circ = jacobi_norm_evolution(Poly::parse("p^2/2+q^2/2", 1), pts, dirs, 10, 2000);
    const auto [lo, hi] = std::minmax_element(circ.form_norm[0].begin(), circ.form_norm[0].end());
    CHECK(*hi - *lo < 1e-9);
    CHECK(circ.max_mismatch < 1e-6);
    const auto ell = jacobi_norm_evolution(Poly::parse("p^2/2+2*q^2", 1), pts, dirs, 10, 2000);
    const auto [lo2, hi2] = std::minmax_element(ell.form_norm[0].begin(), ell.form_norm[0].end());
    CHECK(*hi2 - *lo2 > 0.1);
    CHECK(ell.max_mismatch < 1e-6);
    const auto inv = jacobi_norm_evolution(Poly::parse("p^2/2-q^2/2", 1), pts, dirs, 10, 2000);
    CHECK(inv.max_mismatch < 1e-6);
    CHECK(log_growth_rate(inv.t, inv.form_norm[0], 5, 10) == doctest::Approx(1.0).epsilon(0.02));
    // k = 4: exponent 2
    const auto inv2 = jacobi_norm_evolution(Poly::parse("p^2/2-2*q^2", 1), pts, dirs, 5, 2000);
    CHECK(log_growth_rate(inv2.t, inv2.form_norm[0], 2.5, 5) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("errors") {
    CHECK_THROWS(parse_metric_kind("minkowski"));
    CHECK_THROWS(jacobi_norm_evolution(Poly::parse("p^2/2", 1), {{0.0}}, {{1.0, 0.0}}, 1, 10));
}
}
