// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kvnlab/dynamics.hpp"

using namespace kvn;

namespace {
const Axis Q = Axis::make("q", -12, 24, 512), P = Axis::make("p", -6, 10, 512);

double max_diff(const WaveFunction2D& a, const WaveFunction2D& b) {
    double d = 0.0;
    for (size_t k = 0; k < a.v.size(); ++k) d = std::max(d, std::abs(a.v[k] - b.v[k]));
    return d;
}
}  // namespace

TEST_SUITE("dynamics") {
TEST_CASE("free flow is the shear psi0(q - p t/m, p)") {
    const auto H = HamiltonianSpec::free_particle(2.0);
    auto [q, p] = backward_foot(H, 1.5, 0.8, 3.0);
    CHECK(q == doctest::Approx(1.5 - 0.8 * 3.0 / 2.0));
    CHECK(p == doctest::Approx(0.8));
    const auto psi0 = double_gaussian(1, 1, 2);
    const auto w = liouville_evolve(H, psi0, Q, P, 3.0);
    double d = 0.0;
    for (int i = 0; i < Q.count; i += 7)
        for (int j = 0; j < P.count; j += 7) d = std::max(d, std::abs(w(i, j) - psi0(Q.at(i) - P.at(j) * 1.5, P.at(j))));
    CHECK(d < 1e-14);
}

TEST_CASE("harmonic foot against RK4 for the same Hamiltonian as a polynomial") {
    const auto Hh = HamiltonianSpec::harmonic(1.3, 0.7);
    const auto Hp = HamiltonianSpec::polynomial("p^2/2.6+0.5*1.3*0.49*q^2", 1.3);
    auto [q1, p1] = backward_foot(Hh, 0.4, -1.1, 2.5);
    auto [q2, p2] = backward_foot(Hp, 0.4, -1.1, 2.5);
    CHECK(q1 == doctest::Approx(q2).epsilon(1e-8));
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-8));
}

TEST_CASE("t = 0 leaves a grid state unchanged") {
    const auto psi = WaveFunction2D::sample(Q, P, double_gaussian(1, 1, 2));
    CHECK(max_diff(liouville_evolve(HamiltonianSpec::polynomial("p^2/2+q^4", 1), psi, 0.0), psi) < 1e-12);
    const Axis x = Axis::make("x", -20, 20, 1024);
    const auto f = WaveFunction1D::sample(x, gaussian_1d(1.0, 0.5));
    const auto g = schrodinger_evolve(HamiltonianSpec::free_particle(), f, 0.0);
    double d = 0.0;
    for (int i = 0; i < x.count; ++i) d = std::max(d, std::abs(f.v[i] - g.v[i]));
    CHECK(d < 1e-14);
}

TEST_CASE("double Gaussian moments at t = 3 (a = b = m = 1, p_i = 2)") {
    const auto psi = liouville_evolve(HamiltonianSpec::free_particle(), WaveFunction2D::sample(Q, P, double_gaussian(1, 1, 2)), 3.0);
    const auto mo = moments(psi);
    CHECK(mo.mean0 == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(mo.mean1 == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(mo.var0 == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(mo.var1 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(mo.norm - 1.0) < 1e-6);
}

TEST_CASE("double Gaussian at t = 0 and symmetric states") {
    const auto mo = moments(WaveFunction2D::sample(Q, P, double_gaussian(0.7, 1.2, 2)));
    CHECK(std::abs(mo.mean0) < 1e-12);
    CHECK(mo.mean1 == doctest::Approx(2.0));
    CHECK(mo.var0 == doctest::Approx(0.49 / 2));
    CHECK(mo.var1 == doctest::Approx(1.44 / 2));
    const auto sym = moments(WaveFunction2D::sample(Axis::make("q", -8, 8, 256), Axis::make("p", -8, 8, 256), double_gaussian(1, 1, 0)));
    CHECK(std::abs(sym.mean0) < 1e-12);
    CHECK(std::abs(sym.mean1) < 1e-12);
}

TEST_CASE("free quantum Gaussian: variance 1 at t = 1, drift p_i t / m") {
    const Axis x = Axis::make("x", -40, 40, 2048);
    const auto H = HamiltonianSpec::free_particle();
    const auto psi = schrodinger_evolve(H, WaveFunction1D::sample(x, gaussian_1d(1.0, 0.0)), 1.0);
    const auto mo = moments(psi);
    CHECK(mo.var0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(psi.norm2() - 1.0) < 1e-8);
    const auto moving = moments(schrodinger_evolve(H, WaveFunction1D::sample(x, gaussian_1d(1.0, 1.5)), 2.0));
    CHECK(moving.mean0 == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(moving.mean1 == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("harmonic split-step matches the coherent-state motion") {
    const Axis x = Axis::make("x", -20, 20, 1024);
    // displaced ground state: <x>(t) = x0 cos t
    const auto psi0 = WaveFunction1D::sample(x, [](double s) { return gaussian_1d(1.0, 0.0)(s - 2.0); });
    const auto mo = moments(schrodinger_evolve(HamiltonianSpec::harmonic(1, 1), psi0, 1.0));
    CHECK(mo.mean0 == doctest::Approx(2.0 * std::cos(1.0)).epsilon(1e-4));
    CHECK(mo.var0 == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("mixed representation") {
    const double a = 1.0, b = 0.8, pi = 2.0;
    const Axis q = Axis::make("q", -8, 8, 128), p = Axis::make("p", pi - 10, pi + 10, 512);
    const auto psi = WaveFunction2D::sample(q, p, double_gaussian(a, b, pi));
    const auto mix = to_mixed_representation(psi);
    CHECK(mix.a1.label == "lp");
    // N e^{-q^2/2a^2} b e^{-b^2 lp^2/2} e^{-i p_i lp}
    const double N = 1.0 / std::sqrt(std::numbers::pi * a * b);
    double d = 0.0;
    for (int i = 0; i < q.count; i += 5)
        for (int j = 0; j < mix.a1.count; ++j) {
            const double Q0 = q.at(i), l = mix.a1.at(j);
            const cplx want = N * b * std::exp(-Q0 * Q0 / (2 * a * a) - b * b * l * l / 2) * std::exp(cplx(0, -pi * l));
            d = std::max(d, std::abs(mix(i, j) - want));
        }
    CHECK(d < 1e-10);
    CHECK(max_diff(from_mixed_representation(mix, p), psi) < 1e-10);
    const auto m1 = moments(psi), m2 = moments(mix);
    CHECK(m1.mean1 == doctest::Approx(m2.mean1).epsilon(1e-8));
    CHECK(m1.var1 == doctest::Approx(m2.var1).epsilon(1e-8));
    CHECK(m1.var0 == doctest::Approx(m2.var0).epsilon(1e-8));
    // real and even in p gives real in lp
    const auto even = to_mixed_representation(WaveFunction2D::sample(q, Axis::make("p", -10, 10, 512), double_gaussian(a, b, 0)));
    double im = 0.0;
    for (const auto& z : even.v) im = std::max(im, std::abs(z.imag()));
    CHECK(im < 1e-12);
}

TEST_CASE("delta-like classical states do not spread") {
    const double s = 0.05;
    const Axis q = Axis::make("q", -0.5, 1.5, 400), p = Axis::make("p", -0.5, 1.5, 400);
    const auto mo = moments(liouville_evolve(HamiltonianSpec::free_particle(), double_gaussian(s, s, 0.5), q, p, 2.0));
    CHECK(mo.var0 == doctest::Approx(s * s / 2 + s * s * 4 / 2).epsilon(1e-3));
    CHECK(mo.var0 < 0.01);
}

TEST_CASE("spreading sweep: quantum grows as a shrinks, classical vanishes") {
    const Axis x = Axis::make("x", -200, 200, 1 << 14);
    double prev_q = 0.0, prev_c = 1e9;
    for (double a : {1.0, 0.5, 0.25, 0.125}) {
        const auto mq = moments(schrodinger_evolve(HamiltonianSpec::free_particle(), WaveFunction1D::sample(x, gaussian_1d(a, 0.0)), 1.0));
        CHECK(mq.var0 > prev_q);
        prev_q = mq.var0;
        const double c = 0.5 * a * a + 0.5 * a * a;  // classical, b = a
        const Axis q = Axis::make("q", -10 * a, 10 * a, 256), p = Axis::make("p", -8 * a, 8 * a, 256);
        const auto mc = moments(liouville_evolve(HamiltonianSpec::free_particle(), double_gaussian(a, a, 0.0), q, p, 1.0));
        CHECK(mc.var0 == doctest::Approx(c).epsilon(1e-6));
        CHECK(mc.var0 < prev_c);
        prev_c = mc.var0;
    }
}

TEST_CASE("Liouville flow conserves every L^p functional") {
    const auto psi0 = double_gaussian(1, 1, 0.5);
    auto drift = [&](const HamiltonianSpec& H, double half, int count, double e) {
        const Axis q = Axis::make("q", -half, half, count), p = Axis::make("p", -half, half, count);
        auto f = [e](double, double, cplx z) { return std::pow(std::abs(z), e); };
        const double i0 = WaveFunction2D::sample(q, p, psi0).integrate(f);
        return std::abs(liouville_evolve(H, psi0, q, p, 1.7).integrate(f) / i0 - 1.0);
    };
    // ellipses centred in the box are invariant, so nothing crosses the edge
    for (double e : {1.0, 2.0, 4.0}) CHECK(drift(HamiltonianSpec::harmonic(1.0, 1.3), 8, 256, e) < 1e-6);
    // the quartic flow carries the [-8, 8] box outside itself; on [-16, 16] the mass on the
    // level sets that leave is below e^-16
    const auto H = HamiltonianSpec::polynomial("p^2/2+q^2/2+q^4/10", 1);
    for (double e : {1.0, 2.0, 4.0}) {
        INFO("p=" << e);
        CHECK(drift(H, 16, 512, e) < 1e-6);
    }
}

TEST_CASE("same kernel for psi and rho") {
    const auto psi0 = double_gaussian(1, 1, 0.5);
    const Axis q = Axis::make("q", -8, 8, 256), p = Axis::make("p", -8, 8, 256);
    const auto H = HamiltonianSpec::polynomial("p^2/2+q^2/2+q^4/10", 1);
    const auto psi = liouville_evolve(H, WaveFunction2D::sample(q, p, psi0), 1.3);
    const auto rho = liouville_evolve(H, WaveFunction2D::sample(q, p, [&](double x, double y) { return cplx(std::norm(psi0(x, y))); }), 1.3);
    double d = 0.0;
    for (size_t k = 0; k < psi.v.size(); ++k) d = std::max(d, std::abs(std::norm(psi.v[k]) - rho.v[k]));
    CHECK(d < 1e-6);
}

TEST_CASE("observables are blind to the phase") {
    const Axis q = Axis::make("q", -8, 20, 256), p = Axis::make("p", -6, 10, 256);
    const auto H = HamiltonianSpec::free_particle();
    auto F = [](double x, double y) { return std::abs(double_gaussian(1, 1, 2)(x, y)); };
    const std::vector<double> ts = {0.0, 1.0, 2.5};
    const auto lin = phase_blindness_check(H, F, [](double x, double) { return 2.0 * x; }, [](double x, double) { return x; }, q, p, ts);
    CHECK(lin.max_deviation < 1e-12);
    const auto lp = phase_blindness_check(H, F, [](double x, double) { return 2.0 * x; }, [](double, double y) { return y; }, q, p, ts);
    CHECK(lp.max_deviation < 1e-12);
    const auto zero = phase_blindness_check(H, F, [](double, double) { return 0.0; }, [](double x, double) { return x * x; }, q, p, ts);
    CHECK(zero.max_deviation == 0.0);
    const auto H2 = HamiltonianSpec::polynomial("p^2/2+q^4/4", 1);
    const auto rnd = phase_blindness_check(H2, F, [](double x, double y) { return std::sin(1.3 * x * y) + 0.4 * y * y; },
                                           [](double x, double y) { return x * x * y; }, q, p, ts);
    CHECK(rnd.max_deviation < 1e-8);
    CHECK(rnd.max_split_deviation < 1e-8);
}

TEST_CASE("non-selective measurements") {
    const auto nc = nsm_classical(HamiltonianSpec::free_particle(), double_gaussian(1, 1, 2), Axis::make("q", -10, 14, 512),
                                  Axis::make("p", -6, 10, 512), 1.0);
    CHECK(nc.max_diff < 1e-6);
    const auto n0 = nsm_classical(HamiltonianSpec::free_particle(), double_gaussian(1, 1, 2), Axis::make("q", -10, 14, 128),
                                  Axis::make("p", -6, 10, 128), 0.0);
    CHECK(n0.max_diff < 1e-12);
    const auto nq = nsm_quantum(gaussian_1d(1, 0), Axis::make("x", -80, 80, 16001), 1.0);
    CHECK(nq.cv_nsm < 0.05);
    CHECK(nq.cv_free > 1.0);
}

TEST_CASE("errors") {
    const auto psi = WaveFunction2D::sample(Q, P, double_gaussian(1, 1, 2));
    LiouvilleOptions abort;
    abort.off_grid = OffGrid::abort;
    CHECK_THROWS(liouville_evolve(HamiltonianSpec::free_particle(), psi, 10.0, abort));
    CHECK_THROWS(nsm_classical(HamiltonianSpec::free_particle(), double_gaussian(1, 1, 2), Q, P, -1.0));
    const Axis coarse = Axis::make("x", -10, 10, 64);
    CHECK_THROWS(schrodinger_evolve(HamiltonianSpec::free_particle(), WaveFunction1D::sample(coarse, gaussian_1d(0.05, 0.0)), 1.0));
    auto half = psi;
    for (auto& z : half.v) z *= 0.5;
    CHECK_THROWS(moments(half));
    CHECK_THROWS(to_mixed_representation(WaveFunction2D::sample(Q, Axis::make("p", -6, 10, 511), double_gaussian(1, 1, 2))));
    CHECK_THROWS(HamiltonianSpec::polynomial("q*p^3", 1).potential(1.0));
}
}
