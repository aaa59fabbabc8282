// SPDX-License-Identifier: Apache-2.0
// One line per acceptance criterion: "PASS <n> <title>" or "FAIL <n> <title>", then the
// sub-checks indented beneath. Usage: kvnlab_acceptance [n ...]; no argument runs all.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "kvnlab/checks.hpp"
#include "kvnlab/config.hpp"
#include "kvnlab/dynamics.hpp"
#include "kvnlab/gauge.hpp"
#include "kvnlab/metric.hpp"

using namespace kvn;

namespace {

struct Sub {
    std::string name;
    bool pass;
    double value;
};
using Subs = std::vector<Sub>;

void add(Subs& s, const CheckList& cl) {
    for (const auto& c : cl) s.push_back({c.name, c.pass, c.residual});
}

std::vector<Poly> polys(std::initializer_list<const char*> src) {
    std::vector<Poly> out;
    for (const char* s : src) out.push_back(Poly::parse(s, 1));
    return out;
}

Subs grassmann() {
    Subs s;
    for (int n = 1; n <= 3; ++n) add(s, grassmann_checks(n, 1e-12));
    return s;
}

Subs cartan() {
    Subs s;
    add(s, cartan_checks(1, polys({"p^2/2", "p^2/2+q^2", "p^2/2+q^3"}), 1e-12));
    add(s, cartan_checks(2, {}, 1e-12));
    return s;
}

Subs charges() {
    Subs s;
    add(s, charge_checks(1, polys({"p^2/2+q^2/2", "p^2/2+q^4"}), 1.0, 1e-12));
    return s;
}

Subs brackets() {
    Subs s;
    add(s, bracket_checks(1, BracketCheckOptions{}));
    return s;
}

Subs metric_eigs() {
    const auto e = metric_eigenvalues(build_metric(MetricKind::genSymplectic, 1, MetricParams{.b = 2.0}));
    const std::vector<double> want = {-4, -2, 1, 2};
    double d = e.values.size() == 4 ? 0.0 : 1e300;
    for (size_t i = 0; i < std::min<size_t>(4, e.values.size()); ++i) d = std::max(d, std::abs(e.values[i] - want[i]));
    return {{"genSymplectic(b=2) eigenvalues {1, 2, -2, -4}", d <= 1e-10, d}};
}

Subs nogo() {
    const auto hs = nogo_family();
    const auto ms = nogo_metrics();
    const auto rows = nogo_scan(hs, ms);
    int both = 0;
    double harm = -1, quart = -1;
    for (const auto& row : rows) {
        if (row.positive && row.hermitian_for_all()) ++both;
        if (row.kind != MetricKind::svh) continue;
        for (size_t k = 0; k < hs.size(); ++k) {
            if ((hs[k] - Poly::parse("p^2/2+q^2/2", 1)).is_zero()) harm = row.reports[k].residual;
            if ((hs[k] - Poly::parse("p^2/2+q^4", 1)).is_zero()) quart = row.reports[k].residual;
        }
    }
    return {{"scan size >= 3 H x 4 metrics", hs.size() >= 3 && ms.size() >= 4, double(hs.size() * ms.size())},
            {"no metric positive and Hermitian for all H", both == 0, double(both)},
            {"SvH Hermitian for the m omega = 1 oscillator", harm >= 0 && harm <= 1e-10, harm},
            {"SvH not Hermitian for the quartic", quart > 1e-10, quart}};
}

Subs physical() {
    const std::vector<Poly> hs = {
        Poly::parse("p1^2/2+p2^2/2+q1^3+2*q1*q2^2-q2*p1*p2+p1^3/3+q1*p2", 2),
        Poly::parse("p1^2*q2+p2^2*q1+q1^3-q2^3+p1*p2*q1", 2)};
    const std::vector<std::vector<double>> pts = {{0.3, -0.7, 1.1, 0.2}, {-1.2, 0.5, 0.4, 0.9}, {0.8, 1.3, -0.6, -0.4}};
    double worst = 0.0;
    for (const auto& H : hs) {
        const auto ferm = evolution_operator(H).fermionic_part();
        for (const auto& x : pts) {
            const Mat M = ferm.eval_sector(x);
            for (const auto& v : physical_basis(PhysicalKind::svh, 2)) worst = std::max(worst, (M * v).cwiseAbs().maxCoeff());
        }
    }
    const auto k = physical_kernel_check(2, 2, hs, pts);
    return {{"fermionic H-tilde annihilates the SvH physical basis (n=2)", worst == 0.0, worst},
            {"two-form kernel dimension " + std::to_string(k.kernel_dim) + " = family size " +
                 std::to_string(k.family_size),
             k.kernel_dim == k.family_size && !k.extra_vectors, double(std::abs(k.kernel_dim - k.family_size))}};
}

Subs free_evolution() {
    const double a = 1, b = 1, pi = 2;
    const Axis q = Axis::make("q", -12, 24, 512), p = Axis::make("p", -6, 10, 512);
    const auto H = HamiltonianSpec::free_particle();
    double worst = 0.0, drift = 0.0;
    for (double t : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
        const auto mo = moments(liouville_evolve(H, double_gaussian(a, b, pi), q, p, t));
        const double qm = pi * t, qv = a * a / 2 + b * b * t * t / 2;
        worst = std::max({worst, std::abs(mo.mean0 - qm) / std::max(std::abs(qm), std::sqrt(qv)), std::abs(mo.var0 / qv - 1)});
        drift = std::max(drift, std::abs(mo.norm - 1));
    }
    return {{"moments within 0.5% of the closed form, t <= 3, 512^2", worst <= 5e-3, worst},
            {"norm drift < 1e-6", drift < 1e-6, drift}};
}

Subs two_slits() {
    Subs s;
    SlitConfig c;
    const auto C = two_slit_classical(c);
    double add = 0.0, pmax = 0.0;
    for (size_t i = 0; i < C.both.P.size(); ++i) {
        add = std::max(add, std::abs(C.both.P[i] - C.only1.P[i] - C.only2.P[i]));
        pmax = std::max(pmax, C.both.P[i]);
    }
    s.push_back({"(a) classical additivity relative to max P", add / pmax < 1e-6, add / pmax});
    for (auto [xa, want] : {std::pair{0.5, 6}, std::pair{1.0, 12}}) {
        SlitConfig q;
        q.x_A = xa;
        const int got = count_minima(two_slit(q, SlitMode::quantum).P);
        s.push_back({"(b) quantum minima for 2 x_A = " + fmt17(2 * xa) + ": " + std::to_string(got), got == want,
                     double(std::abs(got - want))});
    }
    const Poly G = Poly::parse("2*q+q^2*p-p^3/3", 1);
    const auto Cg = two_slit_classical(c, [&](double x, double y) { return G.eval({y, x}).real(); });
    double dev = 0.0;
    for (size_t i = 0; i < C.both.P.size(); ++i) dev = std::max(dev, std::abs(Cg.both.P[i] - C.both.P[i]));
    s.push_back({"(c) classical profile blind to an injected phase", dev <= 1e-8, dev});
    return s;
}

Subs nsm() {
    const Axis q = Axis::make("q", -10, 14, 512), p = Axis::make("p", -6, 10, 512);
    const auto cl = nsm_classical(HamiltonianSpec::free_particle(), double_gaussian(1, 1, 2), q, p, 1.0);
    const Axis x = Axis::make("x", -80, 80, 16001);
    const auto qu = nsm_quantum(gaussian_1d(1, 0), x, 1.0);
    return {{"classical density unchanged by the measurement", cl.max_diff <= 1e-6, cl.max_diff},
            {"quantum post-measurement distribution flat (CV)", qu.cv_nsm < 0.05, qu.cv_nsm}};
}

Subs landau() {
    const int ntr = 40;
    const auto cl = landau_spectrum(1.0, ntr);
    double off = 0.0;
    for (const auto& l : cl.levels) off = std::max(off, std::abs(l.value - std::round(l.value)));
    const auto fd = landau_fd_check(128);
    const auto qu = landau_quantum(1.0, 10);
    double half = 0.0;
    for (const auto& l : qu.levels) half = std::max(half, std::abs(l.value - std::floor(l.value) - 0.5));
    return {{"classical spectrum in {N omega}, N_tr = 40", off <= 1e-12, off},
            {"grid 128^2 eigenvalues cluster within 0.05 omega", fd.max_integer_distance <= 0.05, fd.max_integer_distance},
            {"quantum levels keep the 1/2", half <= 1e-12, half}};
}

Subs aharonov_bohm() {
    const auto free = ab_spectra(0.0, 1.0, {{2, 1}});
    const auto flux = ab_spectra(0.1, 1.0, {{2, 1}});
    const double z21 = free.levels[0].zero, z209 = flux.levels[0].zero;
    const double c0 = free.levels[0].coefficient, c1 = flux.levels[0].coefficient;
    const double cmax = std::max(free.classical_max_diff, flux.classical_max_diff);
    return {{"alpha_{2,1} = 3.8317 +- 1e-4", std::abs(z21 - 3.8317) <= 1e-4, z21},
            {"alpha_{2,0.9} = 3.70 +- 5e-3", std::abs(z209 - 3.70) <= 5e-3, z209},
            {"coefficient without flux = 7.33 +- 0.01", std::abs(c0 - 7.33) <= 0.01, c0},
            {"coefficient with flux = 6.84 +- 0.01", std::abs(c1 - 6.84) <= 0.01, c1},
            {"classical spectra with and without flux differ by <= 1e-10", cmax <= 1e-10, cmax}};
}

Subs jacobi() {
    const std::vector<std::vector<double>> pts = {{0.1, 0.2}, {-0.3, 0.5}};
    const std::vector<std::vector<double>> dirs = {{1, 0}, {0.3, -0.8}};
    Subs s;
    for (const char* h : {"p^2/2+q^2/2", "p^2/2-q^2/2"}) {
        const auto js = jacobi_norm_evolution(Poly::parse(h, 1), pts, dirs, 10.0, 2000);
        s.push_back({std::string("one-form norm = Jacobi norm pointwise, H = ") + h, js.max_mismatch <= 1e-6, js.max_mismatch});
        if (std::string(h) == "p^2/2-q^2/2") {
            double worst = 0.0;
            for (const auto& series : js.form_norm) worst = std::max(worst, std::abs(log_growth_rate(js.t, series, 5, 10) - 1.0));
            s.push_back({"inverted oscillator growth rate within 2% of 1", worst <= 0.02, worst});
        }
    }
    return s;
}

struct Criterion {
    std::string title;
    double budget_s;  // 0: no stated budget
    std::function<Subs()> run;
};

const std::map<int, Criterion>& criteria() {
    static const std::map<int, Criterion> c = {
        {1, {"Grassmann anticommutators, n = 1, 2, 3", 5, grassmann}},
        {2, {"Cartan identities", 10, cartan}},
        {3, {"charge algebra", 0, charges}},
        {4, {"SN, NR brackets and the superfield identity", 0, brackets}},
        {5, {"generalized symplectic metric eigenvalues", 0, metric_eigs}},
        {6, {"no-go scan", 30, nogo}},
        {7, {"physical subspace", 0, physical}},
        {8, {"free-particle KvN evolution", 10, free_evolution}},
        {9, {"two-slit experiment", 60, two_slits}},
        {10, {"non-selective measurement", 0, nsm}},
        {11, {"Landau levels", 20, landau}},
        {12, {"Aharonov-Bohm spectra", 20, aharonov_bohm}},
        {13, {"Jacobi field and one-form norm", 0, jacobi}},
    };
    return c;
}

bool run_one(int id) {
    const auto& c = criteria().at(id);
    const auto t0 = std::chrono::steady_clock::now();
    Subs subs;
    try {
        subs = c.run();
    } catch (const std::exception& e) {
        subs.push_back({std::string("exception: ") + e.what(), false, 0.0});
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) subs.push_back({"runtime < " + fmt17(c.budget_s) + " s", secs < c.budget_s, secs});
    const bool ok = std::all_of(subs.begin(), subs.end(), [](const Sub& s) { return s.pass; });
    std::printf("%s %2d %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, c.title.c_str(), secs);
    for (const auto& s : subs) std::printf("       %s %s [%.6g]\n", s.pass ? "ok  " : "FAIL", s.name.c_str(), s.value);
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (!criteria().count(id)) {
            std::cerr << "usage: kvnlab_acceptance [1-13 ...]\n";
            return 2;
        }
        ids.push_back(id);
    }
    if (ids.empty())
        for (const auto& kv : criteria()) ids.push_back(kv.first);
    int failed = 0;
    for (int id : ids) failed += run_one(id) ? 0 : 1;
    if (ids.size() > 1) std::printf("%d of %zu criteria pass\n", int(ids.size()) - failed, ids.size());
    return failed == 0 ? 0 : 1;
}
