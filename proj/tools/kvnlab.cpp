// SPDX-License-Identifier: Apache-2.0
// kvnlab: config-driven runner. Every subcommand reads the [<subcommand>] section of --config,
// writes its CSVs plus summary.txt into --out, and exits 0 iff every check passed.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "kvnlab/checks.hpp"
#include "kvnlab/config.hpp"
#include "kvnlab/dynamics.hpp"
#include "kvnlab/gauge.hpp"

using namespace kvn;

namespace {

struct Run {
    Config cfg;
    std::string section;
    std::string out;
    std::uint64_t seed = 1;
    std::optional<double> tol;  // overrides identity-check tolerances
    Summary summary;

    std::string path(const std::string& file) const { return (std::filesystem::path(out) / file).string(); }
    double identity_tol(double def) const { return tol.value_or(cfg.get_double(section, "tol", def)); }
    double num(const std::string& key, double def) const { return cfg.get_double(section, key, def); }
    int integer(const std::string& key, int def) const { return cfg.get_int(section, key, def); }
    std::string str(const std::string& key, const std::string& def) const { return cfg.get_string(section, key, def); }
    void record(const CheckList& checks) {
        for (const auto& c : checks) summary.check(c.name, c.pass, c.residual);
    }
};

std::string errctx(const Run& r, const std::string& key) { return "[" + r.section + "] " + key + ": "; }

Poly parse_poly(const Run& r, const std::string& key, const std::string& expr, int n) {
    try {
        return Poly::parse(expr, n);
    } catch (const std::exception& e) {
        throw ConfigError(errctx(r, key) + "cannot parse '" + expr + "': " + e.what());
    }
}

std::vector<Poly> poly_list(const Run& r, const std::string& key, const std::vector<Poly>& def, int n) {
    if (!r.cfg.has(r.section, key)) return def;
    std::vector<Poly> out;
    for (const auto& s : r.cfg.get_list(r.section, key, {})) out.push_back(parse_poly(r, key, s, n));
    return out;
}

// free | harmonic | a polynomial in q, p
HamiltonianSpec hamiltonian_spec(const Run& r) {
    const std::string h = r.str("hamiltonian", "free");
    const double m = r.num("m", 1.0);
    if (h == "free") return HamiltonianSpec::free_particle(m);
    if (h == "harmonic") return HamiltonianSpec::harmonic(m, r.num("omega", 1.0));
    return HamiltonianSpec::polynomial(parse_poly(r, "hamiltonian", h, 1), m);
}

std::vector<Poly> default_hamiltonians(int n) {
    if (n == 1) return {Poly::parse("p^2/2", 1), Poly::parse("p^2/2+q^2", 1), Poly::parse("p^2/2+q^3", 1)};
    // sum p_i^2/2 + q_1^3 + q_1 q_n^2 + q_n p_1
    Poly H(n);
    for (int i = 1; i <= n; ++i) H += Poly::var(n, p_index(i)).pow(2) * 0.5;
    const Poly q1 = Poly::var(n, q_index(1)), qn = Poly::var(n, q_index(n));
    H += q1.pow(3) + q1 * qn.pow(2) + qn * Poly::var(n, p_index(1));
    return {H};
}

// ---- algebra-check

void algebra_check(Run& r) {
    r.cfg.check_known(r.section, {"n", "hamiltonians", "beta", "tol"});
    const double tol = r.identity_tol(1e-12);
    const double beta = r.num("beta", 1.0);
    CsvWriter csv(r.path("algebra.csv"), {"check", "residual", "pass"});
    for (double nd : r.cfg.get_doubles(r.section, "n", {1})) {
        const int n = static_cast<int>(nd);
        if (n != nd || n < 1 || n > n_max())
            throw ConfigError(errctx(r, "n") + "each n must be an integer in [1, " + std::to_string(n_max()) + "]");
        const auto hs = n == 1 ? poly_list(r, "hamiltonians", default_hamiltonians(1), 1) : default_hamiltonians(n);
        CheckList all = grassmann_checks(n, tol);
        for (auto& c : cartan_checks(n, hs, tol)) all.push_back(c);
        for (auto& c : charge_checks(n, hs, beta, tol)) all.push_back(c);
        for (const auto& c : all) csv.cell(c.name).cell(c.residual).cell(c.pass ? 1 : 0).end_row();
        r.record(all);
    }
}

// ---- brackets-check

void brackets_check(Run& r) {
    r.cfg.check_known(r.section, {"n", "sn_pairs", "superfield_count", "max_degree", "tol"});
    BracketCheckOptions o;
    o.n = r.integer("n", 2);
    o.sn_pairs = r.integer("sn_pairs", 3);
    o.superfield_count = r.integer("superfield_count", 5);
    o.max_degree = r.integer("max_degree", 3);
    o.tol = r.identity_tol(1e-12);
    if (o.n < 1 || o.n > 3) throw ConfigError(errctx(r, "n") + "must be 1, 2 or 3");
    if (o.max_degree < 1) throw ConfigError(errctx(r, "max_degree") + "must be >= 1");
    const auto checks = bracket_checks(r.seed, o);
    CsvWriter csv(r.path("brackets.csv"), {"check", "residual", "pass"});
    for (const auto& c : checks) csv.cell(c.name).cell(c.residual).cell(c.pass ? 1 : 0).end_row();
    r.summary.note("seed " + std::to_string(r.seed));
    r.record(checks);
}

// ---- metric-report and nogo

// kind[:key=value[:key=value]], keys b, theta, gamma
MetricSpec parse_metric(const Run& r, const std::string& key, const std::string& text, int n) {
    std::stringstream ss(text);
    std::string head, item;
    std::getline(ss, head, ':');
    MetricParams p;
    while (std::getline(ss, item, ':')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError(errctx(r, key) + "expected key=value in '" + item + "'");
        const std::string k = item.substr(0, eq);
        double v = 0.0;
        try {
            v = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError(errctx(r, key) + "bad number in '" + item + "'");
        }
        if (k == "b") p.b = v;
        else if (k == "theta") p.theta = v;
        else if (k == "gamma") p.gamma = v;
        else throw ConfigError(errctx(r, key) + "unknown metric parameter '" + k + "' (b, theta, gamma)");
    }
    try {
        return build_metric(parse_metric_kind(head), n, p);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(errctx(r, key) + e.what());
    }
}

std::vector<MetricSpec> metric_list(const Run& r) {
    if (!r.cfg.has(r.section, "metrics")) return nogo_metrics();
    std::vector<MetricSpec> out;
    for (const auto& s : r.cfg.get_list(r.section, "metrics", {})) out.push_back(parse_metric(r, "metrics", s, 1));
    return out;
}

void write_metric_csv(const Run& r, const std::vector<NogoRow>& rows) {
    CsvWriter csv(r.path("metric_report.csv"),
                  {"metric", "kind", "param", "H", "hermitian", "residual", "min_eig", "max_eig"});
    for (const auto& row : rows)
        for (const auto& h : row.reports)
            csv.cell(row.metric_label)
                .cell(metric_kind_name(row.kind))
                .cell(row.params)
                .cell(h.hamiltonian)
                .cell(h.hermitian ? 1 : 0)
                .cell(h.residual)
                .cell(row.min_eig)
                .cell(row.max_eig)
                .end_row();
}

void physical_subspace(Run& r, double tol) {
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
    r.summary.check("fermionic H-tilde annihilates the SvH physical states at n=2", worst <= tol, worst);
    CsvWriter csv(r.path("physical_kernel.csv"), {"degree", "kernel_dim", "family_size", "smallest_kept", "largest_dropped"});
    for (int deg = 0; deg <= 4; ++deg) {
        const auto k = physical_kernel_check(2, deg, hs, pts);
        csv.cell(deg).cell(k.kernel_dim).cell(k.family_size).cell(k.smallest_kept).cell(k.largest_dropped).end_row();
        if (deg == 2)
            r.summary.check("two-form kernel dimension matches the physical family",
                            k.kernel_dim == k.family_size && !k.extra_vectors,
                            std::abs(k.kernel_dim - k.family_size),
                            "kernel=" + std::to_string(k.kernel_dim) + " family=" + std::to_string(k.family_size));
    }
}

void jacobi_link(Run& r) {
    const auto hs = poly_list(r, "jacobi_hamiltonians", {Poly::parse("p^2/2+q^2/2", 1), Poly::parse("p^2/2-q^2/2", 1)}, 1);
    const double T = r.num("jacobi_time", 10.0);
    const int steps = r.integer("jacobi_steps", 2000);
    const double match_tol = r.num("jacobi_match_tol", 1e-6);
    const std::vector<std::vector<double>> pts = {{0.1, 0.2}, {-0.3, 0.5}};
    const std::vector<std::vector<double>> dirs = {{1, 0}, {0.3, -0.8}};
    CsvWriter csv(r.path("jacobi.csv"), {"H", "point", "t", "form_norm", "jacobi_norm"});
    for (const auto& H : hs) {
        const auto js = jacobi_norm_evolution(H, pts, dirs, T, steps);
        for (size_t k = 0; k < pts.size(); ++k)
            for (size_t s = 0; s < js.t.size(); s += 10)
                csv.cell(H.str()).cell(static_cast<int>(k)).cell(js.t[s]).cell(js.form_norm[k][s]).cell(js.jacobi_norm[k][s]).end_row();
        r.summary.check("one-form SvH norm = Jacobi field norm, H = " + H.str(), js.max_mismatch <= match_tol,
                        js.max_mismatch);
    }
    // inverted oscillator p^2/2m - k q^2/2: closed-form exponent sqrt(k/m)
    if (r.cfg.has(r.section, "jacobi_rate_hamiltonian") || !r.cfg.has(r.section, "jacobi_hamiltonians")) {
        const Poly H = parse_poly(r, "jacobi_rate_hamiltonian", r.str("jacobi_rate_hamiltonian", "p^2/2-q^2/2"), 1);
        const double expected = r.num("jacobi_rate", 1.0);
        const auto js = jacobi_norm_evolution(H, pts, dirs, T, steps);
        double worst = 0.0;
        for (const auto& series : js.form_norm)
            worst = std::max(worst, std::abs(log_growth_rate(js.t, series, T / 2, T) / expected - 1.0));
        r.summary.check("exponential growth rate within 2% of " + fmt17(expected) + ", H = " + H.str(), worst <= 0.02,
                        worst);
    }
}

void metric_report(Run& r) {
    r.cfg.check_known(r.section, {"hamiltonians", "metrics", "physical", "jacobi", "jacobi_hamiltonians",
                                  "jacobi_rate_hamiltonian", "jacobi_rate", "jacobi_time", "jacobi_steps",
                                  "jacobi_match_tol", "tol"});
    const double tol = r.identity_tol(1e-10);
    const auto hs = poly_list(r, "hamiltonians", nogo_family(), 1);
    const auto ms = metric_list(r);
    const auto rows = nogo_scan(hs, ms);
    write_metric_csv(r, rows);
    CsvWriter eig(r.path("metric_eigenvalues.csv"), {"metric", "param", "index", "eigenvalue", "classification"});
    for (const auto& m : ms) {
        const auto e = metric_eigenvalues(m);
        for (size_t i = 0; i < e.values.size(); ++i)
            eig.cell(m.label()).cell(m.param_string()).cell(static_cast<int>(i)).cell(e.values[i]).cell(e.classification).end_row();
        const double herm = (m.g - m.g.adjoint()).cwiseAbs().maxCoeff();
        r.summary.check("metric matrix is Hermitian: " + m.label(), herm <= tol, herm);
    }
    if (r.cfg.get_bool(r.section, "physical", true)) physical_subspace(r, tol);
    if (r.cfg.get_bool(r.section, "jacobi", true)) jacobi_link(r);
}

void nogo(Run& r) {
    r.cfg.check_known(r.section, {"hamiltonians", "metrics", "tol"});
    const auto hs = poly_list(r, "hamiltonians", nogo_family(), 1);
    const auto ms = metric_list(r);
    if (hs.size() < 3 || ms.size() < 4) r.summary.note("scan is smaller than 3 Hamiltonians x 4 metrics");
    const auto rows = nogo_scan(hs, ms);
    write_metric_csv(r, rows);
    CsvWriter csv(r.path("nogo.csv"), {"metric", "param", "positive", "hermitian_for_all", "min_eig", "max_eig"});
    int both = 0;
    for (const auto& row : rows) {
        csv.cell(row.metric_label).cell(row.params).cell(row.positive ? 1 : 0).cell(row.hermitian_for_all() ? 1 : 0)
            .cell(row.min_eig).cell(row.max_eig).end_row();
        if (row.positive && row.hermitian_for_all()) {
            ++both;
            r.summary.note("positive and Hermitian for every scanned H: " + row.metric_label + " " + row.params);
        }
    }
    r.summary.check("no scanned metric is both positive-definite and Hermitian for all H", both == 0, both);
    // the SvH harmonic exception, when those Hamiltonians are in the scan
    const Poly harmonic = Poly::parse("p^2/2+q^2/2", 1), quartic = Poly::parse("p^2/2+q^4", 1);
    const double tol = r.identity_tol(1e-10);
    for (const auto& row : rows) {
        if (row.kind != MetricKind::svh) continue;
        for (size_t k = 0; k < hs.size(); ++k) {
            if ((hs[k] - harmonic).is_zero())
                r.summary.check("SvH Hermitian for the m omega = 1 oscillator", row.reports[k].residual <= tol,
                                row.reports[k].residual);
            if ((hs[k] - quartic).is_zero())
                r.summary.check("SvH not Hermitian for the quartic potential", row.reports[k].residual > tol,
                                row.reports[k].residual);
        }
    }
}

// ---- evolve

struct Exact {
    double qm, pm, qv, pv;
};

// Closed-form moments of the double Gaussian (classical) or of the Gaussian packet (quantum).
std::optional<Exact> exact_moments(const HamiltonianSpec& H, bool quantum, double a, double b, double pi, double hbar,
                                   double t) {
    const double m = H.m;
    if (H.kind == HamiltonianSpec::Kind::free) {
        if (quantum) {
            const double s = hbar * t / (m * a * a);
            return Exact{pi * t / m, pi, 0.5 * a * a * (1 + s * s), hbar * hbar / (2 * a * a)};
        }
        return Exact{pi * t / m, pi, 0.5 * a * a + 0.5 * b * b * t * t / (m * m), 0.5 * b * b};
    }
    if (H.kind == HamiltonianSpec::Kind::harmonic && !quantum) {
        const double w = H.omega, c = std::cos(w * t), s = std::sin(w * t);
        return Exact{pi * s / (m * w), pi * c, 0.5 * a * a * c * c + 0.5 * b * b * s * s / (m * m * w * w),
                     0.5 * b * b * c * c + 0.5 * m * m * w * w * a * a * s * s};
    }
    return std::nullopt;
}

void evolve(Run& r) {
    r.cfg.check_known(r.section, {"mode", "hamiltonian", "m", "omega", "a", "b", "p_i", "hbar", "times",
                                  "representation", "q_min", "q_max", "q_count", "p_min", "p_max", "p_count",
                                  "x_min", "x_max", "x_count", "moment_rel_tol", "norm_tol"});
    const std::string mode = r.str("mode", "classical");
    if (mode != "classical" && mode != "quantum") throw ConfigError(errctx(r, "mode") + "expected classical or quantum");
    const bool quantum = mode == "quantum";
    const auto H = hamiltonian_spec(r);
    const double a = r.num("a", 1.0), b = r.num("b", 1.0), pi = r.num("p_i", 0.0), hbar = r.num("hbar", 1.0);
    const auto times = r.cfg.get_doubles(r.section, "times", {0, 1, 2, 3});
    const double rel = r.num("moment_rel_tol", 5e-3), norm_tol = r.num("norm_tol", 1e-6);
    CsvWriter csv(r.path("evolve.csv"), {"t", "q_mean", "p_mean", "q_var", "p_var"});
    double drift = 0.0, worst = 0.0;
    bool have_exact = false;
    auto compare = [&](const Moments& mo, double t) {
        csv.cell(t).cell(mo.mean0).cell(mo.mean1).cell(mo.var0).cell(mo.var1).end_row();
        drift = std::max(drift, std::abs(mo.norm - 1.0));
        if (auto e = exact_moments(H, quantum, a, b, pi, hbar, t)) {
            have_exact = true;
            // means relative to the spread so a zero mean does not blow up the ratio
            worst = std::max({worst, std::abs(mo.mean0 - e->qm) / std::max(std::abs(e->qm), std::sqrt(e->qv)),
                              std::abs(mo.mean1 - e->pm) / std::max(std::abs(e->pm), std::sqrt(e->pv)),
                              std::abs(mo.var0 / e->qv - 1), std::abs(mo.var1 / e->pv - 1)});
        }
    };
    if (quantum) {
        const Axis x = Axis::make("x", r.num("x_min", -40), r.num("x_max", 40), r.integer("x_count", 2048));
        const auto psi0 = WaveFunction1D::sample(x, gaussian_1d(a, pi, hbar));
        for (double t : times) compare(moments(schrodinger_evolve(H, psi0, t, hbar), hbar), t);
    } else {
        const double span = 8.0;
        const Axis q = Axis::make("q", r.num("q_min", -span * a), r.num("q_max", span * a + pi * 3 / H.m), r.integer("q_count", 512));
        const Axis p = Axis::make("p", r.num("p_min", pi - span * b), r.num("p_max", pi + span * b), r.integer("p_count", 512));
        const std::string rep = r.str("representation", "qp");
        if (rep != "qp" && rep != "qlp") throw ConfigError(errctx(r, "representation") + "expected qp or qlp");
        const auto psi0 = double_gaussian(a, b, pi);
        for (double t : times) {
            auto psi = liouville_evolve(H, psi0, q, p, t);
            if (rep == "qlp") psi = to_mixed_representation(psi);
            compare(moments(psi), t);
        }
    }
    r.summary.check("norm drift", drift <= norm_tol, drift);
    if (have_exact) r.summary.check("moments match the closed form (relative)", worst <= rel, worst);
    else r.summary.note("no closed-form moments for " + H.str() + "; only the norm is checked");
}

// ---- two-slit

SlitConfig slit_config(const Run& r) {
    SlitConfig c;
    c.x_A = r.num("x_A", c.x_A);
    c.delta = r.num("delta", c.delta);
    c.y_F = r.num("y_F", c.y_F);
    c.y_S = r.num("y_S", c.y_S);
    c.p_y = r.num("p_y", c.p_y);
    c.a = r.num("a", c.a);
    c.b = r.num("b", c.b);
    c.m = r.num("m", c.m);
    c.hbar = r.num("hbar", c.hbar);
    c.p_i = r.num("p_i", c.p_i);
    c.x_min = r.num("x_min", c.x_min);
    c.x_max = r.num("x_max", c.x_max);
    c.x_count = r.integer("x_count", c.x_count);
    c.gl_nodes = r.integer("gl_nodes", c.gl_nodes);
    c.rel_tol = r.num("rel_tol", c.rel_tol);
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("[" + r.section + "] " + e.what());
    }
    return c;
}

void write_profile(const std::string& path, const Profile& P) {
    CsvWriter csv(path, {"x", "P"});
    for (size_t i = 0; i < P.x.size(); ++i) csv.cell(P.x[i]).cell(P.P[i]).end_row();
}

void two_slit_cmd(Run& r) {
    r.cfg.check_known(r.section, {"mode", "x_A", "delta", "y_F", "y_S", "p_y", "a", "b", "m", "hbar", "p_i", "x_min",
                                  "x_max", "x_count", "gl_nodes", "rel_tol", "expect_minima", "minima_floor",
                                  "phase", "additivity_tol", "phase_tol"});
    const auto cfg = slit_config(r);
    const std::string mode_s = r.str("mode", "quantum");
    SlitMode mode;
    try {
        mode = parse_slit_mode(mode_s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(errctx(r, "mode") + e.what());
    }
    const double floor = r.num("minima_floor", 1e-6);
    Profile P;
    if (mode == SlitMode::classical) {
        const auto C = two_slit_classical(cfg);
        P = C.both;
        write_profile(r.path("two_slit_only1.csv"), C.only1);
        write_profile(r.path("two_slit_only2.csv"), C.only2);
        double add = 0.0, pmax = 0.0;
        for (size_t i = 0; i < P.P.size(); ++i) {
            add = std::max(add, std::abs(P.P[i] - C.only1.P[i] - C.only2.P[i]));
            pmax = std::max(pmax, P.P[i]);
        }
        r.summary.check("classical additivity P_both = P_1 + P_2 (relative to max P)",
                        add / pmax <= r.num("additivity_tol", 1e-6), add / pmax);
        const Poly G = parse_poly(r, "phase", r.str("phase", "2*q+q^2*p-p^3/3"), 1);
        const auto Cg = two_slit_classical(cfg, [&](double q, double p) { return G.eval({p, q}).real(); });
        double dev = 0.0;
        for (size_t i = 0; i < P.P.size(); ++i) dev = std::max(dev, std::abs(Cg.both.P[i] - P.P[i]));
        r.summary.check("classical profile blind to the initial phase G = " + G.str(), dev <= r.num("phase_tol", 1e-8),
                        dev);
    } else {
        P = two_slit(cfg, mode);
    }
    write_profile(r.path("two_slit.csv"), P);
    const int minima = count_minima(P.P, floor);
    r.summary.note(mode_s + " profile has " + std::to_string(minima) + " minima");
    if (r.cfg.has(r.section, "expect_minima")) {
        const int want = r.integer("expect_minima", 0);
        r.summary.check("minima count = " + std::to_string(want), minima == want, std::abs(minima - want));
    }
}

// ---- nsm

void nsm(Run& r) {
    r.cfg.check_known(r.section, {"mode", "hamiltonian", "m", "omega", "a", "b", "p_i", "hbar", "tau", "q_min",
                                  "q_max", "q_count", "p_min", "p_max", "p_count", "x_min", "x_max", "x_count",
                                  "sigma_meas", "window", "cv_max", "diff_tol"});
    const std::string mode = r.str("mode", "quantum");
    const double tau = r.num("tau", 1.0), a = r.num("a", 1.0), pi = r.num("p_i", 0.0);
    if (mode == "classical") {
        const auto H = hamiltonian_spec(r);
        const double b = r.num("b", 1.0);
        const Axis q = Axis::make("q", r.num("q_min", -10), r.num("q_max", 14), r.integer("q_count", 512));
        const Axis p = Axis::make("p", r.num("p_min", -6), r.num("p_max", 10), r.integer("p_count", 512));
        const auto res = nsm_classical(H, double_gaussian(a, b, pi), q, p, tau);
        // position marginals
        std::vector<double> f(q.count, 0.0), g(q.count, 0.0);
        for (int i = 0; i < q.count; ++i)
            for (int j = 0; j < p.count; ++j) {
                const double w = (j == 0 || j == p.count - 1 ? 0.5 : 1.0) * p.step();
                f[i] += w * res.rho_free[static_cast<size_t>(i) * p.count + j];
                g[i] += w * res.rho_nsm[static_cast<size_t>(i) * p.count + j];
            }
        Profile pf, pn;
        for (int i = 0; i < q.count; ++i) {
            pf.x.push_back(q.at(i));
            pn.x.push_back(q.at(i));
        }
        pf.P = f;
        pn.P = g;
        write_profile(r.path("nsm_free.csv"), pf);
        write_profile(r.path("nsm.csv"), pn);
        r.summary.check("classical density unchanged by a non-selective measurement", res.max_diff <= r.num("diff_tol", 1e-6),
                        res.max_diff);
    } else if (mode == "quantum") {
        const double hbar = r.num("hbar", 1.0), m = r.num("m", 1.0);
        const Axis x = Axis::make("x", r.num("x_min", -80), r.num("x_max", 80), r.integer("x_count", 16001));
        const auto res = nsm_quantum(gaussian_1d(a, pi, hbar), x, tau, hbar, m, r.num("sigma_meas", 0.05),
                                     r.num("window", 5.0));
        Profile pf, pn;
        for (int i = 0; i < x.count; ++i) pf.x.push_back(x.at(i));
        pn.x = pf.x;
        pf.P = res.rho_free;
        pn.P = res.rho_nsm;
        write_profile(r.path("nsm_free.csv"), pf);
        write_profile(r.path("nsm.csv"), pn);
        r.summary.note("coefficient of variation without measurement " + fmt17(res.cv_free));
        r.summary.check("post-measurement distribution flat on the window (CV)", res.cv_nsm < r.num("cv_max", 0.05),
                        res.cv_nsm);
    } else {
        throw ConfigError(errctx(r, "mode") + "expected classical or quantum");
    }
}

// ---- landau

void write_spectrum(const std::string& path, const SpectrumResult& s) {
    CsvWriter csv(path, {"label", "eigenvalue", "degeneracy"});
    for (const auto& l : s.levels) csv.cell(l.label).cell(l.value).cell(l.degeneracy).end_row();
}

void landau(Run& r) {
    r.cfg.check_known(r.section, {"B", "n_tr", "m", "hbar", "pz", "n_quantum", "fd", "fd_grid", "fd_half_width",
                                  "fd_shells", "cluster_tol", "tol"});
    const double B = r.num("B", 1.0), m = r.num("m", 1.0), hbar = r.num("hbar", 1.0), pz = r.num("pz", 0.0);
    const int n_tr = r.integer("n_tr", 40);
    const double w = B / m, tol = r.identity_tol(1e-12);
    const auto cl = landau_spectrum(B, n_tr, m);
    write_spectrum(r.path("landau.csv"), cl);
    double off = 0.0, sym = 0.0, deg = 0.0;
    std::map<long, int> by_n;
    for (const auto& l : cl.levels) {
        const double N = l.value / w;
        off = std::max(off, std::abs(N - std::round(N)));
        by_n[std::lround(N)] = l.degeneracy;
        deg = std::max(deg, std::abs(double(l.degeneracy - (n_tr - std::abs(std::lround(N))))));
    }
    for (const auto& [N, d] : by_n) {
        auto it = by_n.find(-N);
        sym = std::max(sym, it == by_n.end() ? double(d) : std::abs(double(d - it->second)));
    }
    r.summary.check("classical eigenvalues are integer multiples of omega", off <= tol, off);
    r.summary.check("classical spectrum symmetric about 0", sym == 0, sym);
    r.summary.check("degeneracy of N omega is N_tr - |N|", deg == 0, deg);
    const auto qu = landau_quantum(B, r.integer("n_quantum", 10), hbar, m, pz);
    write_spectrum(r.path("landau_quantum.csv"), qu);
    double half = 0.0;
    for (const auto& l : qu.levels) {
        const double x = (l.value - pz * pz / (2 * m)) / (hbar * w);
        half = std::max(half, std::abs(x - std::floor(x) - 0.5));
    }
    r.summary.check("quantum levels keep the zero-point 1/2", half <= 1e-12, half);
    for (const auto& c : landau_constants(B, m)) r.summary.check("[" + c.name + ", H-tilde] = 0", c.residual <= tol, c.residual);
    if (r.cfg.get_bool(r.section, "fd", true)) {
        const auto fd = landau_fd_check(r.integer("fd_grid", 128), r.num("fd_half_width", 7.0), r.integer("fd_shells", 6));
        CsvWriter csv(r.path("landau_fd.csv"), {"index", "eigenvalue_over_omega"});
        for (size_t i = 0; i < fd.eigenvalues.size(); ++i) csv.cell(static_cast<int>(i)).cell(fd.eigenvalues[i]).end_row();
        r.summary.check("finite-difference eigenvalues cluster at integers", fd.max_integer_distance <= r.num("cluster_tol", 0.05),
                        fd.max_integer_distance);
    }
}

// ---- ab

void ab(Run& r) {
    r.cfg.check_known(r.section, {"alpha", "b", "levels", "pz", "lz", "mu", "hbar", "fd_grid", "classical_tol"});
    const auto alphas = r.cfg.get_doubles(r.section, "alpha", {0.0, 0.1});
    const double b = r.num("b", 1.0), pz = r.num("pz", 0.0), lz = r.num("lz", 0.0), mu = r.num("mu", 1.0),
                 hbar = r.num("hbar", 1.0);
    std::vector<std::pair<int, int>> levels;
    for (const auto& s : r.cfg.get_list(r.section, "levels", {"2:1", "1:0", "2:0", "3:1"})) {
        const auto c = s.find(':');
        try {
            if (c == std::string::npos) throw std::invalid_argument(s);
            levels.emplace_back(std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1)));
        } catch (const std::exception&) {
            throw ConfigError(errctx(r, "levels") + "expected k:m, got '" + s + "'");
        }
    }
    const double ctol = r.num("classical_tol", 1e-10);
    CsvWriter csv(r.path("ab.csv"), {"alpha", "k", "m", "E_quantum", "E_classical_flag"});
    std::map<std::pair<int, int>, std::vector<std::pair<double, double>>> track;
    for (double al : alphas) {
        if (!(al >= 0.0 && al < 1.0)) throw ConfigError(errctx(r, "alpha") + "each alpha must lie in [0, 1)");
        const auto res = ab_spectra(al, b, levels, pz, lz, mu, hbar, r.integer("fd_grid", 14));
        for (const auto& L : res.levels) {
            csv.cell(al).cell(L.k).cell(L.m).cell(L.energy).cell(L.classical_identical ? 1 : 0).end_row();
            track[{L.k, L.m}].push_back({al, L.energy});
        }
        r.summary.check("classical radial spectra with and without flux agree, alpha = " + fmt17(al),
                        res.classical_max_diff <= ctol, res.classical_max_diff);
        r.summary.check("radial Liouvillian with flux equals the free one after the p_theta shift, alpha = " + fmt17(al),
                        res.symbolic_identity, 0.0);
        if (al == 0.0) {
            double d = 0.0;
            for (size_t i = 0; i < res.quantum_free.levels.size(); ++i)
                d = std::max(d, std::abs(res.quantum_free.levels[i].value - res.quantum_flux.levels[i].value));
            r.summary.check("alpha = 0: quantum spectra with and without flux coincide", d <= 1e-12, d);
        }
    }
    // m > 0 levels fall as alpha grows
    for (auto& [km, series] : track) {
        if (km.second <= 0 || series.size() < 2) continue;
        std::sort(series.begin(), series.end());
        bool dec = true;
        for (size_t i = 1; i < series.size(); ++i) dec = dec && series[i].second < series[i - 1].second;
        r.summary.check("E(k=" + std::to_string(km.first) + ",m=" + std::to_string(km.second) + ") decreases in alpha", dec,
                        0.0);
    }
}

const std::map<std::string, std::pair<void (*)(Run&), std::string>>& commands() {
    static const std::map<std::string, std::pair<void (*)(Run&), std::string>> c = {
        {"algebra-check", {algebra_check, "Grassmann, Cartan and charge-algebra identities"}},
        {"brackets-check", {brackets_check, "SN, FN, NR brackets and the superfield identity"}},
        {"metric-report", {metric_report, "metric eigenvalues, hermiticity, physical subspace, Jacobi link"}},
        {"evolve", {evolve, "KvN or Schroedinger evolution of a Gaussian; moments over time"}},
        {"two-slit", {two_slit_cmd, "classical, quantum or simplified two-slit screen profile"}},
        {"nsm", {nsm, "non-selective position measurement, classical or quantum"}},
        {"landau", {landau, "Landau spectrum in the oscillator basis and its grid cross-check"}},
        {"ab", {ab, "Aharonov-Bohm quantum levels and classical radial spectra"}},
        {"nogo", {nogo, "scan metrics x Hamiltonians for positive and Hermitian products"}},
    };
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kvnlab: Koopman-von Neumann mechanics experiments", "kvnlab"};
    app.set_version_flag("--version", version_tag());
    app.require_subcommand(1);
    std::string config_path, out_dir = ".";
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands()) {
        auto* s = app.add_subcommand(name, entry.second);
        s->add_option("--config", config_path, "key = value file with a [" + name + "] section");
        s->add_option("--out", out_dir, "output directory (created if missing)");
        s->add_option("--seed", seed, "seed for randomized checks");
        s->add_option("--tol", tol, "tolerance override for the identity checks");
        subs[name] = s;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    std::string name;
    for (const auto& [n, s] : subs)
        if (s->parsed()) name = n;

    Run run;
    run.section = name;
    run.out = out_dir;
    run.seed = seed;
    run.tol = tol;
    try {
        if (config_path.empty()) throw ConfigError("no --config given");
        run.cfg = Config::parse_file(config_path);
        if (run.cfg.empty()) throw ConfigError("config '" + config_path + "' is empty");
    } catch (const ConfigError& e) {
        std::cerr << "kvnlab: " << e.what() << "\n\n" << subs[name]->help();
        return 2;
    }
    try {
        std::filesystem::create_directories(out_dir);
        commands().at(name).first(run);
        run.summary.write(run.path("summary.txt"));
    } catch (const ConfigError& e) {
        std::cerr << "kvnlab " << name << ": config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "kvnlab " << name << ": " << e.what() << "\n";
        return 3;
    }
    for (const auto& l : run.summary.lines()) std::cout << l << "\n";
    std::cout << (run.summary.all_pass() ? "RESULT PASS" : "RESULT FAIL") << "\n";
    return run.summary.all_pass() ? 0 : 1;
}
