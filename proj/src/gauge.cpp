// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/gauge.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kvnlab/bessel.hpp"
#include "kvnlab/cartan.hpp"
#include "kvnlab/diffop.hpp"
#include "kvnlab/epb.hpp"

namespace kvn {

GaugeField GaugeField::landau(double B) {
    GaugeField g;
    g.kind = Kind::landau;
    g.B = B;
    return g;
}

GaugeField GaugeField::flux_line(double flux) {
    GaugeField g;
    g.kind = Kind::flux_line;
    g.flux = flux;
    return g;
}

GaugeField GaugeField::polynomial(const std::vector<Poly>& A) {
    if (A.empty()) throw std::invalid_argument("polynomial gauge field needs components");
    GaugeField g;
    g.kind = Kind::polynomial;
    g.A = A;
    return g;
}

std::vector<Poly> GaugeField::components(int n) const {
    switch (kind) {
        case Kind::landau: {
            if (n != 3) throw std::invalid_argument("the Landau gauge field lives in three dimensions");
            std::vector<Poly> A(3, Poly(3));
            A[1] = Poly::var(3, q_index(1)) * cplx(B);
            return A;
        }
        case Kind::polynomial:
            if (static_cast<int>(A.size()) != n || A.front().n() != n)
                throw std::invalid_argument("gauge field components do not match the phase-space dimension");
            return A;
        case Kind::flux_line:
            break;
    }
    throw std::invalid_argument("minimal coupling: unsupported field kind (flux line is not polynomial)");
}

std::string GaugeField::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::landau: os << "landau(B=" << B << ")"; break;
        case Kind::flux_line: os << "flux_line(Phi=" << flux << ")"; break;
        case Kind::polynomial: os << "polynomial"; break;
    }
    return os.str();
}

SuperPoly bosonic_part(const SuperPoly& F) {
    SuperPoly r(F.n());
    for (const auto& [k, v] : F.terms())
        if (k.odd == 0) r.add_term(k, v);
    return r;
}

namespace {

// Replace every phi^a by phi_sub[a-1] and lambda_a by lam_sub[a-1] (both even).
SuperPoly substitute_even(const SuperPoly& F, const std::vector<SuperPoly>& phi_sub,
                          const std::vector<SuperPoly>& lam_sub) {
    const int n = F.n();
    std::map<std::pair<int, int>, SuperPoly> powers;  // (slot, exponent); slot < 2n for phi
    auto power = [&](int slot, int e) -> const SuperPoly& {
        auto key = std::pair{slot, e};
        if (auto it = powers.find(key); it != powers.end()) return it->second;
        const SuperPoly& base = slot < 2 * n ? phi_sub[slot] : lam_sub[slot - 2 * n];
        SuperPoly r = SuperPoly::constant(n, 1.0);
        for (int k = 0; k < e; ++k) r = r * base;
        return powers[key] = r;
    };
    SuperPoly out(n);
    for (const auto& [k, v] : F.terms()) {
        SuperKey odd_only{Exponent(2 * n, 0), Exponent(2 * n, 0), k.odd};
        SuperPoly term(n);
        term.add_term(odd_only, v);
        for (int a = 0; a < 2 * n; ++a) {
            if (k.phi[a]) term = power(a, k.phi[a]) * term;
            if (k.lam[a]) term = power(2 * n + a, k.lam[a]) * term;
        }
        out += term;
    }
    return out;
}

Poly to_poly(const SuperPoly& F) {
    Poly r(F.n());
    for (const auto& [k, v] : F.terms()) {
        if (k.odd != 0 || std::any_of(k.lam.begin(), k.lam.end(), [](int e) { return e != 0; }))
            throw std::logic_error("expected a plain polynomial");
        r.add_term(k.phi, v);
    }
    return r;
}

// H(p - A(q), q) as a polynomial
Poly shift_momenta(const Poly& H, const std::vector<Poly>& A) {
    const int n = H.n();
    std::vector<SuperPoly> f(2 * n), lam(2 * n);
    for (int a = 1; a <= 2 * n; ++a) {
        f[a - 1] = SuperPoly::phi(n, a);
        lam[a - 1] = SuperPoly::lam(n, a);
    }
    for (int i = 1; i <= n; ++i) f[p_index(i) - 1] = f[p_index(i) - 1] - SuperPoly::from_poly(A[i - 1]);
    return to_poly(substitute_even(SuperPoly::from_poly(H), f, lam));
}

}  // namespace

SuperPoly coupled_bosonic(const Poly& H, const std::vector<Poly>& A_p, const std::vector<Poly>& A_lam) {
    const int n = H.n();
    if (static_cast<int>(A_p.size()) != n || static_cast<int>(A_lam.size()) != n)
        throw std::invalid_argument("gauge field has the wrong number of components");
    SuperPoly L = bosonic_part(cpi_hamiltonian(H));
    std::vector<SuperPoly> f(2 * n), lam(2 * n);
    for (int a = 1; a <= 2 * n; ++a) {
        f[a - 1] = SuperPoly::phi(n, a);
        lam[a - 1] = SuperPoly::lam(n, a);
    }
    for (int i = 1; i <= n; ++i) {
        f[p_index(i) - 1] = f[p_index(i) - 1] - SuperPoly::from_poly(A_p[i - 1]);
        // lambda_{q_i} - Acal_i,  Acal_i = -sum_j lambda_{p_j} d_j A_i
        for (int j = 1; j <= n; ++j) {
            Poly d = A_lam[i - 1].derivative(q_index(j));
            if (!d.is_zero(0.0))
                lam[q_index(i) - 1] = lam[q_index(i) - 1] + SuperPoly::lam(n, p_index(j)) * SuperPoly::from_poly(d);
        }
    }
    return substitute_even(L, f, lam);
}

CoupledLiouvillian minimal_coupling(const Poly& H, const GaugeField& field) {
    const int n = H.n();
    const auto A = field.components(n);
    CoupledLiouvillian r;
    r.free_bosonic = bosonic_part(cpi_hamiltonian(H));
    r.coupled_bosonic = coupled_bosonic(H, A, A);

    std::vector<SuperPoly> fields(2 * n);
    for (int a = 1; a <= 2 * n; ++a) fields[a - 1] = superfield(n, a);
    std::vector<SuperPoly> shifted = fields;
    for (int i = 1; i <= n; ++i) shifted[p_index(i) - 1] = fields[p_index(i) - 1] - substitute(A[i - 1], fields);
    r.via_superfield = berezin(substitute(H, shifted)) * cplx(0, 1);
    r.direct = cpi_hamiltonian(shift_momenta(H, A));
    r.bosonic_residual = (r.coupled_bosonic - bosonic_part(r.direct)).max_abs();
    r.superfield_residual = (r.via_superfield - r.direct).max_abs();

    for (int i = 1; i <= n; ++i) {
        const std::string p = index_label(p_index(i), n), q = index_label(q_index(i), n);
        if (!A[i - 1].is_zero(0.0)) r.rules.push_back({p, p + " - (" + A[i - 1].str() + ")"});
        for (int j = 1; j <= n; ++j) {
            Poly d = A[i - 1].derivative(q_index(j));
            if (d.is_zero(0.0)) continue;
            r.rules.push_back({"lambda_" + q, "lambda_" + q + " + (" + d.str() + ") lambda_" + index_label(p_index(j), n)});
        }
    }
    return r;
}

GaugeFunction GaugeFunction::linear(double beta) {
    return {[beta](double q) { return beta * q; }, [beta](double) { return beta; }};
}

GaugeFunction GaugeFunction::constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }};
}

WaveFunction2D gauge_transform(const WaveFunction2D& psi, const GaugeFunction& g) {
    if (!g.dalpha) throw std::invalid_argument("gauge function needs its derivative");
    WaveFunction2D out(psi.a0, psi.a1);
    if (psi.a1.label == "lp") {
        for (int i = 0; i < psi.a0.count; ++i) {
            const double s = g.dalpha(psi.a0.at(i));
            for (int j = 0; j < psi.a1.count; ++j) out(i, j) = std::exp(cplx(0, -psi.a1.at(j) * s)) * psi(i, j);
        }
        return out;
    }
    const double range = psi.a1.max - psi.a1.min;
    for (int i = 0; i < psi.a0.count; ++i)
        if (!(std::abs(g.dalpha(psi.a0.at(i))) < range))
            throw std::invalid_argument("gauge shift exceeds the momentum grid; grad(alpha) is not resolvable");
    BSpline2D spline(psi);
    for (int i = 0; i < psi.a0.count; ++i) {
        const double q = psi.a0.at(i), s = g.dalpha(q);
        for (int j = 0; j < psi.a1.count; ++j) out(i, j) = spline(q, psi.a1.at(j) - s);
    }
    return out;
}

PhaseFn gauge_transform(const PhaseFn& psi, const GaugeFunction& g, GaugeRep rep) {
    if (!g.dalpha) throw std::invalid_argument("gauge function needs its derivative");
    if (rep == GaugeRep::qp) return [psi, g](double q, double p) { return psi(q, p - g.dalpha(q)); };
    return [psi, g](double q, double l) { return std::exp(cplx(0, -l * g.dalpha(q))) * psi(q, l); };
}

SuperPoly velocity_rate(const Poly& H, const std::vector<Poly>& A, const Poly& alpha, bool transform_lambda, double m) {
    const int n = H.n();
    std::vector<Poly> Ap = A;
    for (int i = 1; i <= n; ++i) Ap[i - 1] = Ap[i - 1] + alpha.derivative(q_index(i));
    SuperPoly L = coupled_bosonic(H, Ap, transform_lambda ? Ap : A);
    SuperPoly vx = (SuperPoly::phi(n, p_index(1)) - SuperPoly::from_poly(Ap[0])) * cplx(1.0 / m);
    SuperPoly rate = epb(vx, L);
    // back to the untransformed chart, p' = p + grad(alpha)
    std::vector<SuperPoly> f(2 * n), lam(2 * n);
    for (int a = 1; a <= 2 * n; ++a) {
        f[a - 1] = SuperPoly::phi(n, a);
        lam[a - 1] = SuperPoly::lam(n, a);
    }
    for (int i = 1; i <= n; ++i) f[p_index(i) - 1] = f[p_index(i) - 1] + SuperPoly::from_poly(alpha.derivative(q_index(i)));
    return substitute_even(rate, f, lam);
}

std::vector<double> SpectrumResult::values() const {
    std::vector<double> v;
    for (const auto& l : levels) v.push_back(l.value);
    return v;
}

SpectrumResult landau_spectrum(double B, int n_tr, double m) {
    if (n_tr < 2) throw std::invalid_argument("Landau truncation needs N_tr >= 2");
    const double w = B / m;
    using Sp = Eigen::SparseMatrix<double>;
    Sp a(n_tr, n_tr), I(n_tr, n_tr);
    for (int k = 1; k < n_tr; ++k) a.insert(k - 1, k) = std::sqrt(double(k));
    I.setIdentity();
    Sp half = 0.5 * I;
    Sp hosc = w * (Sp(a.transpose() * a) + half);
    // (1/Delta)[H_osc(Z_-) - H_osc(Z_+)] with Delta absorbed in the units: basis |n_minus> x |n_plus>
    Sp L = Eigen::kroneckerProduct(hosc, I).eval() - Eigen::kroneckerProduct(I, hosc).eval();
    double off = 0.0;
    for (int k = 0; k < L.outerSize(); ++k)
        for (Sp::InnerIterator it(L, k); it; ++it)
            if (it.row() != it.col()) off = std::max(off, std::abs(it.value()));
    if (off > 1e-12) throw std::logic_error("truncated Landau operator is not diagonal in the oscillator basis");
    std::map<long, int> count;
    std::map<long, double> value;
    for (int k = 0; k < n_tr * n_tr; ++k) {
        const double v = L.coeff(k, k);
        const long N = std::lround(v / w);
        ++count[N];
        value[N] = v;
    }
    SpectrumResult r;
    r.context = "classical Landau, omega=" + std::to_string(w) + ", N_tr=" + std::to_string(n_tr);
    for (const auto& [N, c] : count) r.levels.push_back({"N=" + std::to_string(N), value[N], c});
    return r;
}

SpectrumResult landau_quantum(double B, int n_levels, double hbar, double m, double pz) {
    const double w = B / m;
    SpectrumResult r;
    r.context = "quantum Landau";
    for (int k = 0; k < n_levels; ++k)
        r.levels.push_back({"n=" + std::to_string(k), hbar * w * (k + 0.5) + pz * pz / (2 * m), 1});
    return r;
}

LandauFdCheck landau_fd_check(int grid, double half_width, int shells, unsigned seed) {
    if (grid < 8 || shells < 0) throw std::invalid_argument("landau_fd_check: grid >= 8 and shells >= 0");
    using Sp = Eigen::SparseMatrix<double>;
    const int n = grid, N = n * n;
    const double h = 2 * half_width / (n + 1);
    auto X = [&](int i) { return -half_width + (i + 1) * h; };
    auto id = [&](int i, int j) { return i * n + j; };
    // fourth-order central stencils
    const double d1[5] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
    const double d2[5] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
    std::vector<Eigen::Triplet<double>> ts, td;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int r = id(i, j);
            const double x = X(i), l = X(j);
            ts.emplace_back(r, r, 0.5 * (x * x + l * l));
            td.emplace_back(r, r, -x * l);
            for (int s = -2; s <= 2; ++s) {
                if (i + s >= 0 && i + s < n) ts.emplace_back(r, id(i + s, j), -0.5 * d2[s + 2] / (h * h));
                if (j + s >= 0 && j + s < n) ts.emplace_back(r, id(i, j + s), -0.5 * d2[s + 2] / (h * h));
                for (int t = -2; t <= 2; ++t) {
                    const double c = d1[s + 2] * d1[t + 2];
                    if (c != 0.0 && i + s >= 0 && i + s < n && j + t >= 0 && j + t < n)
                        td.emplace_back(r, id(i + s, j + t), c / (h * h));
                }
            }
        }
    Sp S(N, N), D(N, N);
    S.setFromTriplets(ts.begin(), ts.end());
    D.setFromTriplets(td.begin(), td.end());

    const int keep = (shells + 1) * (shells + 2) / 2, block = (shells + 3) * (shells + 4) / 2;
    Eigen::SimplicialLDLT<Sp> solver(S);
    if (solver.info() != Eigen::Success) throw std::runtime_error("landau_fd_check: factorization failed");
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd V(N, block);
    for (int c = 0; c < block; ++c)
        for (int r = 0; r < N; ++r) V(r, c) = nd(rng);
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(keep);
    Eigen::MatrixXd Q;
    for (int it = 0; it < 400; ++it) {
        V = solver.solve(V);
        Q = Eigen::HouseholderQR<Eigen::MatrixXd>(V).householderQ() * Eigen::MatrixXd::Identity(N, block);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q.transpose() * (S * Q));
        V = Q * es.eigenvectors();
        Eigen::VectorXd cur = es.eigenvalues().head(keep);
        if (it > 5 && (cur - prev).cwiseAbs().maxCoeff() < 1e-8) break;
        prev = cur;
    }
    Eigen::MatrixXd W = V.leftCols(keep);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ed(W.transpose() * (D * W));
    LandauFdCheck r;
    r.shells = shells;
    for (int k = 0; k < keep; ++k) {
        const double e = ed.eigenvalues()(k);
        r.eigenvalues.push_back(e);
        r.max_integer_distance = std::max(r.max_integer_distance, std::abs(e - std::round(e)));
    }
    return r;
}

std::vector<ConstantOfMotion> landau_constants(double B, double m) {
    const int n = 3;
    auto v = [&](const std::string& s) { return Poly::parse(s, n); };
    const Poly x = v("x"), y = v("y"), px = v("px"), py = v("py"), pz = v("pz");
    const Poly vx = px * cplx(1.0 / m), vy = (py - x * cplx(B)) * cplx(1.0 / m);
    const Poly H = (px * px + (py - x * cplx(B)) * (py - x * cplx(B)) + pz * pz) * cplx(1.0 / (2 * m));
    const double w = B / m;
    std::vector<ConstantOfMotion> out = {
        {"x0", py * cplx(1.0 / B), 0.0},
        {"y0", y - px * cplx(1.0 / B), 0.0},
        {"rho2_larmor", (vx * vx + vy * vy) * cplx(1.0 / (w * w)), 0.0},
    };
    const DiffOp L = evolution_operator(H);
    for (auto& c : out) {
        const DiffOp f = DiffOp::multiply(c.f);
        c.residual = (f * L - L * f).max_abs();
    }
    return out;
}

namespace {

// -(i/mu) p_r d_r + P n/(mu r^2) - (i/(mu r^3)) P^2 d_pr + lz pz/mu on a Dirichlet (r, p_r) grid,
// P = p_theta - flux_shift
Eigen::MatrixXcd radial_liouvillian(double p_theta, double flux_shift, int ntheta, double pz, double lz, double mu, double r0, double r1,
                                    double pmax, int g) {
    const int N = g * g;
    const double P = p_theta - flux_shift;
    const double hr = (r1 - r0) / (g + 1), hp = 2 * pmax / (g + 1);
    const cplx I(0, 1);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            const int k = i * g + j;
            const double r = r0 + (i + 1) * hr, pr = -pmax + (j + 1) * hp;
            M(k, k) += P * ntheta / (mu * r * r) + lz * pz / mu;
            const cplx cr = -I * pr / mu / (2 * hr), cp = -I * P * P / (mu * r * r * r) / (2 * hp);
            if (i + 1 < g) M(k, k + g) += cr;
            if (i > 0) M(k, k - g) -= cr;
            if (j + 1 < g) M(k, k + 1) += cp;
            if (j > 0) M(k, k - 1) -= cp;
        }
    return M;
}

std::vector<cplx> sorted_eigenvalues(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    std::vector<cplx> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return v;
}

}  // namespace

AbResult ab_spectra(double flux_alpha, double b, const std::vector<std::pair<int, int>>& levels, double pz, double lz,
                    double mu, double hbar, int fd_grid) {
    if (!(flux_alpha >= 0.0 && flux_alpha < 1.0)) throw std::invalid_argument("flux alpha must lie in [0, 1)");
    if (!(b > 0 && mu > 0 && hbar > 0)) throw std::invalid_argument("b, mu and hbar must be positive");
    AbResult r;
    r.quantum_free.context = "quantum, no flux";
    r.quantum_flux.context = "quantum, alpha=" + std::to_string(flux_alpha);
    r.classical_free.context = "classical radial Liouvillian, no flux";
    r.classical_flux.context = "classical radial Liouvillian, alpha=" + std::to_string(flux_alpha);
    r.symbolic_identity = true;
    const double shift = flux_alpha * hbar;  // e Phi_B / (2 pi c)
    for (auto [k, m] : levels) {
        AbLevel L;
        L.alpha = flux_alpha;
        L.k = k;
        L.m = m;
        L.nu = std::abs(m - flux_alpha);
        // the label (k, m) follows the free level: for m != 0 the origin zero of J_|m| is counted
        if (m != 0 && k < 2) throw std::invalid_argument("k=1 with m != 0 is the trivial zero at the origin");
        L.zero = m == 0 ? standard_bessel_zero(L.nu, k) : standard_bessel_zero(L.nu, k - 1);
        L.coefficient = L.zero * L.zero / 2;
        L.energy = hbar * hbar * L.zero * L.zero / (2 * mu * b * b) + pz * pz / (2 * mu);
        const std::string label = "k=" + std::to_string(k) + ",m=" + std::to_string(m);
        const double z0 = bessel_zero(std::abs(double(m)), k);  // same labelling without flux
        r.quantum_free.levels.push_back({label, hbar * hbar * z0 * z0 / (2 * mu * b * b) + pz * pz / (2 * mu), 1});
        r.quantum_flux.levels.push_back({label, L.energy, 1});

        // free problem at p_theta = P, flux problem at p_theta = P + shift
        const double P = m * hbar;
        Eigen::MatrixXcd Mf = radial_liouvillian(P, 0.0, m, pz, lz, mu, 0.2 * b, b, 3.0, fd_grid);
        Eigen::MatrixXcd Ma = radial_liouvillian(P + shift, shift, m, pz, lz, mu, 0.2 * b, b, 3.0, fd_grid);
        const double mat_diff = (Mf - Ma).cwiseAbs().maxCoeff();
        if (mat_diff > 1e-12) r.symbolic_identity = false;
        auto ef = sorted_eigenvalues(Mf), ea = sorted_eigenvalues(Ma);
        double d = 0.0;
        for (size_t i = 0; i < ef.size(); ++i) d = std::max(d, std::abs(ef[i] - ea[i]));
        L.classical_max_diff = d;
        L.classical_identical = d <= 1e-10;
        r.classical_max_diff = std::max(r.classical_max_diff, d);
        for (size_t i = 0; i < ef.size(); ++i) {
            r.classical_free.levels.push_back({label, ef[i].real(), 1});
            r.classical_flux.levels.push_back({label, ea[i].real(), 1});
        }
        r.levels.push_back(L);
    }
    auto by_value = [](const SpectrumLevel& a, const SpectrumLevel& b) { return a.value < b.value; };
    for (auto* s : {&r.quantum_free, &r.quantum_flux, &r.classical_free, &r.classical_flux})
        std::stable_sort(s->levels.begin(), s->levels.end(), by_value);
    return r;
}

}  // namespace kvn
