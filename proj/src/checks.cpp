// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/checks.hpp"

#include <algorithm>
#include <sstream>

#include "kvnlab/epb.hpp"

namespace kvn {

namespace {

CheckResult make(std::string name, double residual, double tol) {
    return {std::move(name), residual, residual <= tol};
}

std::string hname(const Poly& H) { return H.str(); }

int draw(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<Poly> random_field(int n, int max_degree, std::mt19937_64& rng) {
    std::vector<Poly> V;
    for (int a = 0; a < 2 * n; ++a) V.push_back(random_poly(n, max_degree, 2, rng));
    return V;
}

// M^i_k = J^i_k as polynomials, from a rank-1 vector-valued form
std::vector<std::vector<Poly>> endomorphism(const TensorSpec& J) {
    const int d = 2 * J.n;
    std::vector<std::vector<Poly>> M(d, std::vector<Poly>(d, Poly(J.n)));
    for (int i = 1; i <= d; ++i)
        for (int k = 1; k <= d; ++k) M[i - 1][k - 1] = J.get({i, k});
    return M;
}

}  // namespace

bool all_pass(const CheckList& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Poly random_poly(int n, int max_degree, int terms, std::mt19937_64& rng) {
    Poly P(n);
    while (P.is_zero() || P.degree() < 1) {
        for (int t = 0; t < terms; ++t) {
            Exponent e(2 * n, 0);
            const int deg = draw(rng, 1, max_degree);
            for (int k = 0; k < deg; ++k) ++e[draw(rng, 0, 2 * n - 1)];
            int c = 0;
            while (c == 0) c = draw(rng, -3, 3);
            P.add_term(e, cplx(c));
        }
    }
    return P;
}

CheckList grassmann_checks(int n, double tol) {
    const int d = 2 * n;
    const auto one = identity_op(n);
    double cc = 0.0, bb = 0.0, cb = 0.0;
    for (int a = 1; a <= d; ++a) {
        for (int b = a; b <= d; ++b) {
            cc = std::max(cc, max_abs(anticommutator(build_c(n, a), build_c(n, b)).m));
            bb = std::max(bb, max_abs(anticommutator(build_cbar(n, a), build_cbar(n, b)).m));
        }
        for (int b = 1; b <= d; ++b) {
            auto r = anticommutator(build_c(n, a), build_cbar(n, b));
            if (a == b) r = r - one;
            cb = std::max(cb, max_abs(r.m));
        }
    }
    const std::string tag = "n=" + std::to_string(n) + ": ";
    return {make(tag + "{c^a,c^b} = 0", cc, tol), make(tag + "{cbar_a,cbar_b} = 0", bb, tol),
            make(tag + "{c^a,cbar_b} = delta^a_b", cb, tol)};
}

CheckList cartan_checks(int n, const std::vector<Poly>& hamiltonians, double tol) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    CheckList out;
    const auto d = exterior_derivative(n);
    const auto delta = codifferential(n);
    out.push_back(make(tag + "d^2 = 0", (d * d).max_abs(), tol));
    out.push_back(make(tag + "delta^2 = 0", (delta * delta).max_abs(), tol));
    out.push_back(make(tag + "delta = -cbar_a d_a", (delta - codifferential_explicit(n)).max_abs(), tol));
    out.push_back(make(tag + "d delta + delta d = -sum d_a^2", (laplacian(n) - laplacian_explicit(n)).max_abs(), tol));
    // ** = (-1)^p on p-forms in even dimension
    const auto star = hodge_star(n);
    SpMat grading(star.dim(), star.dim());
    for (int i = 0; i < star.dim(); ++i) grading.insert(i, i) = basis_degree(n, i) % 2 ? -1.0 : 1.0;
    out.push_back(make(tag + "** = (-1)^p", max_abs((star * star).m - grading), tol));
    for (const auto& H : hamiltonians) {
        if (H.n() != n) throw std::invalid_argument("cartan_checks: Hamiltonian has the wrong n");
        out.push_back(make(tag + "L_h = d i_h + i_h d matches the explicit form, H = " + hname(H),
                           (evolution_operator(H) - evolution_operator_explicit(H)).max_abs(), tol));
    }
    return out;
}

CheckList charge_checks(int n, const std::vector<Poly>& hamiltonians, double beta, double tol) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const auto Q = charge(ChargeName::Q, n), Qb = charge(ChargeName::Qbar, n);
    const auto K = charge(ChargeName::K, n), Kb = charge(ChargeName::Kbar, n), Qf = charge(ChargeName::Qf, n);
    const auto one = DiffOp::sector(identity_op(n));
    auto ac = [](const DiffOp& a, const DiffOp& b) { return graded_commutator(a, b, Grading::plus); };
    auto cm = [](const DiffOp& a, const DiffOp& b) { return graded_commutator(a, b, Grading::minus); };
    CheckList out = {
        make(tag + "[Q,Q]+ = 0", ac(Q, Q).max_abs(), tol),
        make(tag + "[Qbar,Qbar]+ = 0", ac(Qb, Qb).max_abs(), tol),
        make(tag + "[Q,Qbar]+ = 0", ac(Q, Qb).max_abs(), tol),
        make(tag + "[Qf,K] = 2K", (cm(Qf, K) - K * 2.0).max_abs(), tol),
        make(tag + "[Qf,Kbar] = -2Kbar", (cm(Qf, Kb) + Kb * 2.0).max_abs(), tol),
        make(tag + "[K,Kbar] = Qf - n", (cm(K, Kb) - Qf + one * static_cast<double>(n)).max_abs(), tol),
        make(tag + "[Qf,Q] = Q", (cm(Qf, Q) - Q).max_abs(), tol),
        make(tag + "[Qf,Qbar] = -Qbar", (cm(Qf, Qb) + Qb).max_abs(), tol),
        make(tag + "[K,Q] = 0", cm(K, Q).max_abs(), tol),
        make(tag + "[K,Qbar] = Q", (cm(K, Qb) - Q).max_abs(), tol),
        make(tag + "[Kbar,Q] = Qbar", (cm(Kb, Q) - Qb).max_abs(), tol),
        make(tag + "[Kbar,Qbar] = 0", cm(Kb, Qb).max_abs(), tol),
    };
    for (const auto& H : hamiltonians) {
        const auto Ht = evolution_operator(H);
        const auto QH = charge(ChargeName::QH, n, H, beta), QHb = charge(ChargeName::QHbar, n, H, beta);
        std::ostringstream b;
        b << beta;
        out.push_back(make(tag + "[Q_H,Qbar_H]+ = 2i beta H-tilde, beta = " + b.str() + ", H = " + hname(H),
                           (ac(QH, QHb) - Ht * cplx(0, 2 * beta)).max_abs(), tol));
        out.push_back(make(tag + "[Q,H-tilde] = 0, H = " + hname(H), cm(Q, Ht).max_abs(), tol));
        out.push_back(make(tag + "[Q_H,H-tilde] = 0, H = " + hname(H), cm(QH, Ht).max_abs(), tol));
    }
    return out;
}

CheckList bracket_checks(std::uint64_t seed, const BracketCheckOptions& opt) {
    std::mt19937_64 rng(seed);
    const int n = opt.n, d = 2 * n;
    CheckList out;
    const cplx i(0, 1);

    double sn = 0.0, sn_self = 0.0;
    for (int k = 0; k < opt.sn_pairs; ++k) {
        const auto V = random_field(n, opt.max_degree, rng), W = random_field(n, opt.max_degree, rng);
        const auto lie = hat(TensorSpec::vector_field(lie_bracket_coords(V, W)));
        sn = std::max(sn, (sn_bracket(TensorSpec::vector_field(V), TensorSpec::vector_field(W)) - lie).max_abs());
        sn_self = std::max(sn_self, sn_bracket(TensorSpec::vector_field(V), TensorSpec::vector_field(V)).max_abs());
    }
    out.push_back(make("SN on vector fields = coordinate Lie bracket (" + std::to_string(opt.sn_pairs) + " pairs)", sn,
                       opt.tol));
    out.push_back(make("[V,V]_SN = 0", sn_self, opt.tol));

    // vector-valued one-forms: NR = L J - J L as endomorphisms
    TensorSpec J = TensorSpec::vvform(n, 1), L = TensorSpec::vvform(n, 1);
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b) {
            if (draw(rng, 0, 2) == 0) J.set({a, b}, random_poly(n, 2, 1, rng));
            if (draw(rng, 0, 2) == 0) L.set({a, b}, random_poly(n, 2, 1, rng));
        }
    const auto nr = nr_bracket(J, L);
    out.push_back(make("NR = i{J,L}", (nr - epb(hat(J), hat(L)) * i).max_abs(), opt.tol));
    const auto back = unhat(nr, TensorKind::vvform);
    out.push_back(make("NR un-hat round trip", (hat(back) - nr).max_abs(), opt.tol));
    {
        const auto MJ = endomorphism(J), ML = endomorphism(L);
        TensorSpec C = TensorSpec::vvform(n, 1);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                Poly s(n);
                for (int m = 0; m < d; ++m) s += ML[a][m] * MJ[m][b] - MJ[a][m] * ML[m][b];
                if (!s.is_zero()) C.set({a + 1, b + 1}, s);
            }
        out.push_back(make("NR on vector-valued 1-forms = L J - J L", (nr - hat(C)).max_abs(), opt.tol));
    }
    out.push_back(make("hat injective on vector-valued forms", unhat(hat(J), TensorKind::vvform).distance(J), opt.tol));

    // FN: vector-valued 0-forms give the Lie bracket; {H_J, F} = -[iota_J, d] F on a random 1-form
    {
        const auto V = random_field(n, opt.max_degree, rng), W = random_field(n, opt.max_degree, rng);
        TensorSpec J0 = TensorSpec::vvform(n, 0), L0 = TensorSpec::vvform(n, 0);
        for (int a = 1; a <= d; ++a) {
            J0.set({a}, V[a - 1]);
            L0.set({a}, W[a - 1]);
        }
        out.push_back(make("FN on vector-valued 0-forms = Lie bracket",
                           (fn_bracket(J0, L0) - hat(TensorSpec::vector_field(lie_bracket_coords(V, W)))).max_abs(),
                           opt.tol));
        TensorSpec F = TensorSpec::form(n, 1);
        for (int a = 1; a <= d; ++a) F.set({a}, random_poly(n, opt.max_degree, 2, rng));
        const auto Q = Q_sp(n), Fh = hat(F);
        double fn = 0.0;
        for (const TensorSpec* Jk : {&J0, &J}) {
            const auto Jh = hat(*Jk);
            auto iota = [&](const SuperPoly& X) { return epb(Jh, X) * i; };
            auto dd = [&](const SuperPoly& X) { return epb(Q, X) * i; };
            const double sign = (Jk->rank - 1) % 2 == 0 ? 1.0 : -1.0;  // iota_J has degree rank - 1
            const auto lhs = iota(dd(Fh)) - dd(iota(Fh)) * sign;
            fn = std::max(fn, (lhs + epb(fn_generator(Jh), Fh)).max_abs());
        }
        out.push_back(make("FN Lie derivative -{H_J,F} = [iota_J,d] F", fn, opt.tol));
    }

    std::vector<SuperPoly> Phi;
    for (int a = 1; a <= d; ++a) Phi.push_back(superfield(n, a));
    double sf = 0.0;
    for (int k = 0; k < opt.superfield_count; ++k) {
        const Poly H = random_poly(n, opt.max_degree + 1, 4, rng);
        sf = std::max(sf, (berezin(substitute(H, Phi)) * i - cpi_hamiltonian(H)).max_abs());
    }
    out.push_back(make("i int dtheta dthetabar H[Phi] = CPI Hamiltonian (" + std::to_string(opt.superfield_count) +
                           " random H)",
                       sf, opt.tol));
    return out;
}

std::vector<Poly> nogo_family() {
    return {Poly::parse("p^2/2+q^2/2", 1), Poly::parse("p^2/2+q^2", 1), Poly::parse("p^2/2+q^4", 1),
            Poly::parse("p^2/2+q^3", 1), Poly::parse("p^2/2+q^2/2+q*p", 1)};
}

std::vector<MetricSpec> nogo_metrics() {
    MetricParams s2, gA, gB;
    s2.b = 2.0;
    gA.gamma = 0.7;
    gB.b = 1.3;
    return {build_metric(MetricKind::svh, 1),          build_metric(MetricKind::gauge, 1),
            build_metric(MetricKind::symplectic, 1),   build_metric(MetricKind::genSymplectic, 1, s2),
            build_metric(MetricKind::genGaugeA, 1, gA), build_metric(MetricKind::genGaugeB, 1, gB)};
}

}  // namespace kvn
