// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/cartan.hpp"

#include <stdexcept>

namespace kvn {

Eigen::MatrixXd omega_upper(int n) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 1; i <= n; ++i) {
        w(q_index(i) - 1, p_index(i) - 1) = 1.0;
        w(p_index(i) - 1, q_index(i) - 1) = -1.0;
    }
    return w;
}

Eigen::MatrixXd omega_lower(int n) { return omega_upper(n).inverse(); }

DiffOp exterior_derivative(int n) {
    DiffOp d(n);
    for (int a = 1; a <= 2 * n; ++a) d += DiffOp::sector(build_c(n, a)) * DiffOp::derivative(n, a);
    return d;
}

DiffOp interior_contraction(const std::vector<Poly>& V) {
    if (V.empty() || V.size() % 2) throw std::invalid_argument("vector field needs 2n components");
    const int n = static_cast<int>(V.size()) / 2;
    DiffOp r(n);
    for (int a = 1; a <= 2 * n; ++a) {
        Poly v = V[a - 1];
        if (v.n() == 0) v = Poly(n);
        if (v.n() != n) throw std::invalid_argument("component count does not match coefficient n");
        r += DiffOp::multiply(v, build_cbar(n, a));
    }
    return r;
}

std::vector<Poly> hamiltonian_vector(const Poly& H) {
    const int n = H.n();
    Eigen::MatrixXd w = omega_upper(n);
    std::vector<Poly> h(2 * n, Poly(n));
    for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b)
            if (w(a, b) != 0.0) h[a] += H.derivative(b + 1) * w(a, b);
    return h;
}

DiffOp lie_derivative(const std::vector<Poly>& V) {
    const int n = static_cast<int>(V.size()) / 2;
    DiffOp d = exterior_derivative(n), i = interior_contraction(V);
    return d * i + i * d;
}

DiffOp lie_derivative(const Poly& H) { return lie_derivative(hamiltonian_vector(H)); }

DiffOp evolution_operator(const Poly& H) { return lie_derivative(H) * cplx(0.0, -1.0); }

DiffOp evolution_operator_explicit(const Poly& H) {
    const int n = H.n();
    Eigen::MatrixXd w = omega_upper(n);
    std::vector<Poly> h = hamiltonian_vector(H);
    DiffOp r(n);
    const cplx I(0.0, 1.0);
    for (int a = 1; a <= 2 * n; ++a) r += DiffOp::multiply(h[a - 1] * (-I)) * DiffOp::derivative(n, a);
    for (int a = 1; a <= 2 * n; ++a)
        for (int b = 1; b <= 2 * n; ++b) {
            if (w(a - 1, b - 1) == 0.0) continue;
            for (int k = 1; k <= 2 * n; ++k) {
                Poly hess = H.derivative(b).derivative(k);
                if (hess.terms().empty()) continue;
                r += DiffOp::multiply(hess * (I * w(a - 1, b - 1)), build_cbar(n, a) * build_c(n, k));
            }
        }
    return r;
}

SectorOperator hodge_star(int n) {
    const int dim = 1 << (2 * n);
    // orientation: eps = +1 on (q1,p1,q2,p2,...)
    auto pos = [](int a) { return (a % 2) ? a + 1 : a - 1; };
    std::vector<Eigen::Triplet<cplx>> t;
    for (int s = 0; s < dim; ++s) {
        std::vector<int> S = basis_word(n, s), seq;
        int sc = (dim - 1) ^ s;
        std::vector<int> Sc = basis_word(n, sc);
        for (int a : S) seq.push_back(pos(a));
        for (int a : Sc) seq.push_back(pos(a));
        int inv = 0;
        for (size_t i = 0; i < seq.size(); ++i)
            for (size_t j = i + 1; j < seq.size(); ++j)
                if (seq[i] > seq[j]) ++inv;
        t.emplace_back(sc, s, (inv % 2) ? -1.0 : 1.0);
    }
    SpMat m(dim, dim);
    m.setFromTriplets(t.begin(), t.end());
    return {n, m};
}

DiffOp codifferential(int n) {
    DiffOp star = DiffOp::sector(hodge_star(n));
    return star * exterior_derivative(n) * star * cplx(-1.0);
}

DiffOp codifferential_explicit(int n) {
    DiffOp r(n);
    for (int a = 1; a <= 2 * n; ++a) r += DiffOp::sector(build_cbar(n, a)) * DiffOp::derivative(n, a) * cplx(-1.0);
    return r;
}

DiffOp laplacian(int n) {
    DiffOp d = exterior_derivative(n), delta = codifferential(n);
    return d * delta + delta * d;
}

DiffOp laplacian_explicit(int n) {
    DiffOp r(n);
    for (int a = 1; a <= 2 * n; ++a) {
        Exponent e(2 * n, 0);
        e[a - 1] = 2;
        r += DiffOp::derivative(n, e) * cplx(-1.0);
    }
    return r;
}

ChargeName parse_charge(const std::string& s) {
    static const std::pair<const char*, ChargeName> names[] = {
        {"Q", ChargeName::Q},   {"Qbar", ChargeName::Qbar}, {"K", ChargeName::K},   {"Kbar", ChargeName::Kbar},
        {"Qf", ChargeName::Qf}, {"N", ChargeName::N},       {"Nbar", ChargeName::Nbar}, {"QH", ChargeName::QH},
        {"QHbar", ChargeName::QHbar}};
    for (const auto& [k, v] : names)
        if (s == k) return v;
    throw std::invalid_argument("unknown charge '" + s + "'");
}

std::string charge_name(ChargeName c) {
    switch (c) {
        case ChargeName::Q: return "Q";
        case ChargeName::Qbar: return "Qbar";
        case ChargeName::K: return "K";
        case ChargeName::Kbar: return "Kbar";
        case ChargeName::Qf: return "Qf";
        case ChargeName::N: return "N";
        case ChargeName::Nbar: return "Nbar";
        case ChargeName::QH: return "QH";
        case ChargeName::QHbar: return "QHbar";
    }
    return "?";
}

DiffOp charge(ChargeName name, int n, const std::optional<Poly>& H, std::optional<double> beta) {
    const bool needH = name == ChargeName::N || name == ChargeName::Nbar || name == ChargeName::QH || name == ChargeName::QHbar;
    const bool needBeta = name == ChargeName::QH || name == ChargeName::QHbar;
    if (needH && !H) throw std::invalid_argument("charge " + charge_name(name) + " needs a Hamiltonian");
    if (needBeta && !beta) throw std::invalid_argument("charge " + charge_name(name) + " needs beta");
    if (H && H->n() != n) throw std::invalid_argument("Hamiltonian n does not match");
    Eigen::MatrixXd w = omega_upper(n), wl = omega_lower(n);
    DiffOp r(n);
    switch (name) {
        case ChargeName::Q:  // i c^a lambda_a with lambda = -i d
            return exterior_derivative(n);
        case ChargeName::Qbar:
            for (int a = 1; a <= 2 * n; ++a)
                for (int b = 1; b <= 2 * n; ++b)
                    if (w(a - 1, b - 1) != 0.0)
                        r += DiffOp::sector(build_cbar(n, a) * cplx(w(a - 1, b - 1))) * DiffOp::derivative(n, b);
            return r;
        case ChargeName::Qf:
            return DiffOp::sector(form_number(n));
        case ChargeName::K:
            for (int a = 1; a <= 2 * n; ++a)
                for (int b = 1; b <= 2 * n; ++b)
                    if (wl(a - 1, b - 1) != 0.0) r += DiffOp::sector(build_c(n, a) * build_c(n, b) * cplx(0.5 * wl(a - 1, b - 1)));
            return r;
        case ChargeName::Kbar:
            for (int a = 1; a <= 2 * n; ++a)
                for (int b = 1; b <= 2 * n; ++b)
                    if (w(a - 1, b - 1) != 0.0) r += DiffOp::sector(build_cbar(n, a) * build_cbar(n, b) * cplx(0.5 * w(a - 1, b - 1)));
            return r;
        case ChargeName::N:
            for (int a = 1; a <= 2 * n; ++a) r += DiffOp::multiply(H->derivative(a), build_c(n, a));
            return r;
        case ChargeName::Nbar: {
            std::vector<Poly> h = hamiltonian_vector(*H);
            for (int a = 1; a <= 2 * n; ++a) r += DiffOp::multiply(h[a - 1], build_cbar(n, a));
            return r;
        }
        case ChargeName::QH:
            return charge(ChargeName::Q, n) - charge(ChargeName::N, n, H) * cplx(*beta);
        case ChargeName::QHbar:
            return charge(ChargeName::Qbar, n) + charge(ChargeName::Nbar, n, H) * cplx(*beta);
    }
    return r;
}

IrrepMatrices irrep_matrices(double h) {
    if (!(h > 0.0)) throw std::invalid_argument("irrep label h must be positive");
    const double s = std::sqrt(h);
    IrrepMatrices m;
    auto z = [] { return Mat::Zero(4, 4).eval(); };
    m.Q = z();
    m.Q(2, 0) = s;
    m.Q(3, 1) = s;
    m.minus_iNbar = z();
    m.minus_iNbar(0, 2) = s;
    m.minus_iNbar(1, 3) = s;
    m.Qbar = z();
    m.Qbar(0, 1) = s;
    m.Qbar(2, 3) = -s;
    m.iN = z();
    m.iN(1, 0) = s;
    m.iN(3, 2) = -s;
    m.H = Mat::Identity(4, 4) * h;
    m.Qf = z();
    m.Qf(1, 1) = 1;
    m.Qf(2, 2) = 1;
    m.Qf(3, 3) = 2;
    m.K = z();
    m.K(3, 0) = 1;
    m.Kbar = z();
    m.Kbar(0, 3) = 1;
    return m;
}

int commutant_dimension(const std::vector<Mat>& set, double tol) {
    if (set.empty()) throw std::invalid_argument("empty matrix set");
    const int d = static_cast<int>(set[0].rows());
    Mat sys(static_cast<Eigen::Index>(set.size()) * d * d, d * d);
    const Mat I = Mat::Identity(d, d);
    for (size_t k = 0; k < set.size(); ++k) {
        // vec(XA - AX) = (A^T kron I - I kron A) vec(X)
        const Mat& A = set[k];
        Mat blk(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) blk.block(i * d, j * d, d, d) = A(j, i) * I - (i == j ? A : Mat::Zero(d, d));
        sys.block(static_cast<Eigen::Index>(k) * d * d, 0, d * d, d * d) = blk;
    }
    Eigen::JacobiSVD<Mat> svd(sys);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * std::max(1.0, sv[0])) ++rank;
    return d * d - rank;
}

}  // namespace kvn
