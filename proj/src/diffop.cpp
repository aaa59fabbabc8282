// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/diffop.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace kvn {

namespace {

constexpr double kPrune = 1e-15;

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

// all gamma <= alpha
void sub_indices(const Exponent& alpha, std::vector<Exponent>& out) {
    out.clear();
    Exponent g(alpha.size(), 0);
    for (;;) {
        out.push_back(g);
        size_t k = 0;
        while (k < g.size()) {
            if (g[k] < alpha[k]) {
                ++g[k];
                break;
            }
            g[k] = 0;
            ++k;
        }
        if (k == g.size()) return;
    }
}

}  // namespace

void DiffOp::add(const Exponent& alpha, const Exponent& mono, const SpMat& S) {
    if (S.nonZeros() == 0) return;
    Key k{alpha, mono};
    auto it = t_.find(k);
    if (it == t_.end()) {
        SpMat c = S;
        c.prune([](const Eigen::Index&, const Eigen::Index&, const cplx& v) { return std::abs(v) > kPrune; });
        if (c.nonZeros()) t_.emplace(std::move(k), std::move(c));
        return;
    }
    it->second += S;
    it->second.prune([](const Eigen::Index&, const Eigen::Index&, const cplx& v) { return std::abs(v) > kPrune; });
    if (it->second.nonZeros() == 0) t_.erase(it);
}

DiffOp DiffOp::sector(const SectorOperator& S) {
    DiffOp r(S.n);
    r.add(Exponent(2 * S.n, 0), Exponent(2 * S.n, 0), S.m);
    return r;
}

DiffOp DiffOp::multiply(const Poly& f, const SectorOperator& S) {
    DiffOp r(S.n);
    for (const auto& [e, c] : f.terms()) r.add(Exponent(2 * S.n, 0), e, SpMat(S.m * c));
    return r;
}

DiffOp DiffOp::multiply(const Poly& f) { return multiply(f, identity_op(f.n())); }

DiffOp DiffOp::derivative(int n, int a) {
    Exponent alpha(2 * n, 0);
    alpha.at(a - 1) = 1;
    return derivative(n, alpha);
}

DiffOp DiffOp::derivative(int n, const Exponent& alpha) {
    DiffOp r(n);
    r.add(alpha, Exponent(2 * n, 0), identity_op(n).m);
    return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    if (n_ == 0) n_ = o.n_;
    if (o.n_ && o.n_ != n_) throw std::invalid_argument("DiffOp dimension mismatch");
    for (const auto& [k, S] : o.t_) add(k.first, k.second, S);
    return *this;
}
DiffOp DiffOp::operator+(const DiffOp& o) const {
    DiffOp r = *this;
    r += o;
    return r;
}
DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + o * cplx(-1.0); }

DiffOp DiffOp::operator*(cplx s) const {
    DiffOp r(n_);
    if (s == cplx(0.0)) return r;
    for (const auto& [k, S] : t_) r.t_.emplace(k, SpMat(S * s));
    return r;
}

DiffOp DiffOp::operator*(const DiffOp& o) const {
    if (n_ && o.n_ && n_ != o.n_) throw std::invalid_argument("DiffOp dimension mismatch");
    DiffOp r(n_ ? n_ : o.n_);
    std::vector<Exponent> gammas;
    for (const auto& [k1, S1] : t_) {
        const auto& [alpha, m1] = k1;
        sub_indices(alpha, gammas);
        for (const auto& [k2, S2] : o.t_) {
            const auto& [beta, m2] = k2;
            SpMat S12 = S1 * S2;
            if (S12.nonZeros() == 0) continue;
            for (const auto& g : gammas) {
                // d^gamma of the monomial m2, times C(alpha, gamma)
                double coeff = 1.0;
                Exponent mono(m1.size()), der(alpha.size());
                bool vanish = false;
                for (size_t a = 0; a < g.size() && !vanish; ++a) {
                    if (g[a] > m2[a]) {
                        vanish = true;
                        break;
                    }
                    coeff *= binom(alpha[a], g[a]);
                    for (int j = 0; j < g[a]; ++j) coeff *= (m2[a] - j);
                    mono[a] = m1[a] + m2[a] - g[a];
                    der[a] = alpha[a] - g[a] + beta[a];
                }
                if (vanish || coeff == 0.0) continue;
                r.add(der, mono, SpMat(S12 * coeff));
            }
        }
    }
    return r;
}

DiffOp DiffOp::formal_adjoint() const {
    // (S m d^alpha)^* = (-1)^{|alpha|} d^alpha o (conj(m) S^H)
    DiffOp r(n_);
    for (const auto& [k, S] : t_) {
        const auto& [alpha, mono] = k;
        int order = 0;
        for (int a : alpha) order += a;
        DiffOp mult(n_);
        mult.add(Exponent(2 * n_, 0), mono, SpMat(S.adjoint()));
        DiffOp term = derivative(n_, alpha) * mult;
        r += term * cplx((order % 2) ? -1.0 : 1.0);
    }
    return r;
}

DiffOp DiffOp::fermionic_part() const {
    DiffOp r(n_);
    for (const auto& [k, S] : t_)
        if (std::all_of(k.first.begin(), k.first.end(), [](int a) { return a == 0; })) r.t_.emplace(k, S);
    return r;
}

DiffOp DiffOp::bosonic_part() const {
    DiffOp r(n_);
    for (const auto& [k, S] : t_)
        if (!std::all_of(k.first.begin(), k.first.end(), [](int a) { return a == 0; })) r.t_.emplace(k, S);
    return r;
}

bool DiffOp::has_derivatives() const { return !bosonic_part().t_.empty(); }

double DiffOp::max_abs() const {
    double m = 0.0;
    for (const auto& [k, S] : t_) m = std::max(m, kvn::max_abs(S));
    return m;
}

int DiffOp::parity() const {
    bool even = false, odd = false;
    for (const auto& [k, S] : t_)
        for (int c = 0; c < S.outerSize(); ++c)
            for (SpMat::InnerIterator it(S, c); it; ++it) {
                int d = std::popcount(static_cast<unsigned>(it.row())) + std::popcount(static_cast<unsigned>(it.col()));
                (d % 2 ? odd : even) = true;
            }
    if (even && odd) return 0;
    return odd ? -1 : 1;
}

std::vector<Poly> DiffOp::apply(const std::vector<Poly>& psi) const {
    if (static_cast<int>(psi.size()) != dim()) throw std::invalid_argument("multiform length mismatch");
    std::vector<Poly> out(dim(), Poly(n_));
    for (const auto& [k, S] : t_) {
        const auto& [alpha, mono] = k;
        Poly m = Poly::monomial(n_, mono, 1.0);
        for (int c = 0; c < S.outerSize(); ++c) {
            Poly d = psi[c].derivative(alpha);
            if (d.terms().empty()) continue;
            Poly md = m * d;
            for (SpMat::InnerIterator it(S, c); it; ++it) out[it.row()] += md * it.value();
        }
    }
    return out;
}

Mat DiffOp::eval_sector(const std::vector<double>& phi) const {
    Mat M = Mat::Zero(dim(), dim());
    for (const auto& [k, S] : t_) {
        if (!std::all_of(k.first.begin(), k.first.end(), [](int a) { return a == 0; })) continue;
        cplx w = Poly::monomial(n_, k.second, 1.0).eval(phi);
        M += Mat(S) * w;
    }
    return M;
}

std::vector<std::vector<Poly>> DiffOp::coefficient(const Exponent& alpha) const {
    std::vector<std::vector<Poly>> C(dim(), std::vector<Poly>(dim(), Poly(n_)));
    for (const auto& [k, S] : t_) {
        if (k.first != alpha) continue;
        for (int c = 0; c < S.outerSize(); ++c)
            for (SpMat::InnerIterator it(S, c); it; ++it)
                C[it.row()][c].add_term(k.second, it.value());
    }
    return C;
}

DiffOp graded_commutator(const DiffOp& A, const DiffOp& B, Grading g) {
    if (g == Grading::automatic) g = (A.parity() == -1 && B.parity() == -1) ? Grading::plus : Grading::minus;
    return g == Grading::plus ? A * B + B * A : A * B - B * A;
}

}  // namespace kvn
