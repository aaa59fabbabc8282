// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/superpoly.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "kvnlab/grassmann.hpp"

namespace kvn {

namespace {

inline int ones(std::uint64_t w) { return std::popcount(w); }

SuperKey zero_key(int n) { return {Exponent(2 * n, 0), Exponent(2 * n, 0), 0}; }

std::string odd_name(int n, int s) {
    if (s == 0) return "th";
    if (s == 1) return "thb";
    if (s <= 1 + 2 * n) return "c^" + index_label(s - 1, n);
    return "cb_" + index_label(s - 1 - 2 * n, n);
}

}  // namespace

void SuperPoly::add_term(const SuperKey& k, cplx v) {
    if (v == cplx(0.0)) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, v);
        return;
    }
    it->second += v;
    if (std::abs(it->second) < 1e-15) t_.erase(it);
}

SuperPoly SuperPoly::constant(int n, cplx v) {
    SuperPoly r(n);
    r.add_term(zero_key(n), v);
    return r;
}

SuperPoly SuperPoly::from_poly(const Poly& p) {
    SuperPoly r(p.n());
    for (const auto& [e, c] : p.terms()) r.add_term({e, Exponent(2 * p.n(), 0), 0}, c);
    return r;
}

SuperPoly SuperPoly::phi(int n, int a) {
    SuperKey k = zero_key(n);
    k.phi.at(a - 1) = 1;
    SuperPoly r(n);
    r.add_term(k, 1.0);
    return r;
}

SuperPoly SuperPoly::lam(int n, int a) {
    SuperKey k = zero_key(n);
    k.lam.at(a - 1) = 1;
    SuperPoly r(n);
    r.add_term(k, 1.0);
    return r;
}

SuperPoly SuperPoly::odd(int n, int symbol) {
    if (symbol < 0 || symbol >= 2 + 4 * n) throw std::out_of_range("odd symbol out of range");
    if (2 + 4 * n > 64) throw std::length_error("n too large for the odd alphabet");
    SuperKey k = zero_key(n);
    k.odd = std::uint64_t(1) << symbol;
    SuperPoly r(n);
    r.add_term(k, 1.0);
    return r;
}

SuperPoly SuperPoly::c(int n, int a) {
    if (a < 1 || a > 2 * n) throw std::out_of_range("c index out of range");
    return odd(n, OddSymbol::c(n, a));
}
SuperPoly SuperPoly::cbar(int n, int a) {
    if (a < 1 || a > 2 * n) throw std::out_of_range("cbar index out of range");
    return odd(n, OddSymbol::cbar(n, a));
}
SuperPoly SuperPoly::theta(int n) { return odd(n, OddSymbol::theta()); }
SuperPoly SuperPoly::thetabar(int n) { return odd(n, OddSymbol::thetabar()); }

SuperPoly& SuperPoly::operator+=(const SuperPoly& o) {
    if (n_ == 0) n_ = o.n_;
    if (o.n_ && o.n_ != n_) throw std::invalid_argument("SuperPoly n mismatch");
    for (const auto& [k, v] : o.t_) add_term(k, v);
    return *this;
}
SuperPoly SuperPoly::operator+(const SuperPoly& o) const {
    SuperPoly r = *this;
    r += o;
    return r;
}
SuperPoly SuperPoly::operator-(const SuperPoly& o) const { return *this + (-o); }

SuperPoly SuperPoly::operator*(cplx s) const {
    SuperPoly r(n_);
    if (s == cplx(0.0)) return r;
    for (const auto& [k, v] : t_) r.t_.emplace(k, v * s);
    return r;
}

SuperPoly SuperPoly::operator*(const SuperPoly& o) const {
    if (n_ && o.n_ && n_ != o.n_) throw std::invalid_argument("SuperPoly n mismatch");
    SuperPoly r(n_ ? n_ : o.n_);
    for (const auto& [k1, v1] : t_)
        for (const auto& [k2, v2] : o.t_) {
            if (k1.odd & k2.odd) continue;
            // sign of merging w1 w2 into ascending order
            int swaps = 0;
            for (std::uint64_t w = k2.odd; w; w &= w - 1) {
                int j = std::countr_zero(w);
                swaps += ones(k1.odd >> (j + 1));
            }
            SuperKey k{k1.phi, k1.lam, k1.odd | k2.odd};
            for (size_t a = 0; a < k.phi.size(); ++a) {
                k.phi[a] += k2.phi[a];
                k.lam[a] += k2.lam[a];
            }
            r.add_term(k, (swaps % 2 ? -1.0 : 1.0) * v1 * v2);
        }
    return r;
}

SuperPoly SuperPoly::d_phi(int a) const {
    SuperPoly r(n_);
    for (const auto& [k, v] : t_) {
        int e = k.phi[a - 1];
        if (!e) continue;
        SuperKey k2 = k;
        --k2.phi[a - 1];
        r.add_term(k2, v * double(e));
    }
    return r;
}

SuperPoly SuperPoly::d_lam(int a) const {
    SuperPoly r(n_);
    for (const auto& [k, v] : t_) {
        int e = k.lam[a - 1];
        if (!e) continue;
        SuperKey k2 = k;
        --k2.lam[a - 1];
        r.add_term(k2, v * double(e));
    }
    return r;
}

SuperPoly SuperPoly::d_left(int s) const {
    SuperPoly r(n_);
    const std::uint64_t b = std::uint64_t(1) << s;
    for (const auto& [k, v] : t_) {
        if (!(k.odd & b)) continue;
        int before = ones(k.odd & (b - 1));
        SuperKey k2 = k;
        k2.odd &= ~b;
        r.add_term(k2, before % 2 ? -v : v);
    }
    return r;
}

SuperPoly SuperPoly::d_right(int s) const {
    SuperPoly r(n_);
    const std::uint64_t b = std::uint64_t(1) << s;
    for (const auto& [k, v] : t_) {
        if (!(k.odd & b)) continue;
        int after = ones(k.odd >> (s + 1));
        SuperKey k2 = k;
        k2.odd &= ~b;
        r.add_term(k2, after % 2 ? -v : v);
    }
    return r;
}

int SuperPoly::parity() const {
    bool even = false, odd = false;
    for (const auto& [k, v] : t_) (ones(k.odd) % 2 ? odd : even) = true;
    if (even == odd) return 0;
    return odd ? -1 : 1;
}

double SuperPoly::max_abs() const {
    double m = 0.0;
    for (const auto& [k, v] : t_) m = std::max(m, std::abs(v));
    return m;
}

bool SuperPoly::has_lambda() const {
    for (const auto& [k, v] : t_)
        for (int e : k.lam)
            if (e) return true;
    return false;
}

bool SuperPoly::has_theta() const {
    for (const auto& [k, v] : t_)
        if (k.odd & 3u) return true;
    return false;
}

std::string SuperPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.real();
        if (v.imag() != 0.0) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
        os << ")";
        for (size_t a = 0; a < k.phi.size(); ++a)
            if (k.phi[a]) os << "*" << index_label(int(a) + 1, n_) << (k.phi[a] > 1 ? "^" + std::to_string(k.phi[a]) : "");
        for (size_t a = 0; a < k.lam.size(); ++a)
            if (k.lam[a]) os << "*lam_" << index_label(int(a) + 1, n_) << (k.lam[a] > 1 ? "^" + std::to_string(k.lam[a]) : "");
        for (std::uint64_t w = k.odd; w; w &= w - 1) os << "*" << odd_name(n_, std::countr_zero(w));
    }
    return os.str();
}

SuperPoly epb(const SuperPoly& F, const SuperPoly& G) {
    if (F.n() && G.n() && F.n() != G.n()) throw std::invalid_argument("epb: mixed n");
    const int n = F.n() ? F.n() : G.n();
    SuperPoly r(n);
    for (int a = 1; a <= 2 * n; ++a) {
        r += F.d_phi(a) * G.d_lam(a);
        r += (F.d_lam(a) * G.d_phi(a)) * cplx(-1.0);
    }
    const cplx mi(0.0, -1.0);
    for (int a = 1; a <= 2 * n; ++a) {
        int c = OddSymbol::c(n, a), cb = OddSymbol::cbar(n, a);
        r += (F.d_right(cb) * G.d_left(c)) * mi;
        r += (F.d_right(c) * G.d_left(cb)) * mi;
    }
    return r;
}

}  // namespace kvn
