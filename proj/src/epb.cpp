// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/epb.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "kvnlab/cartan.hpp"

namespace kvn {

namespace {

const cplx I(0.0, 1.0);

// sort in place, return permutation sign, 0 on repeated index
int sort_sign(std::vector<int>& v) {
    int inv = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] == v[j]) return 0;
            if (v[i] > v[j]) ++inv;
        }
    std::sort(v.begin(), v.end());
    return inv % 2 ? -1 : 1;
}

double poly_distance(const Poly& a, const Poly& b) { return (a - b).max_abs(); }

}  // namespace

TensorSpec TensorSpec::vector_field(const std::vector<Poly>& V) {
    const int n = static_cast<int>(V.size()) / 2;
    TensorSpec t = multivector(n, 1);
    for (int a = 1; a <= 2 * n; ++a)
        if (!V[a - 1].terms().empty()) t.set({a}, V[a - 1]);
    return t;
}

TensorSpec& TensorSpec::set(const std::vector<int>& idx, const Poly& v) {
    const size_t want = rank + (kind == TensorKind::vvform ? 1 : 0);
    if (idx.size() != want) throw std::invalid_argument("tensor index tuple has wrong length");
    for (int a : idx)
        if (a < 1 || a > 2 * n) throw std::out_of_range("tensor index out of range");
    comps[idx] = v.n() ? v : Poly(n);
    return *this;
}

TensorSpec TensorSpec::canonical() const {
    TensorSpec r{kind, n, rank, {}};
    const size_t off = kind == TensorKind::vvform ? 1 : 0;
    for (const auto& [idx, v] : comps) {
        std::vector<int> lower(idx.begin() + off, idx.end());
        int s = sort_sign(lower);
        if (s == 0) {
            if (!v.is_zero(1e-14)) throw std::invalid_argument("non-antisymmetric tensor: repeated index with nonzero value");
            continue;
        }
        std::vector<int> key(idx.begin(), idx.begin() + off);
        key.insert(key.end(), lower.begin(), lower.end());
        Poly sv = v * cplx(double(s));
        auto it = r.comps.find(key);
        if (it == r.comps.end()) {
            r.comps.emplace(key, sv);
        } else if (poly_distance(it->second, sv) > 1e-12) {
            throw std::invalid_argument("non-antisymmetric tensor: inconsistent components");
        }
    }
    for (auto it = r.comps.begin(); it != r.comps.end();)
        it = it->second.is_zero(0.0) ? r.comps.erase(it) : std::next(it);
    return r;
}

Poly TensorSpec::get(const std::vector<int>& idx) const {
    TensorSpec c = canonical();
    const size_t off = kind == TensorKind::vvform ? 1 : 0;
    std::vector<int> lower(idx.begin() + off, idx.end());
    int s = sort_sign(lower);
    if (s == 0) return Poly(n);
    std::vector<int> key(idx.begin(), idx.begin() + off);
    key.insert(key.end(), lower.begin(), lower.end());
    auto it = c.comps.find(key);
    return it == c.comps.end() ? Poly(n) : it->second * cplx(double(s));
}

double TensorSpec::distance(const TensorSpec& o) const {
    if (kind != o.kind || n != o.n) return 1e300;
    TensorSpec a = canonical(), b = o.canonical();
    if (rank != o.rank && !(a.comps.empty() && b.comps.empty())) return 1e300;
    double d = 0.0;
    for (const auto& [k, v] : a.comps) {
        auto it = b.comps.find(k);
        d = std::max(d, it == b.comps.end() ? v.max_abs() : poly_distance(v, it->second));
    }
    for (const auto& [k, v] : b.comps)
        if (!a.comps.count(k)) d = std::max(d, v.max_abs());
    return d;
}

SuperPoly hat(const TensorSpec& T) {
    TensorSpec c = T.canonical();
    SuperPoly r(T.n);
    for (const auto& [key, v] : c.comps) {
        SuperPoly word = SuperPoly::constant(T.n, 1.0);
        switch (T.kind) {
            case TensorKind::form:
                for (int a : key) word = word * SuperPoly::c(T.n, a);
                break;
            case TensorKind::multivector:
                for (int a : key) word = word * SuperPoly::cbar(T.n, a);
                break;
            case TensorKind::vvform:
                for (size_t k = 1; k < key.size(); ++k) word = word * SuperPoly::c(T.n, key[k]);
                word = word * SuperPoly::cbar(T.n, key[0]);
                break;
        }
        r += SuperPoly::from_poly(v) * word;
    }
    return r;
}

TensorSpec unhat(const SuperPoly& F, std::optional<TensorKind> hint) {
    const int n = F.n() ? F.n() : 1;
    if (F.has_lambda() || F.has_theta()) throw std::invalid_argument("unhat: input contains lambda or theta");
    const std::uint64_t cmask = ((std::uint64_t(1) << (2 * n)) - 1) << 2;
    const std::uint64_t bmask = cmask << (2 * n);
    bool all_nb0 = true, all_nc0 = true, all_nb1 = true;
    std::set<int> crank, brank;
    for (const auto& [k, v] : F.terms()) {
        int nc = std::popcount(k.odd & cmask), nb = std::popcount(k.odd & bmask);
        all_nb0 &= nb == 0;
        all_nc0 &= nc == 0;
        all_nb1 &= nb == 1;
        crank.insert(nc);
        brank.insert(nb);
    }
    TensorKind kind;
    if (hint) kind = *hint;
    else if (all_nb0) kind = TensorKind::form;
    else if (all_nc0) kind = TensorKind::multivector;
    else kind = TensorKind::vvform;
    int rank = 0;
    switch (kind) {
        case TensorKind::form:
            if (!all_nb0 || crank.size() > 1) throw std::invalid_argument("unhat: not a homogeneous form");
            rank = crank.empty() ? 0 : *crank.begin();
            break;
        case TensorKind::multivector:
            if (!all_nc0 || brank.size() > 1) throw std::invalid_argument("unhat: not a homogeneous multivector");
            rank = brank.empty() ? 0 : *brank.begin();
            break;
        case TensorKind::vvform:
            if (!all_nb1 || crank.size() > 1) throw std::invalid_argument("unhat: not a homogeneous vector-valued form");
            rank = crank.empty() ? 0 : *crank.begin();
            break;
    }
    TensorSpec t{kind, n, rank, {}};
    for (const auto& [k, v] : F.terms()) {
        std::vector<int> cs, bs;
        for (std::uint64_t w = k.odd; w; w &= w - 1) {
            int s = std::countr_zero(w);
            if (s < 2 + 2 * n) cs.push_back(s - 1);
            else bs.push_back(s - 1 - 2 * n);
        }
        std::vector<int> key;
        if (kind == TensorKind::form) key = cs;
        else if (kind == TensorKind::multivector) key = bs;
        else {
            key.push_back(bs.at(0));
            key.insert(key.end(), cs.begin(), cs.end());
        }
        auto it = t.comps.find(key);
        if (it == t.comps.end()) it = t.comps.emplace(key, Poly(n)).first;
        it->second.add_term(k.phi, v);
    }
    return t;
}

SuperPoly Q_sp(int n) {
    SuperPoly r(n);
    for (int a = 1; a <= 2 * n; ++a) r += SuperPoly::c(n, a) * SuperPoly::lam(n, a) * I;
    return r;
}

SuperPoly Qbar_sp(int n) {
    Eigen::MatrixXd w = omega_upper(n);
    SuperPoly r(n);
    for (int a = 1; a <= 2 * n; ++a)
        for (int b = 1; b <= 2 * n; ++b)
            if (w(a - 1, b - 1) != 0.0) r += SuperPoly::cbar(n, a) * SuperPoly::lam(n, b) * (I * w(a - 1, b - 1));
    return r;
}

SuperPoly Qf_sp(int n) {
    SuperPoly r(n);
    for (int a = 1; a <= 2 * n; ++a) r += SuperPoly::c(n, a) * SuperPoly::cbar(n, a);
    return r;
}

SuperPoly K_sp(int n) {
    Eigen::MatrixXd w = omega_lower(n);
    SuperPoly r(n);
    for (int a = 1; a <= 2 * n; ++a)
        for (int b = 1; b <= 2 * n; ++b)
            if (w(a - 1, b - 1) != 0.0) r += SuperPoly::c(n, a) * SuperPoly::c(n, b) * cplx(0.5 * w(a - 1, b - 1));
    return r;
}

SuperPoly Kbar_sp(int n) {
    Eigen::MatrixXd w = omega_upper(n);
    SuperPoly r(n);
    for (int a = 1; a <= 2 * n; ++a)
        for (int b = 1; b <= 2 * n; ++b)
            if (w(a - 1, b - 1) != 0.0) r += SuperPoly::cbar(n, a) * SuperPoly::cbar(n, b) * cplx(0.5 * w(a - 1, b - 1));
    return r;
}

SuperPoly cpi_hamiltonian(const Poly& H) {
    const int n = H.n();
    Eigen::MatrixXd w = omega_upper(n);
    SuperPoly r(n);
    for (int a = 1; a <= 2 * n; ++a)
        for (int b = 1; b <= 2 * n; ++b) {
            if (w(a - 1, b - 1) == 0.0) continue;
            r += SuperPoly::lam(n, a) * SuperPoly::from_poly(H.derivative(b)) * cplx(w(a - 1, b - 1));
            for (int d = 1; d <= 2 * n; ++d) {
                Poly h2 = H.derivative(b).derivative(d);
                if (h2.terms().empty()) continue;
                r += SuperPoly::cbar(n, a) * SuperPoly::from_poly(h2) * SuperPoly::c(n, d) * (I * w(a - 1, b - 1));
            }
        }
    return r;
}

SuperPoly lie_generator(const std::vector<Poly>& V) {
    const int n = static_cast<int>(V.size()) / 2;
    SuperPoly r(n);
    for (int a = 1; a <= 2 * n; ++a) {
        if (V[a - 1].terms().empty()) continue;
        r += SuperPoly::lam(n, a) * SuperPoly::from_poly(V[a - 1]);
        for (int b = 1; b <= 2 * n; ++b) {
            Poly dv = V[a - 1].derivative(b);
            if (dv.terms().empty()) continue;
            r += SuperPoly::cbar(n, a) * SuperPoly::from_poly(dv) * SuperPoly::c(n, b) * I;
        }
    }
    return r;
}

CartanOp parse_cartan_op(const std::string& s) {
    if (s == "d") return CartanOp::d;
    if (s == "iota") return CartanOp::iota;
    if (s == "lie") return CartanOp::lie;
    if (s == "sharp") return CartanOp::sharp;
    if (s == "flat") return CartanOp::flat;
    if (s == "pb") return CartanOp::pb;
    throw std::invalid_argument("unknown Cartan operation '" + s + "'");
}

SuperPoly cartan_via_epb(CartanOp op, const SuperPoly& arg, const SuperPoly& arg2) {
    const int n = arg.n() ? arg.n() : arg2.n();
    if (n == 0) throw std::invalid_argument("cartan_via_epb: cannot infer n");
    switch (op) {
        case CartanOp::d: return epb(Q_sp(n), arg) * I;
        case CartanOp::iota: return epb(arg2, arg) * I;
        case CartanOp::lie: return epb(-epb(Q_sp(n), arg2), arg);
        case CartanOp::sharp: return epb(Kbar_sp(n), arg) * I;
        case CartanOp::flat: return epb(K_sp(n), arg) * I;
        case CartanOp::pb: return epb(epb(arg, Q_sp(n)), epb(Qbar_sp(n), arg2)) * I;
    }
    throw std::invalid_argument("malformed Cartan operation");
}

SuperPoly cartan_iota(const std::vector<Poly>& V, const SuperPoly& F) {
    return cartan_via_epb(CartanOp::iota, F, hat(TensorSpec::vector_field(V)));
}

SuperPoly cartan_lie(const std::vector<Poly>& V, const SuperPoly& F) { return epb(-lie_generator(V), F); }

SuperPoly lie_bracket_epb(const std::vector<Poly>& V, const std::vector<Poly>& W) {
    return epb(-lie_generator(V), hat(TensorSpec::vector_field(W)));
}

std::vector<Poly> lie_bracket_coords(const std::vector<Poly>& V, const std::vector<Poly>& W) {
    const int n = static_cast<int>(V.size()) / 2;
    std::vector<Poly> r(2 * n, Poly(n));
    for (int a = 1; a <= 2 * n; ++a)
        for (int b = 1; b <= 2 * n; ++b) r[a - 1] += V[b - 1] * W[a - 1].derivative(b) - W[b - 1] * V[a - 1].derivative(b);
    return r;
}

SuperPoly sn_bracket(const TensorSpec& P, const TensorSpec& R) {
    if (P.kind != TensorKind::multivector || R.kind != TensorKind::multivector)
        throw std::invalid_argument("SN bracket needs two multivectors");
    return -epb(epb(Q_sp(P.n), hat(P)), hat(R));
}

SuperPoly fn_generator(const SuperPoly& Jhat) { return epb(Jhat, Q_sp(Jhat.n())); }

SuperPoly fn_bracket(const TensorSpec& J, const TensorSpec& L) {
    if (J.kind != TensorKind::vvform || L.kind != TensorKind::vvform)
        throw std::invalid_argument("FN bracket needs vector-valued forms");
    return -epb(fn_generator(hat(J)), hat(L));
}

SuperPoly nr_bracket(const TensorSpec& J, const TensorSpec& L) {
    if (J.kind != TensorKind::vvform || L.kind != TensorKind::vvform)
        throw std::invalid_argument("NR bracket needs vector-valued forms");
    return epb(hat(J), hat(L)) * I;
}

SuperPoly superfield(int n, int a) {
    Eigen::MatrixXd w = omega_upper(n);
    SuperPoly th = SuperPoly::theta(n), tb = SuperPoly::thetabar(n);
    SuperPoly r = SuperPoly::phi(n, a) + th * SuperPoly::c(n, a);
    for (int b = 1; b <= 2 * n; ++b) {
        if (w(a - 1, b - 1) == 0.0) continue;
        r += tb * SuperPoly::cbar(n, b) * cplx(w(a - 1, b - 1));
        r += tb * th * SuperPoly::lam(n, b) * (I * w(a - 1, b - 1));
    }
    return r;
}

SuperPoly substitute(const Poly& H, const std::vector<SuperPoly>& fields) {
    const int n = H.n();
    if (static_cast<int>(fields.size()) != 2 * n) throw std::invalid_argument("substitute: need 2n fields");
    SuperPoly r(n);
    for (const auto& [e, c] : H.terms()) {
        SuperPoly m = SuperPoly::constant(n, c);
        for (int a = 0; a < 2 * n; ++a)
            for (int k = 0; k < e[a]; ++k) m = m * fields[a];
        r += m;
    }
    return r;
}

SuperPoly berezin(const SuperPoly& F) {
    // theta thetabar X  ->  -X
    SuperPoly r(F.n());
    for (const auto& [k, v] : F.terms()) {
        if ((k.odd & 3u) != 3u) continue;
        SuperKey k2 = k;
        k2.odd &= ~std::uint64_t(3);
        r.add_term(k2, -v);
    }
    return r;
}

SuperfieldExpansion superfield_expand(const Poly& H) {
    const int n = H.n();
    std::vector<SuperPoly> Phi;
    for (int a = 1; a <= 2 * n; ++a) Phi.push_back(superfield(n, a));
    SuperfieldExpansion e;
    e.full = substitute(H, Phi);
    e.H0 = SuperPoly(n);
    e.N = SuperPoly(n);
    e.Nbar = SuperPoly(n);
    for (const auto& [k, v] : e.full.terms()) {
        SuperKey k2 = k;
        k2.odd &= ~std::uint64_t(3);
        switch (k.odd & 3u) {
            case 0: e.H0.add_term(k, v); break;
            case 1: e.N.add_term(k2, v); break;        // theta X
            case 2: e.Nbar.add_term(k2, -v); break;    // -thetabar Nbar
            default: break;
        }
    }
    e.Hcal = berezin(e.full) * I;
    return e;
}

}  // namespace kvn
