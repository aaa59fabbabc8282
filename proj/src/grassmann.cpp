// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/grassmann.hpp"

#include <atomic>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace kvn {

namespace {
std::atomic<int> g_nmax{6};

void check_index(int n, int a) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (n > n_max()) throw std::length_error("n=" + std::to_string(n) + " exceeds n_max=" + std::to_string(n_max()));
    if (a < 1 || a > 2 * n) throw std::out_of_range("sector index " + std::to_string(a) + " outside 1.." + std::to_string(2 * n));
}

inline unsigned bit_of(int n, int a) { return 1u << (2 * n - a); }
}  // namespace

int n_max() { return g_nmax.load(); }
void set_n_max(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("n_max must lie in 1..12");
    g_nmax.store(n);
}

int parse_label(const std::string& label, int n) {
    if (n == 3) {
        static const char* xyz[] = {"x", "y", "z"};
        for (int i = 0; i < 3; ++i) {
            if (label == xyz[i]) return q_index(i + 1);
            if (label == std::string("p") + xyz[i]) return p_index(i + 1);
        }
    }
    if (label.empty() || (label[0] != 'q' && label[0] != 'p'))
        throw std::invalid_argument("bad sector label '" + label + "'");
    int i = 1;
    if (label.size() > 1) {
        for (size_t k = 1; k < label.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(label[k]))) throw std::invalid_argument("bad sector label '" + label + "'");
        i = std::stoi(label.substr(1));
    }
    if (i < 1 || i > n) throw std::out_of_range("label '" + label + "' outside n=" + std::to_string(n));
    return label[0] == 'q' ? q_index(i) : p_index(i);
}

std::string index_label(int a, int n) {
    int i = (a + 1) / 2;
    std::string s = (a % 2 == 0) ? "q" : "p";
    if (n == 3) {
        const std::string xyz[3] = {"x", "y", "z"};
        return (a % 2 == 0 ? "" : "p") + xyz[i - 1];
    }
    return n == 1 ? s : s + std::to_string(i);
}

SectorOperator SectorOperator::operator*(const SectorOperator& o) const {
    if (n != o.n) throw std::invalid_argument("sector dimension mismatch");
    SpMat r = m * o.m;
    r.prune(cplx(0.0));
    return {n, r};
}
SectorOperator SectorOperator::operator+(const SectorOperator& o) const {
    if (n != o.n) throw std::invalid_argument("sector dimension mismatch");
    SpMat r = m + o.m;
    r.prune(cplx(0.0));
    return {n, r};
}
SectorOperator SectorOperator::operator-(const SectorOperator& o) const {
    if (n != o.n) throw std::invalid_argument("sector dimension mismatch");
    SpMat r = m - o.m;
    r.prune(cplx(0.0));
    return {n, r};
}
SectorOperator SectorOperator::operator*(cplx s) const { return {n, SpMat(m * s)}; }
SectorOperator SectorOperator::adjoint() const { return {n, SpMat(m.adjoint())}; }

SectorOperator identity_op(int n) {
    check_index(n, 1);
    const int d = 1 << (2 * n);
    SpMat I(d, d);
    I.setIdentity();
    return {n, I};
}

SectorOperator build_c(int n, int a) {
    check_index(n, a);
    const int d = 1 << (2 * n);
    const unsigned b = bit_of(n, a);
    std::vector<Eigen::Triplet<cplx>> t;
    t.reserve(d / 2);
    for (int s = 0; s < d; ++s) {
        if (s & b) continue;
        // sigma_z on every factor to the left of a
        int before = std::popcount(static_cast<unsigned>(s) >> (2 * n - a + 1));
        t.emplace_back(s | b, s, (before & 1) ? -1.0 : 1.0);
    }
    SpMat m(d, d);
    m.setFromTriplets(t.begin(), t.end());
    return {n, m};
}

SectorOperator build_cbar(int n, int a) {
    SectorOperator c = build_c(n, a);
    return {n, SpMat(c.m.transpose())};
}

SectorOperator anticommutator(const SectorOperator& A, const SectorOperator& B) { return A * B + B * A; }
SectorOperator commutator(const SectorOperator& A, const SectorOperator& B) { return A * B - B * A; }

SectorOperator number_operator(int n, int a) { return build_c(n, a) * build_cbar(n, a); }

SectorOperator form_number(int n) {
    SectorOperator r{n, SpMat(1 << (2 * n), 1 << (2 * n))};
    for (int a = 1; a <= 2 * n; ++a) r = r + number_operator(n, a);
    return r;
}

std::vector<int> basis_word(int n, int index) {
    std::vector<int> w;
    for (int a = 1; a <= 2 * n; ++a)
        if (index & bit_of(n, a)) w.push_back(a);
    return w;
}

int basis_index(int n, const std::vector<int>& ascending) {
    int s = 0;
    for (int a : ascending) {
        check_index(n, a);
        s |= bit_of(n, a);
    }
    return s;
}

int basis_degree(int, int index) { return std::popcount(static_cast<unsigned>(index)); }

std::vector<int> degree_indices(int n, int p) {
    if (p < 0 || p > 2 * n) throw std::out_of_range("form degree out of range");
    std::vector<int> r;
    for (int s = 0; s < (1 << (2 * n)); ++s)
        if (basis_degree(n, s) == p) r.push_back(s);
    return r;
}

std::vector<FormComponent> form_components(const Vec& v, int n, int p, double tol) {
    if (v.size() != (1 << (2 * n))) throw std::invalid_argument("vector length is not 2^{2n}");
    std::vector<FormComponent> r;
    for (int s : degree_indices(n, p))
        if (std::abs(v[s]) > tol) r.push_back({basis_word(n, s), v[s]});
    return r;
}

double max_abs(const SpMat& m) {
    double r = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
    return r;
}

}  // namespace kvn
