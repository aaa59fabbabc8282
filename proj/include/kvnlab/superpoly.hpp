// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kvnlab/poly.hpp"

namespace kvn {

// Odd alphabet, in canonical order: theta, thetabar, c^1..c^{2n}, cbar_1..cbar_{2n}.
struct OddSymbol {
    static int theta() { return 0; }
    static int thetabar() { return 1; }
    static int c(int n, int a) { return 1 + a + 0 * n; }
    static int cbar(int n, int a) { return 1 + 2 * n + a; }
};

struct SuperKey {
    Exponent phi, lam;
    std::uint64_t odd = 0;
    auto operator<=>(const SuperKey&) const = default;
};

// Polynomial in commuting phi, lambda and anticommuting theta, thetabar, c, cbar.
class SuperPoly {
public:
    SuperPoly() = default;
    explicit SuperPoly(int n) : n_(n) {}

    static SuperPoly constant(int n, cplx v);
    static SuperPoly from_poly(const Poly& p);
    static SuperPoly phi(int n, int a);
    static SuperPoly lam(int n, int a);
    static SuperPoly c(int n, int a);
    static SuperPoly cbar(int n, int a);
    static SuperPoly theta(int n);
    static SuperPoly thetabar(int n);
    static SuperPoly odd(int n, int symbol);

    int n() const { return n_; }
    const std::map<SuperKey, cplx>& terms() const { return t_; }
    void add_term(const SuperKey& k, cplx v);

    SuperPoly operator+(const SuperPoly& o) const;
    SuperPoly operator-(const SuperPoly& o) const;
    SuperPoly operator-() const { return *this * cplx(-1.0); }
    SuperPoly operator*(const SuperPoly& o) const;
    SuperPoly operator*(cplx s) const;
    SuperPoly& operator+=(const SuperPoly& o);

    SuperPoly d_phi(int a) const;
    SuperPoly d_lam(int a) const;
    SuperPoly d_left(int symbol) const;
    SuperPoly d_right(int symbol) const;

    // +1 even, -1 odd, 0 mixed or zero
    int parity() const;
    bool is_zero(double tol = 1e-12) const { return max_abs() <= tol; }
    double max_abs() const;
    bool has_lambda() const;
    bool has_theta() const;
    std::string str() const;

private:
    int n_ = 0;
    std::map<SuperKey, cplx> t_;
};

inline SuperPoly operator*(cplx s, const SuperPoly& p) { return p * s; }

// Extended Poisson bracket: {phi^a, lambda_b} = delta, {cbar_a, c^b} = -i delta.
SuperPoly epb(const SuperPoly& F, const SuperPoly& G);

}  // namespace kvn
