// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace kvn {

using cplx = std::complex<double>;
using Exponent = std::vector<int>;

// Polynomial in phi^1..phi^{2n} (internal ordering) with complex coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(int n) : n_(n) {}

    static Poly constant(int n, cplx c);
    static Poly var(int n, int a);  // phi^a, 1-based internal index
    static Poly monomial(int n, const Exponent& e, cplx c);
    // q, p, q1, p2, numbers, + - * / ^ and parentheses; x,y,z,px,py,pz when n=3.
    static Poly parse(const std::string& expr, int n);

    int n() const { return n_; }
    const std::map<Exponent, cplx>& terms() const { return t_; }
    bool is_zero(double tol = 0.0) const;
    int degree() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(cplx s) const;
    Poly& operator+=(const Poly& o);
    Poly pow(int k) const;

    Poly derivative(int a, int order = 1) const;
    Poly derivative(const Exponent& alpha) const;
    Poly conj() const;
    cplx eval(const std::vector<double>& phi) const;
    double max_abs() const;
    std::string str() const;

    void add_term(const Exponent& e, cplx c);

private:
    int n_ = 0;
    std::map<Exponent, cplx> t_;
};

inline Poly operator*(cplx s, const Poly& p) { return p * s; }

}  // namespace kvn
