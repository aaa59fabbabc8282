// SPDX-License-Identifier: Apache-2.0
#include "kvnlab/poly.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kvnlab/grassmann.hpp"

namespace kvn {

void Poly::add_term(const Exponent& e, cplx c) {
    if (c == cplx(0.0)) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == cplx(0.0)) t_.erase(it);
}

Poly Poly::constant(int n, cplx c) {
    Poly p(n);
    p.add_term(Exponent(2 * n, 0), c);
    return p;
}

Poly Poly::var(int n, int a) {
    if (a < 1 || a > 2 * n) throw std::out_of_range("variable index out of range");
    Exponent e(2 * n, 0);
    e[a - 1] = 1;
    return monomial(n, e, 1.0);
}

Poly Poly::monomial(int n, const Exponent& e, cplx c) {
    if (static_cast<int>(e.size()) != 2 * n) throw std::invalid_argument("exponent length mismatch");
    Poly p(n);
    p.add_term(e, c);
    return p;
}

bool Poly::is_zero(double tol) const {
    for (const auto& [e, c] : t_)
        if (std::abs(c) > tol) return false;
    return true;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}
Poly& Poly::operator+=(const Poly& o) {
    if (n_ == 0) n_ = o.n_;
    if (o.n_ != 0 && o.n_ != n_) throw std::invalid_argument("poly n mismatch");
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}
Poly Poly::operator-() const { return *this * cplx(-1.0); }
Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    int n = n_ ? n_ : o.n_;
    if (n_ && o.n_ && n_ != o.n_) throw std::invalid_argument("poly n mismatch");
    Poly r(n);
    for (const auto& [e1, c1] : t_)
        for (const auto& [e2, c2] : o.t_) {
            Exponent e(e1.size());
            for (size_t k = 0; k < e.size(); ++k) e[k] = e1[k] + e2[k];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Poly Poly::operator*(cplx s) const {
    Poly r(n_);
    if (s == cplx(0.0)) return r;
    for (const auto& [e, c] : t_) r.t_.emplace(e, c * s);
    return r;
}

Poly Poly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    Poly r = constant(n_, 1.0);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Poly Poly::derivative(int a, int order) const {
    Poly r(n_);
    for (const auto& [e, c] : t_) {
        int k = e[a - 1];
        if (k < order) continue;
        double f = 1.0;
        for (int j = 0; j < order; ++j) f *= (k - j);
        Exponent e2 = e;
        e2[a - 1] -= order;
        r.add_term(e2, c * f);
    }
    return r;
}

Poly Poly::derivative(const Exponent& alpha) const {
    Poly r = *this;
    for (size_t a = 0; a < alpha.size(); ++a)
        if (alpha[a]) r = r.derivative(static_cast<int>(a) + 1, alpha[a]);
    return r;
}

Poly Poly::conj() const {
    Poly r(n_);
    for (const auto& [e, c] : t_) r.t_.emplace(e, std::conj(c));
    return r;
}

cplx Poly::eval(const std::vector<double>& phi) const {
    cplx s = 0.0;
    for (const auto& [e, c] : t_) {
        double m = 1.0;
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k]) m *= std::pow(phi[k], e[k]);
        s += c * m;
    }
    return s;
}

double Poly::max_abs() const {
    double m = 0.0;
    for (const auto& [e, c] : t_) m = std::max(m, std::abs(c));
    return m;
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real();
        if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
        os << ")";
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k]) {
                os << "*" << index_label(static_cast<int>(k) + 1, n_);
                if (e[k] > 1) os << "^" << e[k];
            }
    }
    return os.str();
}

namespace {

// expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := '-' unary | power ; power := atom ('^' int)?
struct Parser {
    const std::string& s;
    int n;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial parse error at column " + std::to_string(i + 1) + ": " + what + " in '" + s + "'");
    }
    Poly expr() {
        Poly r = term();
        for (;;) {
            skip();
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                char op = s[i++];
                Poly t = term();
                r = op == '+' ? r + t : r - t;
            } else {
                return r;
            }
        }
    }
    Poly term() {
        Poly r = unary();
        for (;;) {
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                r = r * unary();
            } else if (i < s.size() && s[i] == '/') {
                ++i;
                Poly d = unary();
                if (d.degree() > 0 || d.terms().size() != 1) fail("division by a non-constant");
                r = r * (1.0 / d.terms().begin()->second);
            } else {
                return r;
            }
        }
    }
    Poly unary() {
        skip();
        if (i < s.size() && s[i] == '-') {
            ++i;
            return -unary();
        }
        if (i < s.size() && s[i] == '+') {
            ++i;
            return unary();
        }
        return power();
    }
    Poly power() {
        Poly b = atom();
        skip();
        if (i < s.size() && s[i] == '^') {
            ++i;
            skip();
            size_t j = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (j == i) fail("expected integer exponent");
            return b.pow(std::stoi(s.substr(j, i - j)));
        }
        return b;
    }
    Poly atom() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        if (s[i] == '(') {
            ++i;
            Poly r = expr();
            skip();
            if (i >= s.size() || s[i] != ')') fail("expected ')'");
            ++i;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.') {
            size_t used = 0;
            double v = std::stod(s.substr(i), &used);
            i += used;
            return Poly::constant(n, v);
        }
        if (s[i] == 'i' && (i + 1 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[i + 1])))) {
            ++i;
            return Poly::constant(n, cplx(0.0, 1.0));
        }
        size_t j = i;
        while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
        if (j == i) fail(std::string("unexpected '") + s[i] + "'");
        try {
            return Poly::var(n, parse_label(s.substr(j, i - j), n));
        } catch (const std::exception& e) {
            i = j;
            fail(e.what());
        }
    }
};

}  // namespace

Poly Poly::parse(const std::string& expr, int n) {
    Parser ps{expr, n};
    Poly r = ps.expr();
    ps.skip();
    if (ps.i != expr.size()) ps.fail("trailing input");
    if (r.n() == 0) r = Poly(n);
    return r;
}

}  // namespace kvn
