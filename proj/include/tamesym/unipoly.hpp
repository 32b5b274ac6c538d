#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tamesym/errors.hpp"

namespace tamesym {

// Univariate polynomial over a coefficient field F, ascending coefficients,
// canonical form: no trailing zeros (the zero polynomial has no coefficients).
// Every polynomial keeps a `unit` coefficient so that zeros and ones of the
// right field context can be produced even from the zero polynomial.
template <class F>
class UniPoly {
  public:
    UniPoly(std::string var, F unit) : var_(std::move(var)), unit_(std::move(unit)) {}

    UniPoly(std::string var, F unit, std::vector<F> coeffs)
        : var_(std::move(var)), unit_(std::move(unit)), c_(std::move(coeffs)) {
        normalize();
    }

    static UniPoly zero(const std::string& var, const F& unit) { return UniPoly(var, unit); }

    static UniPoly constant(const std::string& var, const F& value) {
        return UniPoly(var, value.one_like(), {value});
    }

    static UniPoly variable(const std::string& var, const F& unit) {
        return UniPoly(var, unit, {unit.zero_like(), unit});
    }

    static UniPoly monomial(const std::string& var, const F& coeff, int degree) {
        std::vector<F> c(degree + 1, coeff.zero_like());
        c[degree] = coeff;
        return UniPoly(var, coeff.one_like(), std::move(c));
    }

    const std::string& var() const { return var_; }
    const F& unit() const { return unit_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    bool is_constant() const { return c_.size() <= 1; }

    bool is_one() const { return c_.size() == 1 && c_[0] == unit_.one_like(); }

    const F& lc() const {
        if (c_.empty()) throw Error("leading coefficient of zero polynomial");
        return c_.back();
    }

    F coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return unit_.zero_like();
        return c_[i];
    }

    const std::vector<F>& coeffs() const { return c_; }

    F constant_term() const { return coeff(0); }

    UniPoly zero_like() const { return zero(var_, unit_); }
    UniPoly one_like() const { return constant(var_, unit_.one_like()); }

    bool operator==(const UniPoly& o) const { return var_ == o.var_ && c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    UniPoly operator+(const UniPoly& o) const {
        check_var(o);
        UniPoly r(var_, unit_);
        std::size_t m = std::max(c_.size(), o.c_.size());
        r.c_.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (i < c_.size() && i < o.c_.size()) r.c_.push_back(c_[i] + o.c_[i]);
            else if (i < c_.size()) r.c_.push_back(c_[i]);
            else r.c_.push_back(o.c_[i]);
        }
        r.normalize();
        return r;
    }

    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }

    UniPoly operator*(const UniPoly& o) const {
        check_var(o);
        if (is_zero() || o.is_zero()) return zero(var_, unit_);
        std::vector<F> r(c_.size() + o.c_.size() - 1, unit_.zero_like());
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
        return UniPoly(var_, unit_, std::move(r));
    }

    UniPoly scaled(const F& s) const {
        UniPoly r(var_, unit_);
        if (s.is_zero()) return r;
        r.c_.reserve(c_.size());
        for (const auto& x : c_) r.c_.push_back(x * s);
        r.normalize();
        return r;
    }

    UniPoly shifted_up(int k) const {
        // multiply by var^k
        if (is_zero()) return *this;
        std::vector<F> r(c_.size() + k, unit_.zero_like());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
        return UniPoly(var_, unit_, std::move(r));
    }

    UniPoly pow(long e) const {
        if (e < 0) throw Error("negative power of a polynomial");
        UniPoly acc = one_like();
        UniPoly base = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    F eval(const F& x) const {
        F acc = unit_.zero_like();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // Substitute another polynomial for the variable.
    UniPoly compose(const UniPoly& g) const {
        UniPoly acc = zero(g.var(), unit_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(g.var(), c_[i]);
        return acc;
    }

    UniPoly derivative() const {
        UniPoly r(var_, unit_);
        for (std::size_t i = 1; i < c_.size(); ++i) {
            F k = unit_.zero_like();
            for (std::size_t j = 0; j < i; ++j) k = k + unit_.one_like();
            r.c_.push_back(c_[i] * k);
        }
        r.normalize();
        return r;
    }

    UniPoly monic() const {
        if (is_zero()) throw Error("monic form of zero polynomial");
        return scaled(lc().inv());
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            std::string cs = c_[i].to_string();
            // Only strip a leading minus when the coefficient is a single term.
            bool strippable = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
            if (first) {
                first = false;
                if (strippable) { out += "-"; cs = cs.substr(1); }
            } else if (strippable) {
                out += " - ";
                cs = cs.substr(1);
            } else {
                out += " + ";
            }
            bool needs_parens = cs.find_first_of("+*/ ") != std::string::npos ||
                                cs.find('-', 1) != std::string::npos || (!cs.empty() && cs[0] == '-');
            if (i == 0) {
                out += needs_parens ? "(" + cs + ")" : cs;
            } else {
                if (cs != "1") {
                    out += needs_parens ? "(" + cs + ")" : cs;
                    out += "*";
                }
                out += var_;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    void check_var(const UniPoly& o) const {
        if (var_ != o.var_) throw Error("mixed variables: " + var_ + " vs " + o.var_);
    }

    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::string var_;
    F unit_;
    std::vector<F> c_;
};

// Division with remainder over a coefficient field.
template <class F>
void poly_divmod(const UniPoly<F>& a, const UniPoly<F>& b, UniPoly<F>& q, UniPoly<F>& r) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    q = a.zero_like();
    r = a;
    F lb = b.lc().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        F f = r.lc() * lb;
        int shift = r.degree() - b.degree();
        UniPoly<F> t = UniPoly<F>::monomial(a.var(), f, shift);
        q = q + t;
        r = r - t * b;
    }
}

template <class F>
std::pair<UniPoly<F>, UniPoly<F>> poly_divmod(const UniPoly<F>& a, const UniPoly<F>& b) {
    UniPoly<F> q = a.zero_like(), r = a.zero_like();
    poly_divmod(a, b, q, r);
    return {std::move(q), std::move(r)};
}

template <class F>
UniPoly<F> poly_mod(const UniPoly<F>& a, const UniPoly<F>& b) {
    UniPoly<F> q = a.zero_like(), r = a.zero_like();
    poly_divmod(a, b, q, r);
    return r;
}

template <class F>
UniPoly<F> poly_exact_div(const UniPoly<F>& a, const UniPoly<F>& b) {
    UniPoly<F> q = a.zero_like(), r = a.zero_like();
    poly_divmod(a, b, q, r);
    if (!r.is_zero()) throw Error("polynomial division with nonzero remainder");
    return q;
}

// Monic gcd via the Euclidean algorithm.
template <class F>
UniPoly<F> poly_gcd(UniPoly<F> a, UniPoly<F> b) {
    while (!b.is_zero()) {
        UniPoly<F> r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

// Multiplicity of the factor f in p (0 when f does not divide p).
template <class F>
int poly_multiplicity(const UniPoly<F>& p, const UniPoly<F>& f) {
    if (p.is_zero()) throw Error("multiplicity in zero polynomial");
    if (f.is_constant()) throw Error("multiplicity of constant factor");
    int count = 0;
    UniPoly<F> cur = p;
    for (;;) {
        UniPoly<F> q = cur.zero_like(), r = cur.zero_like();
        poly_divmod(cur, f, q, r);
        if (!r.is_zero()) return count;
        cur = std::move(q);
        ++count;
        if (cur.is_zero()) throw Error("multiplicity loop underflow");
    }
}

// Resultant of a and b via the Euclidean chain; degenerate degrees observe the
// usual conventions (Res(c, d) = 1 for constants, Res with a zero argument and
// a positive-degree partner is 0).
template <class F>
F poly_resultant(const UniPoly<F>& a, const UniPoly<F>& b) {
    if (a.is_zero() || b.is_zero()) return a.unit().zero_like();
    if (a.is_constant() && b.is_constant()) return a.unit().one_like();
    if (b.is_constant()) return b.lc().pow(a.degree());
    if (a.is_constant()) return a.lc().pow(b.degree());
    int m = a.degree(), n = b.degree();
    if (m < n) {
        F sign = ((static_cast<long>(m) * n) % 2 == 0) ? a.unit().one_like() : -a.unit().one_like();
        return sign * poly_resultant(b, a);
    }
    UniPoly<F> r = poly_mod(a, b);
    if (r.is_zero()) return a.unit().zero_like();
    F sign = ((static_cast<long>(m) * n) % 2 == 0) ? a.unit().one_like() : -a.unit().one_like();
    F scale = b.lc().pow(m - r.degree());
    return sign * scale * poly_resultant(b, r);
}

// Extended gcd: returns g (monic) and u, v with u*a + v*b = g.
template <class F>
UniPoly<F> poly_ext_gcd(const UniPoly<F>& a, const UniPoly<F>& b, UniPoly<F>& u, UniPoly<F>& v) {
    UniPoly<F> r0 = a, r1 = b;
    UniPoly<F> s0 = a.one_like(), s1 = a.zero_like();
    UniPoly<F> t0 = a.zero_like(), t1 = a.one_like();
    while (!r1.is_zero()) {
        UniPoly<F> q = a.zero_like(), r = a.zero_like();
        poly_divmod(r0, r1, q, r);
        UniPoly<F> s2 = s0 - q * s1;
        UniPoly<F> t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) { u = s0; v = t0; return r0; }
    F scale = r0.lc().inv();
    u = s0.scaled(scale);
    v = t0.scaled(scale);
    return r0.scaled(scale);
}

template <class F>
std::tuple<UniPoly<F>, UniPoly<F>, UniPoly<F>> poly_ext_gcd(const UniPoly<F>& a,
                                                            const UniPoly<F>& b) {
    UniPoly<F> u = a.zero_like(), v = a.zero_like();
    UniPoly<F> g = poly_ext_gcd(a, b, u, v);
    return {std::move(g), std::move(u), std::move(v)};
}

} // namespace tamesym
