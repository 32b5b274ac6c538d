#pragma once

#include <string>

#include "tamesym/unipoly.hpp"

namespace tamesym {

// Rational function num/den over a coefficient field F, canonical form:
// gcd(num, den) = 1 and den monic. Equality is therefore syntactic.
template <class F>
class RatFunc {
  public:
    explicit RatFunc(const UniPoly<F>& num) : num_(num), den_(num.one_like()) {}

    RatFunc(UniPoly<F> num, UniPoly<F> den) : num_(std::move(num)), den_(std::move(den)) {
        reduce();
    }

    static RatFunc zero(const std::string& var, const F& unit) {
        return RatFunc(UniPoly<F>::zero(var, unit));
    }

    static RatFunc one(const std::string& var, const F& unit) {
        return RatFunc(UniPoly<F>::constant(var, unit.one_like()));
    }

    static RatFunc constant(const std::string& var, const F& value) {
        return RatFunc(UniPoly<F>::constant(var, value));
    }

    static RatFunc variable(const std::string& var, const F& unit) {
        return RatFunc(UniPoly<F>::variable(var, unit));
    }

    const UniPoly<F>& num() const { return num_; }
    const UniPoly<F>& den() const { return den_; }
    const std::string& var() const { return num_.var(); }
    const F& unit() const { return num_.unit(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    // Throws unless is_constant().
    F constant_value() const {
        if (!is_constant()) throw Error("rational function is not constant");
        return num_.constant_term();
    }

    RatFunc zero_like() const { return zero(var(), unit()); }
    RatFunc one_like() const { return one(var(), unit()); }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }

    RatFunc operator*(const RatFunc& o) const {
        return RatFunc(num_ * o.num_, den_ * o.den_);
    }

    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw Error("division by zero rational function");
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }

    RatFunc inv() const {
        if (is_zero()) throw Error("inverse of zero rational function");
        return RatFunc(den_, num_);
    }

    RatFunc pow(long e) const {
        if (e == 0) return one_like();
        if (e < 0) return inv().pow(-e);
        return RatFunc(num_.pow(e), den_.pow(e));
    }

    // Evaluate at a field point; throws if the denominator vanishes there.
    F eval(const F& x) const {
        F d = den_.eval(x);
        if (d.is_zero()) throw Error("evaluation at a pole");
        return num_.eval(x) * d.inv();
    }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

  private:
    void reduce() {
        if (den_.is_zero()) throw Error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = num_.one_like();
            return;
        }
        UniPoly<F> g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = poly_exact_div(num_, g);
            den_ = poly_exact_div(den_, g);
        }
        F scale = den_.lc().inv();
        num_ = num_.scaled(scale);
        den_ = den_.scaled(scale);
    }

    UniPoly<F> num_;
    UniPoly<F> den_;
};

} // namespace tamesym
