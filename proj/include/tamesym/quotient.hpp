#pragma once

#include <string>

#include "tamesym/bipoly.hpp"

namespace tamesym {

// Element of l[y]/(f) for a monic modulus f over l = k0(x). When f is
// irreducible this is the residue field of the closed point (f); theta
// denotes the class of y.
class QuotientElement {
  public:
    QuotientElement(YPoly modulus, YPoly rep)
        : mod_(std::move(modulus)), rep_(poly_mod(std::move(rep), mod_)) {
        if (mod_.degree() < 1) throw Error("quotient modulus must be nonconstant");
        if (!mod_.lc().is_one()) throw Error("quotient modulus must be monic");
    }

    static QuotientElement from_scalar(const YPoly& modulus, const Lx& c) {
        return {modulus, YPoly::constant(modulus.var(), c)};
    }
    static QuotientElement theta(const YPoly& modulus) {
        return {modulus, YPoly::variable(modulus.var(), modulus.unit())};
    }

    const YPoly& modulus() const { return mod_; }
    const YPoly& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool is_one() const { return rep_.is_one(); }

    QuotientElement operator+(const QuotientElement& o) const {
        check(o);
        return {mod_, rep_ + o.rep_};
    }
    QuotientElement operator-(const QuotientElement& o) const {
        check(o);
        return {mod_, rep_ - o.rep_};
    }
    QuotientElement operator*(const QuotientElement& o) const {
        check(o);
        return {mod_, rep_ * o.rep_};
    }
    QuotientElement operator-() const { return {mod_, -rep_}; }

    // Inverse modulo f; fails when the representative shares a factor with
    // the modulus (only possible for reducible moduli).
    QuotientElement inv() const {
        YPoly u = mod_.zero_like(), v = mod_.zero_like();
        YPoly g = poly_ext_gcd(rep_, mod_, u, v);
        if (g.degree() != 0 || g.is_zero())
            throw Error("non-invertible element in quotient ring (modulus not irreducible?)");
        return {mod_, u};
    }
    QuotientElement operator/(const QuotientElement& o) const { return *this * o.inv(); }

    QuotientElement pow(long e) const {
        if (e < 0) return inv().pow(-e);
        QuotientElement acc = from_scalar(mod_, lx_one(order()));
        QuotientElement base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const QuotientElement& o) const { return mod_ == o.mod_ && rep_ == o.rep_; }
    bool operator!=(const QuotientElement& o) const { return !(*this == o); }

    // Norm down to l: the resultant Res_y(f, rep) equals the product of rep
    // over the roots of the monic modulus.
    Lx norm() const { return poly_resultant(mod_, rep_); }

    // Evaluation for a degree-1 modulus y - r: substitutes theta = r.
    Lx value_at_rational_point() const {
        if (mod_.degree() != 1) throw Error("rational-point value needs a degree-1 modulus");
        Lx root = -mod_.coeff(0);
        return rep_.eval(root);
    }

    std::string to_string() const {
        YPoly named("theta", rep_.unit(), rep_.coeffs());
        return named.to_string();
    }

  private:
    int order() const { return mod_.unit().num().unit().order(); }
    void check(const QuotientElement& o) const {
        if (mod_ != o.mod_) throw Error("quotient elements over different moduli");
    }

    YPoly mod_;
    YPoly rep_;
};

} // namespace tamesym
