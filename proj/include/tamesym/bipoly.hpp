#pragma once

#include <utility>

#include "tamesym/fields.hpp"

namespace tamesym {

// Bivariate polynomial: polynomial in y whose coefficients are polynomials
// in x. Field-only operations (monic, divmod) must not be instantiated here.
using BiPoly = UniPoly<XPoly>;

inline BiPoly bipoly_zero(int n) { return BiPoly::zero("y", xpoly_one(n)); }
inline BiPoly bipoly_one(int n) { return BiPoly::constant("y", xpoly_one(n)); }
inline BiPoly bipoly_y(int n) { return BiPoly::variable("y", xpoly_one(n)); }
inline BiPoly bipoly_x(int n) { return BiPoly::constant("y", xpoly_var(n)); }

// Composition p(g) of a polynomial with a rational function, by Horner.
template <class F>
RatFunc<F> poly_compose_rat(const UniPoly<F>& p, const RatFunc<F>& g) {
    RatFunc<F> acc = RatFunc<F>::zero(p.var(), p.unit());
    for (size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * g + RatFunc<F>::constant(p.var(), p.coeff(static_cast<int>(i)));
    return acc;
}

// Composition f(g) for rational f; throws when the denominator of f
// vanishes identically under the substitution.
template <class F>
RatFunc<F> ratfunc_compose(const RatFunc<F>& f, const RatFunc<F>& g) {
    RatFunc<F> num = poly_compose_rat(f.num(), g);
    RatFunc<F> den = poly_compose_rat(f.den(), g);
    if (den.is_zero()) throw Error("substitution maps denominator to zero");
    return num / den;
}

// Total degree in (x, y) of an integral bivariate polynomial.
inline int bipoly_total_degree(const BiPoly& p) {
    if (p.is_zero()) throw Error("total degree of zero polynomial");
    int best = 0;
    for (int i = 0; i <= p.degree(); ++i) {
        const XPoly& c = p.coeff(i);
        if (c.is_zero()) continue;
        best = std::max(best, i + c.degree());
    }
    return best;
}

inline GroundScalar bipoly_eval(const BiPoly& p, const GroundScalar& x0, const GroundScalar& y0) {
    GroundScalar acc = x0.zero_like();
    for (size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * y0 + p.coeff(static_cast<int>(i)).eval(x0);
    return acc;
}

// Content over k0[x]: monic gcd of all coefficients.
inline XPoly bipoly_content(const BiPoly& p) {
    XPoly g = p.unit().zero_like();
    for (const auto& c : p.coeffs()) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : poly_gcd(g, c);
        if (g.degree() == 0) break;
    }
    return g;
}

// Clears x-denominators of a y-polynomial over k0(x): returns (integral
// polynomial, multiplier) with integral = multiplier * p coefficientwise.
inline std::pair<BiPoly, XPoly> bipoly_from_ypoly(const YPoly& p) {
    int n = p.unit().num().unit().order();
    XPoly mult = xpoly_one(n);
    for (const auto& c : p.coeffs()) {
        const XPoly& d = c.den(); // monic by RatFunc canonicalization
        XPoly g = poly_gcd(mult, d);
        mult = g.degree() > 0 ? poly_exact_div(mult * d, g) : mult * d;
    }
    // mult = monic lcm of denominators; scale each coefficient.
    std::vector<XPoly> cs;
    cs.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        Lx scaled = c * Lx(mult, xpoly_one(n));
        if (!scaled.is_polynomial()) throw InvariantViolation("denominator lcm failed to clear");
        cs.push_back(scaled.num());
    }
    return {BiPoly("y", xpoly_one(n), cs), mult};
}

inline YPoly ypoly_from_bipoly(const BiPoly& p) {
    int n = p.unit().unit().order();
    std::vector<Lx> cs;
    cs.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) cs.push_back(lx_of(c));
    return YPoly("y", lx_one(n), cs);
}

// Integral fraction form of an element of k0(x, y): bivariate numerator and
// denominator with common x-content removed and the denominator's leading
// ground coefficient normalized to 1.
struct BiFrac {
    BiPoly num;
    BiPoly den;
};

inline BiFrac yrat_integral_form(const YRat& f) {
    if (f.is_zero()) throw Error("integral form of zero");
    auto [ni, nm] = bipoly_from_ypoly(f.num());
    auto [di, dm] = bipoly_from_ypoly(f.den());
    // f = (ni/nm) / (di/dm) = (ni * dm) / (di * nm).
    BiPoly num = ni * BiPoly::constant("y", dm);
    BiPoly den = di * BiPoly::constant("y", nm);
    XPoly g = poly_gcd(bipoly_content(num), bipoly_content(den));
    if (g.degree() > 0) {
        std::vector<XPoly> ncs, dcs;
        for (const auto& c : num.coeffs()) ncs.push_back(c.is_zero() ? c : poly_exact_div(c, g));
        for (const auto& c : den.coeffs()) dcs.push_back(c.is_zero() ? c : poly_exact_div(c, g));
        num = BiPoly("y", num.unit(), ncs);
        den = BiPoly("y", den.unit(), dcs);
    }
    GroundScalar s = den.lc().lc().inv();
    std::vector<XPoly> ncs2, dcs2;
    for (const auto& c : num.coeffs()) ncs2.push_back(c.scaled(s));
    for (const auto& c : den.coeffs()) dcs2.push_back(c.scaled(s));
    return {BiPoly("y", num.unit(), ncs2), BiPoly("y", den.unit(), dcs2)};
}

} // namespace tamesym
