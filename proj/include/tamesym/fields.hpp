#pragma once

#include "tamesym/ground.hpp"
#include "tamesym/ratfunc.hpp"
#include "tamesym/unipoly.hpp"

namespace tamesym {

// The tower used throughout: k0 = Q(rho) -> l = k0(x) -> l(y).
using XPoly = UniPoly<GroundScalar>; // element of k0[x]
using Lx = RatFunc<GroundScalar>;    // element of l = k0(x)
using YPoly = UniPoly<Lx>;           // polynomial in the fiber variable over l
using YRat = RatFunc<Lx>;            // element of l(y)

inline XPoly xpoly_zero(int n) { return XPoly::zero("x", GroundScalar::one(n)); }
inline XPoly xpoly_one(int n) { return XPoly::constant("x", GroundScalar::one(n)); }
inline XPoly xpoly_var(int n) { return XPoly::variable("x", GroundScalar::one(n)); }

inline Lx lx_zero(int n) { return Lx::zero("x", GroundScalar::one(n)); }
inline Lx lx_one(int n) { return Lx::one("x", GroundScalar::one(n)); }
inline Lx lx_var(int n) { return Lx::variable("x", GroundScalar::one(n)); }
inline Lx lx_const(const GroundScalar& c) { return Lx::constant("x", c); }
inline Lx lx_rat(int n, const Rational& q) {
    return Lx::constant("x", GroundScalar::from_rational(n, q));
}
inline Lx lx_of(const XPoly& p) { return Lx(p); }

inline YPoly ypoly_zero(int n) { return YPoly::zero("y", lx_one(n)); }
inline YPoly ypoly_one(int n) { return YPoly::constant("y", lx_one(n)); }
inline YPoly ypoly_var(int n) { return YPoly::variable("y", lx_one(n)); }
inline YPoly ypoly_const(const Lx& c) { return YPoly::constant("y", c); }

inline YRat yrat_of(const YPoly& p) { return YRat(p); }
inline YRat yrat_const(const Lx& c) { return YRat(ypoly_const(c)); }

} // namespace tamesym
