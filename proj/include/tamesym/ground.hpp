#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamesym/rational.hpp"

namespace tamesym {

// Element of the ground field Q(rho) where rho is a fixed primitive n-th root
// of unity: a coordinate vector of length phi(n) over Q, reduced modulo the
// n-th cyclotomic polynomial. For n <= 2 this degenerates to a plain rational.
class GroundScalar {
  public:
    GroundScalar(int n, std::vector<Rational> coords);

    static GroundScalar zero(int n);
    static GroundScalar one(int n);
    static GroundScalar rho(int n);
    static GroundScalar from_rational(int n, const Rational& q);
    static GroundScalar from_int(int n, long v) { return from_rational(n, rat(v)); }

    int order() const { return n_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // Throws unless is_rational().
    Rational rational_value() const;

    GroundScalar zero_like() const { return zero(n_); }
    GroundScalar one_like() const { return one(n_); }

    GroundScalar operator-() const;
    GroundScalar operator+(const GroundScalar& o) const;
    GroundScalar operator-(const GroundScalar& o) const;
    GroundScalar operator*(const GroundScalar& o) const;
    GroundScalar operator/(const GroundScalar& o) const;
    GroundScalar inv() const;
    GroundScalar pow(long e) const;

    bool operator==(const GroundScalar& o) const;
    bool operator!=(const GroundScalar& o) const { return !(*this == o); }

    // Galois conjugate rho -> rho^j, for j coprime to n.
    GroundScalar conjugate(int j) const;
    // Product over all Galois conjugates; always lands in Q.
    Rational norm_to_q() const;

    // Exact square root within Q(rho). Complete for phi(n) <= 2; throws
    // Unsupported for larger ground fields (outside the modeled envelope).
    std::optional<GroundScalar> sqrt() const;

    std::string to_string() const;

    // Monic coefficients (ascending) of the n-th cyclotomic polynomial.
    static const std::vector<Rational>& cyclotomic(int n);
    static int phi(int n);

  private:
    int n_;
    std::vector<Rational> c_; // length phi(n), c_[i] multiplies rho^i
};

inline GroundScalar operator*(const Rational& q, const GroundScalar& a) {
    return GroundScalar::from_rational(a.order(), q) * a;
}

} // namespace tamesym
