#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "tamesym/errors.hpp"

namespace tamesym {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Canonical "p/q" (or "p" when q == 1) with the sign on the numerator.
inline std::string rat_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses "p", "-p", or "p/q". Throws on anything else.
Rational rat_from_string(const std::string& s);

// Exact square root of a non-negative integer if it is a perfect square.
bool perfect_square(const Int& n, Int& root);

// Exact square root in Q: succeeds iff q is a square of a rational.
bool rational_sqrt(const Rational& q, Rational& root);

} // namespace tamesym
