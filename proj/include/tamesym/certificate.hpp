#pragma once

#include <optional>
#include <string>

#include "tamesym/fields.hpp"

namespace tamesym {

struct CertificateHit {
    Rational x0;
    long prime = 0;
    std::string detail;
};

// Sound nontriviality tests by specialization to a finite field F_q with
// q = 1 mod n and rho mapped to an element of exact order n.
//
// Finite residue fields: for each irreducible component h of the specialized
// modulus, tests u^((q^e - 1)/n) against the subgroup generated by the image
// of the constants; failing the test certifies that the representative is
// not of the form c * w^n with c in k0^* and w in the residue field (the
// modeled notion of triviality; constants from larger fields are documented
// as out of scope).
std::optional<CertificateHit> certify_nontrivial_finite(const YPoly& modulus, const YPoly& rep,
                                                        int n, int rounds, unsigned long seed);

// Elements of l itself (infinite point, degree-1 points): two-point ratio
// test, sound against c * w^n for any constant c (it cancels in the ratio).
std::optional<CertificateHit> certify_nontrivial_lx(const Lx& rep, int n, int rounds,
                                                    unsigned long seed);

} // namespace tamesym
