#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamesym/brauer.hpp"

namespace tamesym {

// Fractional-linear substitution t -> (alpha t + beta)/(gamma t + delta)
// with coefficients in l, acting on the projected line.
struct Mobius {
    Lx alpha, beta, gamma, delta;

    static Mobius identity(int n);
    int order() const;
    Lx determinant() const; // alpha*delta - beta*gamma, nonzero for a map
    Mobius inverse() const;
    Mobius then(const Mobius& second) const; // apply this first, then second
    YRat as_yrat() const;
    // Compose a function of the line with this substitution.
    YRat substitute(const YRat& g) const;
    // Image of a point coordinate; nullopt encodes the infinite point.
    std::optional<Lx> apply(const std::optional<Lx>& p) const;
    std::string to_string() const;
};

// Substitution sending <= 3 distinct points (finite of degree 1, or the
// infinite point) to the prefix of (0, 1, infinity) in input order. Fewer
// than three points are padded with virtual points from a fixed sequence
// (infinity, 0, 1, -1, 2, -2, ...) skipping the given ones.
Mobius mobius_normalize(const std::vector<ClosedPoint>& points);

// One prescribed residue: the class the constructed symbol must reproduce.
struct RamificationDatum {
    ClosedPoint point;
    ResidueClass target;
};

enum class CyclifyCase {
    ThreeLinear,
    QuadraticV0,
    QuadraticVNonzero,
    Cubic1,
    Cubic2,
    Cubic3a,
    Cubic3b,
};

std::string cyclify_case_name(CyclifyCase c);

// Witness pair (w, constant) certifying the residue match at one point:
// computed = constant * w^n * target in the residue field there.
struct CyclifyWitness {
    ClosedPoint point;
    std::optional<QuotientElement> finite_w;
    std::optional<Lx> infinite_w;
    GroundScalar constant;
};

struct CyclicOutput {
    SymbolAlgebra symbol;
    CyclifyCase tag;
    // True when the slots are exchanged relative to the classical printed
    // form, which replaces the class by its inverse; done so the residue at
    // the prescribed point equals the target on the nose.
    bool slots_swapped;
    std::vector<RamificationDatum> prescribed;
    std::vector<CyclifyWitness> witnesses; // one per prescribed point
    std::vector<ClosedPoint> auxiliary;    // points designed exactly unramified
    std::vector<std::string> notes;
};

// Degree-n symbol (b2*t, -b1^{-1}(t-1)) with residues exactly b1 at t,
// b2 at t-1, and (b1*b2)^{-1} at infinity.
CyclicOutput construct_three_linear(const Lx& b1, const Lx& b2, int n);

// Witness that prescribing b3 at infinity alongside (b1, b2) is consistent
// with reciprocity: returns (w, constant) with b1*b2*b3 = constant * w^n,
// or nullopt when the three targets are not realizable by any algebra.
std::optional<std::pair<Lx, GroundScalar>> three_linear_infinity_witness(const Lx& b1,
                                                                         const Lx& b2,
                                                                         const Lx& b3, int n);

// Target u + v*theta at a monic irreducible quadratic f: branch on v = 0.
CyclicOutput construct_quadratic(const YPoly& f, const Lx& u, const Lx& v, int n);

// Target a0 + a1*theta + a2*theta^2 at a monic irreducible cubic f:
// dispatches on (a2 = 0?, a1 = 0?) and, inside the a2 != 0 case, on the
// vanishing of b1 where a*(c+theta) = b0 + b1*theta.
CyclicOutput construct_cubic(const YPoly& f, const Lx& a0, const Lx& a1, const Lx& a2, int n);

enum class RowStatus {
    PrescribedMatch,     // witnessed equality with the target
    AuxiliaryUnit,       // representative exactly 1
    TrivialWitnessed,    // representative is constant * (unit)^n, witness shown
    ForcedByReciprocity, // nontrivial, equal to the reciprocity complement of
                         // the prescribed data; carries no prescription to match
    Failed,
};

std::string row_status_name(RowStatus s);

struct CheckRow {
    ClosedPoint point;
    RowStatus status;
    std::string detail;
};

struct ConstructionReport {
    std::vector<CheckRow> rows;
    bool reciprocity_ok;
    bool verdict; // no failed rows and reciprocity holds
    std::string deduction_note;
};

// Recompute every residue of the output symbol and check it against the
// given targets (witnessed), the designed auxiliary points (exactly 1), and
// triviality elsewhere; a nontrivial leftover is accepted only when the
// prescribed data forces it through reciprocity.
ConstructionReport verify_construction(const std::vector<RamificationDatum>& targets,
                                       const CyclicOutput& out);
ConstructionReport verify_construction(const CyclicOutput& out);

} // namespace tamesym
