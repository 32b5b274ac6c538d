#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamesym/quotient.hpp"

namespace tamesym {

// Closed point of the projective y-line over l = k0(x): a monic irreducible
// polynomial in y, or the infinite point. A point may also carry a composite
// squarefree modulus ("cluster"): every operation downstream is compatible
// with splitting the cluster into its irreducible factors, which lets the
// reciprocity ledger avoid bivariate factorization entirely.
class ClosedPoint {
  public:
    enum class Kind { Finite, Infinite };
    enum class IrreducibleStatus { Verified, Assumed, Cluster };

    static ClosedPoint infinity(int n);
    // Checks irreducibility over l up to degree 4 (throws Error on a proven
    // factorization); degree >= 5 moduli are recorded as user assertions.
    static ClosedPoint finite(YPoly modulus);
    // Squarefree modulus treated as an unsplit product of closed points.
    static ClosedPoint cluster(YPoly modulus);

    Kind kind() const { return kind_; }
    bool is_infinite() const { return kind_ == Kind::Infinite; }
    const YPoly& modulus() const;
    int degree() const { return is_infinite() ? 1 : mod_.degree(); }
    IrreducibleStatus irreducible_status() const { return irr_; }
    int order() const { return n_; }

    bool operator==(const ClosedPoint& o) const;
    bool operator!=(const ClosedPoint& o) const { return !(*this == o); }
    std::string to_string() const;

  private:
    ClosedPoint(Kind k, YPoly mod, IrreducibleStatus irr, int n)
        : kind_(k), mod_(std::move(mod)), irr_(irr), n_(n) {}

    Kind kind_;
    YPoly mod_;
    IrreducibleStatus irr_;
    int n_;
};

struct SymbolAlgebra {
    YRat a;
    YRat b;
    int n;

    SymbolAlgebra(YRat a_, YRat b_, int n_) : a(std::move(a_)), b(std::move(b_)), n(n_) {
        if (n < 2) throw Error("symbol algebra needs n > 1");
        if (a.is_zero() || b.is_zero()) throw Error("symbol algebra slots must be nonzero");
    }
};

// Formal product of symbol algebras with integer exponents: a presentation
// of an n-torsion Brauer class. Exponents are canonicalized into the
// balanced range (-n/2, n/2].
class BrauerPresentation {
  public:
    explicit BrauerPresentation(int n) : n_(n) {
        if (n < 2) throw Error("presentation needs n > 1");
    }

    void add(SymbolAlgebra s, int exponent = 1);
    int order() const { return n_; }
    const std::vector<std::pair<SymbolAlgebra, int>>& terms() const { return terms_; }
    bool trivial_presentation() const { return terms_.empty(); }

    static int canonical_exponent(int e, int n);

  private:
    int n_;
    std::vector<std::pair<SymbolAlgebra, int>> terms_;
};

// Residue of a Brauer class at a closed point: a unit representative in the
// residue field, l[y]/(f) at finite points and l itself at the infinite one.
class ResidueClass {
  public:
    ResidueClass(ClosedPoint p, QuotientElement rep, int n)
        : point_(std::move(p)), finite_rep_(std::move(rep)), n_(n) {}
    ResidueClass(ClosedPoint p, Lx rep, int n)
        : point_(std::move(p)), infinite_rep_(std::move(rep)), n_(n) {}

    const ClosedPoint& point() const { return point_; }
    int order() const { return n_; }
    bool at_infinity() const { return point_.is_infinite(); }
    const QuotientElement& finite_rep() const {
        if (!finite_rep_) throw Error("residue has no finite representative");
        return *finite_rep_;
    }
    const Lx& infinite_rep() const {
        if (!infinite_rep_) throw Error("residue has no infinite-point representative");
        return *infinite_rep_;
    }
    bool trivial_unit() const;
    std::string rep_to_string() const;

  private:
    ClosedPoint point_;
    std::optional<QuotientElement> finite_rep_;
    std::optional<Lx> infinite_rep_;
    int n_;
};

// Element of l*/(l*)^n modulo constants: squarefree monic pairwise coprime
// parts of x-polynomials with multiplicities in [0, n).
class CorProfile {
  public:
    explicit CorProfile(int n) : n_(n) {}

    static CorProfile of(const Lx& g, int n);

    bool empty() const { return parts_.empty(); }
    int order() const { return n_; }
    const std::vector<std::pair<XPoly, int>>& parts() const { return parts_; }

    CorProfile operator*(const CorProfile& o) const;
    bool operator==(const CorProfile& o) const;
    std::string to_string() const;

  private:
    std::vector<std::pair<XPoly, int>> parts_;
    int n_;
};

// Valuation of a nonzero element of l(y) at a closed point. At a cluster the
// valuation is the common value over the irreducible factors (uniform by the
// coprime-basis construction); non-uniform inputs surface later as a failed
// unit inversion.
int point_valuation(const ClosedPoint& p, const YRat& e);

// 1/x-adic valuation along the infinite line of the projective plane:
// total-degree difference of the integral form.
int infinite_line_valuation(const YRat& e);

// Tame-symbol residue: per symbol (a, b) the class of
// (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}, reduced into the residue field and
// combined across the presentation with exponents.
ResidueClass residue_at(const ClosedPoint& p, const BrauerPresentation& A);

// Exact witnessed equality in the residue field: rep1 = c * w^n * rep2.
bool residue_equal_with_witness(const ResidueClass& r1, const ResidueClass& r2,
                                const QuotientElement& w, const GroundScalar& c);
bool residue_equal_with_witness(const ResidueClass& r1, const ResidueClass& r2, const Lx& w,
                                const GroundScalar& c);

// Corestriction to l: norm for finite points of degree >= 2, identity at
// degree-1 points and at the infinite point.
CorProfile corestriction_at(const ResidueClass& r);

// True iff g lies in (l*)^n * k0^*: every squarefree part has multiplicity
// divisible by n.
bool nth_power_mod_constants(const Lx& g, int n);

// Witness extraction for the same membership: g = c * w^n exactly.
std::optional<std::pair<Lx, GroundScalar>> nth_power_witness(const Lx& g, int n);

struct ReciprocityEntry {
    ClosedPoint point;
    ResidueClass residue;
    CorProfile profile;
};

struct ReciprocityLedger {
    explicit ReciprocityLedger(int n) : combined(n) {}
    std::vector<ReciprocityEntry> entries;
    CorProfile combined;
    bool verdict = false;
};

// Faddeev reciprocity: the product over all points of the corestricted
// residues is trivial. The point list must cover every finite point where a
// slot has nonzero valuation, plus the infinite point; a residual factor not
// covered raises an Error naming it.
ReciprocityLedger reciprocity_check(const BrauerPresentation& A,
                                    const std::vector<ClosedPoint>& points);

// Candidate support of a presentation: coprime-basis clusters of the slot
// numerators and denominators, plus the infinite point. No bivariate
// factorization is performed; clusters stay composite.
std::vector<ClosedPoint> support_points(const BrauerPresentation& A);

// Convenience: reciprocity over the auto-enumerated support.
ReciprocityLedger reciprocity_auto(const BrauerPresentation& A);

enum class RamStatus { UnramifiedExact, NontrivialCertified, Undetermined };

struct NontrivialityCertificate {
    Rational x0;
    long prime = 0;
    std::string detail;
};

struct RamEntry {
    ClosedPoint point;
    ResidueClass residue;
    RamStatus status;
    std::optional<NontrivialityCertificate> certificate;
    std::string witness_note;
};

// Sound, incomplete nontriviality test by specialization to a finite field;
// see certificate.hpp for the underlying machinery.
std::optional<NontrivialityCertificate> nontriviality_certificate(const ResidueClass& r,
                                                                  int rounds, unsigned long seed);

// Ramification survey over the support: exact witnesses where available,
// finite-field certificates of nontriviality otherwise.
std::vector<RamEntry> ramification_profile(const BrauerPresentation& A, int rounds = 12,
                                           unsigned long seed = 1);

// Roots of a monic polynomial over l = k0(x) lying in l, complete for
// degree <= 3 given the x-factorization bound; used by the irreducibility
// screen and the cubic constructions.
std::vector<Lx> l_roots(const YPoly& f);

// Exact square root in l, when it exists.
std::optional<Lx> lx_sqrt(const Lx& g);

} // namespace tamesym
