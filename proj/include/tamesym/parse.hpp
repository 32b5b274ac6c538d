#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "tamesym/geometry.hpp"

namespace tamesym {

// Polynomial in (x, y, z) over the ground field: the parser's value type.
// Terms are keyed by exponent triples; zero coefficients are never stored.
class TriPoly {
  public:
    using Key = std::array<int, 3>;

    explicit TriPoly(int n) : n_(n) {}
    static TriPoly constant(const GroundScalar& c);
    static TriPoly variable(int n, int axis); // 0 = x, 1 = y, 2 = z

    int order() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, GroundScalar>& terms() const { return terms_; }

    TriPoly operator+(const TriPoly& o) const;
    TriPoly operator-(const TriPoly& o) const;
    TriPoly operator*(const TriPoly& o) const;
    TriPoly operator-() const;
    TriPoly pow(int e) const;

    bool operator==(const TriPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const TriPoly& o) const { return !(*this == o); }

    bool uses(int axis) const;
    int total_degree() const; // throws on zero
    bool is_homogeneous() const;

    BiPoly to_bipoly() const; // rejects z
    XPoly to_xpoly() const;   // rejects y and z
    // Homogeneous input becomes the form directly; z-free input is
    // homogenized at its total degree.
    HomPoly to_form() const;

    // Canonical text accepted back by the parser.
    std::string to_string() const;

  private:
    void add_term(const Key& e, const GroundScalar& c);

    int n_;
    std::map<Key, GroundScalar> terms_;
};

// Result of parsing: a polynomial, or a ratio when the input used the single
// top-level division.
struct ParsedExpr {
    TriPoly num;
    std::optional<TriPoly> den;
};

// Recursive-descent parser over variables {x, y, z}, rational literals
// ("7", "2/3") and 'rho'. Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := rational | 'rho' | 'x' | 'y' | 'z' | '(' expr ')' | '-' factor
// Juxtaposition is never multiplication. One '/' may split the whole input
// into numerator and denominator (an integer directly followed by '/' and
// another integer is a rational literal instead). Errors carry the offset.
ParsedExpr parse_expression(const std::string& text, int n);
// Same, but the top-level division is rejected.
TriPoly parse_polynomial(const std::string& text, int n);

std::string parsed_to_string(const ParsedExpr& e);

// Element of k0(x, y) for a presentation slot; z is rejected.
YRat parsed_to_yrat(const ParsedExpr& e);
// Curve component equation; ratios are rejected.
HomPoly parsed_to_form(const ParsedExpr& e);

} // namespace tamesym
