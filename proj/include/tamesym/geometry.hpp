#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tamesym/bipoly.hpp"
#include "tamesym/brauer.hpp"

namespace tamesym {

using Vec3 = std::vector<GroundScalar>; // always length 3

// 3x3 matrix over the ground field, row-major.
class Mat3 {
  public:
    Mat3(int n, std::vector<GroundScalar> entries);
    static Mat3 identity(int n);
    static Mat3 zero(int n);
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2);
    static Mat3 from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2);

    int order() const { return n_; }
    const GroundScalar& at(int r, int c) const { return e_[3 * r + c]; }
    void set(int r, int c, const GroundScalar& v) { e_[3 * r + c] = v; }

    GroundScalar det() const;
    Mat3 adjugate() const;
    Mat3 inverse() const; // throws Error on zero determinant
    Mat3 operator*(const Mat3& o) const;
    Vec3 apply(const Vec3& v) const;

    bool operator==(const Mat3& o) const;
    bool operator!=(const Mat3& o) const { return !(*this == o); }
    std::string to_string() const;

  private:
    int n_;
    std::vector<GroundScalar> e_;
};

// Homogeneous polynomial over the ground field in coordinates (X, Y, Z).
// Terms are keyed by the exponents of X and Y; the Z exponent is implied by
// the declared degree. Zero coefficients are not stored.
class HomPoly {
  public:
    HomPoly(int n, int degree);
    static HomPoly monomial(int n, int degree, int ex, int ey, const GroundScalar& c);
    // Homogenize an affine equation in (x, y) to the given degree; a negative
    // degree means the total degree of p.
    static HomPoly from_bipoly(const BiPoly& p, int degree = -1);

    int order() const { return n_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<int, int>, GroundScalar>& terms() const { return terms_; }

    GroundScalar coeff(int ex, int ey) const;
    void add_term(int ex, int ey, const GroundScalar& c);

    HomPoly operator+(const HomPoly& o) const;
    HomPoly operator-(const HomPoly& o) const;
    HomPoly operator*(const HomPoly& o) const; // degrees add
    HomPoly operator-() const;
    HomPoly scaled(const GroundScalar& c) const;

    GroundScalar eval(const Vec3& p) const;
    // F(m * v): substitute each coordinate by the corresponding row form.
    HomPoly substitute(const Mat3& m) const;
    // Set the chart's denominator coordinate to 1; base becomes x, fiber y.
    BiPoly dehomogenize(const struct Chart& chart) const;

    bool proportional_to(const HomPoly& o) const;
    bool operator==(const HomPoly& o) const;
    bool operator!=(const HomPoly& o) const { return !(*this == o); }
    std::string to_string() const;

  private:
    int n_;
    int degree_;
    std::map<std::pair<int, int>, GroundScalar> terms_;
};

// Affine chart of the projective plane: the denominator coordinate is set to
// 1, the base coordinate becomes the variable generating l = k0(x), and the
// fiber coordinate becomes the variable of the projected line over l.
struct Chart {
    int base = 0;
    int fiber = 1;
    int denom = 2;

    bool is_default() const { return base == 0 && fiber == 1 && denom == 2; }
    bool valid() const;
    std::string to_string() const;
};

// Invertible change of homogeneous coordinates, new = B * old, together with
// the chart the new coordinates are read in. Forms transform by substituting
// the exact inverse matrix, so chosen images carry no stray scalar factors.
class ProjectiveMap {
  public:
    explicit ProjectiveMap(Mat3 b, Chart chart = Chart{});
    static ProjectiveMap identity(int n);

    int order() const { return b_.order(); }
    const Mat3& matrix() const { return b_; }
    const Mat3& inverse_matrix() const { return binv_; }
    const Chart& chart() const { return chart_; }

    HomPoly apply_to_form(const HomPoly& f) const;
    // Transform an element of the function field written in the default
    // affine chart of the old coordinates into the new chart.
    YRat apply_to_slot(const YRat& g) const;
    // Apply this map first, then the other; this map must stay in the
    // default chart for the composite to make sense.
    ProjectiveMap then(const ProjectiveMap& second) const;

    std::string to_string() const;

  private:
    Mat3 b_;
    Mat3 binv_;
    Chart chart_;
};

enum class ConfigTag { FourLines, TwoLinesConic, TwoConics, LineCubic, IrreducibleQuartic };

std::string config_tag_name(ConfigTag tag);

struct CurveComponent {
    HomPoly form;
    bool irreducible_asserted;
};

struct CurveConfiguration {
    std::vector<CurveComponent> components;
    int n;
    ConfigTag tag;
};

// Validates that the degrees sum to 4, that no component is repeated, and
// that no line divides another component; assigns the tag by degree pattern.
CurveConfiguration classify_configuration(std::vector<CurveComponent> components);

// The closed point of the projected line cut out by an affine component
// equation; errors on vertical components (no y).
ClosedPoint component_to_point(const BiPoly& f);

// Send one line of the configuration to Z = 0 and (for four lines or two
// lines and a conic) another to X = 0. A line already proportional to Z is
// preferred for the infinite slot, one proportional to X for the X slot;
// otherwise input order decides. The remaining row is the first standard
// basis vector keeping the determinant nonzero.
ProjectiveMap lines_to_standard(const CurveConfiguration& config);

// Same completion rule with only the infinite slot prescribed.
ProjectiveMap line_to_infinite(const HomPoly& line);

// Root a of the dehomogenized leading form (coefficient of x^i y^(d-i) read
// as the t^i coefficient) and the substitution x = x' + a*y that kills the
// y^d coefficient. Picks the smallest-height root for determinism.
std::pair<GroundScalar, ProjectiveMap> shear_to_kill_top_y(const HomPoly& f);

struct ConicsNormalization {
    Vec3 point;        // common zero of both conics
    ProjectiveMap map; // kills both Y^2 coefficients
};

// Common ground-field point of two geometrically irreducible conics, found
// by eliminating y with a resultant and back-substituting; throws
// ExtensionRequired when no such point has ground-field coordinates.
ConicsNormalization conics_common_point(const HomPoly& c1, const HomPoly& c2);

struct QuarticNormalization {
    ProjectiveMap map;  // includes the chart swap when one happens
    YPoly monic_cubic;  // the transformed affine equation, monic in the fiber
    bool chart_swapped;
};

// Bring an irreducible quartic with zero y^4 coefficient to a form monic of
// degree 3 in the fiber variable: divide by the constant y^3 coefficient, or
// substitute x' = a1*x + a0*z and move to the chart with the old x as
// denominator.
QuarticNormalization quartic_monicize(const HomPoly& f);

BrauerPresentation apply_map_to_presentation(const BrauerPresentation& a,
                                             const ProjectiveMap& map);

CurveConfiguration apply_map_to_configuration(const CurveConfiguration& config,
                                              const ProjectiveMap& map);

} // namespace tamesym
