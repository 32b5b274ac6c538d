#include "tamesym/geometry.hpp"

#include <algorithm>

#include "tamesym/factor.hpp"

namespace tamesym {

namespace {

GroundScalar gzero(int n) { return GroundScalar::zero(n); }
GroundScalar gone(int n) { return GroundScalar::one(n); }

Vec3 basis_vector(int n, int i) {
    Vec3 v(3, gzero(n));
    v[i] = gone(n);
    return v;
}

} // namespace

Mat3::Mat3(int n, std::vector<GroundScalar> entries) : n_(n), e_(std::move(entries)) {
    if (e_.size() != 9) throw Error("matrix needs exactly nine entries");
}

Mat3 Mat3::identity(int n) {
    Mat3 m = zero(n);
    for (int i = 0; i < 3; ++i) m.set(i, i, gone(n));
    return m;
}

Mat3 Mat3::zero(int n) { return Mat3(n, std::vector<GroundScalar>(9, gzero(n))); }

Mat3 Mat3::from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    int n = r0[0].order();
    Mat3 m = zero(n);
    const Vec3* rows[3] = {&r0, &r1, &r2};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.set(r, c, (*rows[r])[c]);
    return m;
}

Mat3 Mat3::from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    int n = c0[0].order();
    Mat3 m = zero(n);
    const Vec3* cols[3] = {&c0, &c1, &c2};
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r) m.set(r, c, (*cols[c])[r]);
    return m;
}

namespace {

GroundScalar cofactor(const Mat3& m, int r, int c) {
    int r0 = (r + 1) % 3, r1 = (r + 2) % 3;
    int c0 = (c + 1) % 3, c1 = (c + 2) % 3;
    if (r0 > r1) std::swap(r0, r1);
    if (c0 > c1) std::swap(c0, c1);
    GroundScalar minor = m.at(r0, c0) * m.at(r1, c1) - m.at(r0, c1) * m.at(r1, c0);
    return ((r + c) % 2 == 0) ? minor : -minor;
}

} // namespace

GroundScalar Mat3::det() const {
    GroundScalar d = gzero(n_);
    for (int c = 0; c < 3; ++c) d = d + at(0, c) * cofactor(*this, 0, c);
    return d;
}

Mat3 Mat3::adjugate() const {
    Mat3 a = zero(n_);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a.set(c, r, cofactor(*this, r, c));
    return a;
}

Mat3 Mat3::inverse() const {
    GroundScalar d = det();
    if (d.is_zero()) throw Error("matrix is singular");
    Mat3 a = adjugate();
    GroundScalar s = d.inv();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) a.set(r, c, a.at(r, c) * s);
    return a;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 m = zero(n_);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            GroundScalar s = gzero(n_);
            for (int k = 0; k < 3; ++k) s = s + at(r, k) * o.at(k, c);
            m.set(r, c, s);
        }
    return m;
}

Vec3 Mat3::apply(const Vec3& v) const {
    Vec3 w(3, gzero(n_));
    for (int r = 0; r < 3; ++r) {
        GroundScalar s = gzero(n_);
        for (int c = 0; c < 3; ++c) s = s + at(r, c) * v[c];
        w[r] = s;
    }
    return w;
}

bool Mat3::operator==(const Mat3& o) const { return e_ == o.e_; }

std::string Mat3::to_string() const {
    std::string s = "[";
    for (int r = 0; r < 3; ++r) {
        s += "[";
        for (int c = 0; c < 3; ++c) {
            s += at(r, c).to_string();
            if (c < 2) s += ", ";
        }
        s += r < 2 ? "], " : "]";
    }
    return s + "]";
}

HomPoly::HomPoly(int n, int degree) : n_(n), degree_(degree) {
    if (degree < 0) throw Error("homogeneous polynomial needs a nonnegative degree");
}

HomPoly HomPoly::monomial(int n, int degree, int ex, int ey, const GroundScalar& c) {
    HomPoly p(n, degree);
    p.add_term(ex, ey, c);
    return p;
}

GroundScalar HomPoly::coeff(int ex, int ey) const {
    auto it = terms_.find({ex, ey});
    return it == terms_.end() ? gzero(n_) : it->second;
}

void HomPoly::add_term(int ex, int ey, const GroundScalar& c) {
    if (ex < 0 || ey < 0 || ex + ey > degree_)
        throw Error("monomial exponents exceed the declared degree");
    if (c.is_zero()) return;
    auto it = terms_.find({ex, ey});
    if (it == terms_.end()) {
        terms_.emplace(std::make_pair(ex, ey), c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

HomPoly HomPoly::operator+(const HomPoly& o) const {
    if (degree_ != o.degree_) throw Error("cannot add forms of different degrees");
    HomPoly r = *this;
    for (const auto& [k, v] : o.terms_) r.add_term(k.first, k.second, v);
    return r;
}

HomPoly HomPoly::operator-(const HomPoly& o) const { return *this + (-o); }

HomPoly HomPoly::operator-() const {
    HomPoly r(n_, degree_);
    for (const auto& [k, v] : terms_) r.add_term(k.first, k.second, -v);
    return r;
}

HomPoly HomPoly::scaled(const GroundScalar& c) const {
    HomPoly r(n_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.add_term(k.first, k.second, v * c);
    return r;
}

HomPoly HomPoly::operator*(const HomPoly& o) const {
    HomPoly r(n_, degree_ + o.degree_);
    for (const auto& [k1, v1] : terms_)
        for (const auto& [k2, v2] : o.terms_)
            r.add_term(k1.first + k2.first, k1.second + k2.second, v1 * v2);
    return r;
}

GroundScalar HomPoly::eval(const Vec3& p) const {
    GroundScalar s = gzero(n_);
    for (const auto& [k, v] : terms_) {
        GroundScalar t = v;
        t = t * p[0].pow(k.first) * p[1].pow(k.second) * p[2].pow(degree_ - k.first - k.second);
        s = s + t;
    }
    return s;
}

HomPoly HomPoly::substitute(const Mat3& m) const {
    std::vector<HomPoly> rows;
    for (int r = 0; r < 3; ++r) {
        HomPoly f(n_, 1);
        f.add_term(1, 0, m.at(r, 0));
        f.add_term(0, 1, m.at(r, 1));
        f.add_term(0, 0, m.at(r, 2));
        rows.push_back(f);
    }
    HomPoly result(n_, degree_);
    for (const auto& [k, v] : terms_) {
        HomPoly term(n_, 0);
        term.add_term(0, 0, v);
        for (int i = 0; i < k.first; ++i) term = term * rows[0];
        for (int i = 0; i < k.second; ++i) term = term * rows[1];
        for (int i = 0; i < degree_ - k.first - k.second; ++i) term = term * rows[2];
        result = result + term;
    }
    return result;
}

HomPoly HomPoly::from_bipoly(const BiPoly& p, int degree) {
    if (p.is_zero()) throw Error("cannot homogenize the zero polynomial");
    int n = p.unit().unit().order();
    int total = bipoly_total_degree(p);
    if (degree < 0) degree = total;
    if (degree < total) throw Error("homogenization degree below the total degree");
    HomPoly f(n, degree);
    for (int j = 0; j <= p.degree(); ++j) {
        const XPoly& cj = p.coeff(j);
        for (int i = 0; i <= cj.degree(); ++i) f.add_term(i, j, cj.coeff(i));
    }
    return f;
}

bool Chart::valid() const {
    return base >= 0 && base < 3 && fiber >= 0 && fiber < 3 && denom >= 0 && denom < 3 &&
           base != fiber && base != denom && fiber != denom;
}

std::string Chart::to_string() const {
    const char* names = "XYZ";
    std::string s = "base=";
    s += names[base];
    s += ", fiber=";
    s += names[fiber];
    s += ", denom=";
    s += names[denom];
    return s;
}

BiPoly HomPoly::dehomogenize(const Chart& chart) const {
    if (!chart.valid()) throw Error("chart must name three distinct coordinates");
    std::map<int, std::map<int, GroundScalar>> rows; // ydeg -> xdeg -> coeff
    for (const auto& [k, v] : terms_) {
        int e[3] = {k.first, k.second, degree_ - k.first - k.second};
        rows[e[chart.fiber]].emplace(e[chart.base], v);
    }
    int ydeg = rows.empty() ? -1 : rows.rbegin()->first;
    int n = n_;
    std::vector<XPoly> coeffs;
    for (int j = 0; j <= ydeg; ++j) {
        XPoly c = xpoly_zero(n);
        auto it = rows.find(j);
        if (it != rows.end())
            for (const auto& [i, v] : it->second) c = c + XPoly::monomial("x", v, i);
        coeffs.push_back(c);
    }
    return BiPoly("y", xpoly_one(n), coeffs);
}

bool HomPoly::proportional_to(const HomPoly& o) const {
    if (degree_ != o.degree_) return false;
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (terms_.size() != o.terms_.size()) return false;
    GroundScalar num = terms_.begin()->second;
    GroundScalar den = o.coeff(terms_.begin()->first.first, terms_.begin()->first.second);
    if (den.is_zero()) return false;
    GroundScalar ratio = num / den;
    for (const auto& [k, v] : terms_)
        if (o.coeff(k.first, k.second) * ratio != v) return false;
    return true;
}

bool HomPoly::operator==(const HomPoly& o) const {
    return degree_ == o.degree_ && terms_ == o.terms_;
}

std::string HomPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    auto var = [&](const char* name, int e) -> std::string {
        if (e == 0) return "";
        std::string t = name;
        if (e > 1) t += "^" + std::to_string(e);
        return t;
    };
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, v] = *it;
        std::string mono;
        for (const std::string& part :
             {var("X", k.first), var("Y", k.second), var("Z", degree_ - k.first - k.second)}) {
            if (part.empty()) continue;
            if (!mono.empty()) mono += "*";
            mono += part;
        }
        std::string c = v.to_string();
        std::string term;
        if (mono.empty())
            term = c;
        else if (c == "1")
            term = mono;
        else if (c == "-1")
            term = "-" + mono;
        else
            term = (c.find_first_of("+-", 1) != std::string::npos ? "(" + c + ")" : c) + "*" + mono;
        if (s.empty()) {
            s = term;
        } else if (!term.empty() && term[0] == '-') {
            s += " - " + term.substr(1);
        } else {
            s += " + " + term;
        }
    }
    return s;
}

ProjectiveMap::ProjectiveMap(Mat3 b, Chart chart)
    : b_(std::move(b)), binv_(b_.inverse()), chart_(chart) {
    if (!chart_.valid()) throw Error("chart must name three distinct coordinates");
}

ProjectiveMap ProjectiveMap::identity(int n) { return ProjectiveMap(Mat3::identity(n)); }

HomPoly ProjectiveMap::apply_to_form(const HomPoly& f) const { return f.substitute(binv_); }

YRat ProjectiveMap::apply_to_slot(const YRat& g) const {
    if (g.is_zero()) throw Error("cannot transform the zero slot");
    BiFrac frac = yrat_integral_form(g);
    int d = std::max(bipoly_total_degree(frac.num), bipoly_total_degree(frac.den));
    HomPoly num = HomPoly::from_bipoly(frac.num, d).substitute(binv_);
    HomPoly den = HomPoly::from_bipoly(frac.den, d).substitute(binv_);
    return yrat_of(ypoly_from_bipoly(num.dehomogenize(chart_))) /
           yrat_of(ypoly_from_bipoly(den.dehomogenize(chart_)));
}

ProjectiveMap ProjectiveMap::then(const ProjectiveMap& second) const {
    if (!chart_.is_default())
        throw Error("cannot compose after a chart swap");
    return ProjectiveMap(second.matrix() * b_, second.chart());
}

std::string ProjectiveMap::to_string() const {
    std::string s = b_.to_string();
    if (!chart_.is_default()) s += " with chart " + chart_.to_string();
    return s;
}

std::string config_tag_name(ConfigTag tag) {
    switch (tag) {
        case ConfigTag::FourLines: return "FourLines";
        case ConfigTag::TwoLinesConic: return "TwoLinesConic";
        case ConfigTag::TwoConics: return "TwoConics";
        case ConfigTag::LineCubic: return "LineCubic";
        case ConfigTag::IrreducibleQuartic: return "IrreducibleQuartic";
    }
    throw Error("unknown configuration tag");
}

namespace {

// Two independent points spanning the zero set of a linear form.
std::pair<Vec3, Vec3> line_span(const HomPoly& line) {
    int n = line.order();
    GroundScalar a = line.coeff(1, 0), b = line.coeff(0, 1), c = line.coeff(0, 0);
    Vec3 p(3, gzero(n)), q(3, gzero(n));
    if (!a.is_zero()) {
        p = {-b, a, gzero(n)};
        q = {-c, gzero(n), a};
    } else if (!b.is_zero()) {
        p = {gone(n), gzero(n), gzero(n)};
        q = {gzero(n), -c, b};
    } else {
        p = {gone(n), gzero(n), gzero(n)};
        q = {gzero(n), gone(n), gzero(n)};
    }
    return {p, q};
}

bool line_divides(const HomPoly& line, const HomPoly& f) {
    auto [p, q] = line_span(line);
    int n = line.order();
    if (!f.eval(p).is_zero()) return false;
    for (long s = 0; s <= f.degree(); ++s) {
        Vec3 pt(3, gzero(n));
        GroundScalar sc = GroundScalar::from_int(n, s);
        for (int i = 0; i < 3; ++i) pt[i] = sc * p[i] + q[i];
        if (!f.eval(pt).is_zero()) return false;
    }
    return true;
}

} // namespace

CurveConfiguration classify_configuration(std::vector<CurveComponent> components) {
    if (components.empty()) throw Error("configuration needs at least one component");
    int n = components.front().form.order();
    int sum = 0;
    std::vector<int> degs;
    for (const auto& comp : components) {
        if (comp.form.is_zero()) throw Error("configuration component is zero");
        if (comp.form.order() != n) throw Error("components live over different ground fields");
        degs.push_back(comp.form.degree());
        sum += comp.form.degree();
    }
    if (sum != 4) throw Error("component degrees must sum to 4");
    for (size_t i = 0; i < components.size(); ++i)
        for (size_t j = i + 1; j < components.size(); ++j) {
            const HomPoly& f = components[i].form;
            const HomPoly& g = components[j].form;
            if (f.proportional_to(g)) throw Error("repeated configuration component");
            if (f.degree() == 1 && line_divides(f, g))
                throw Error("components are not pairwise coprime");
            if (g.degree() == 1 && line_divides(g, f))
                throw Error("components are not pairwise coprime");
        }
    std::sort(degs.begin(), degs.end());
    ConfigTag tag;
    if (degs == std::vector<int>{1, 1, 1, 1})
        tag = ConfigTag::FourLines;
    else if (degs == std::vector<int>{1, 1, 2})
        tag = ConfigTag::TwoLinesConic;
    else if (degs == std::vector<int>{2, 2})
        tag = ConfigTag::TwoConics;
    else if (degs == std::vector<int>{1, 3})
        tag = ConfigTag::LineCubic;
    else if (degs == std::vector<int>{4})
        tag = ConfigTag::IrreducibleQuartic;
    else
        throw Error("component degrees do not match any quartic configuration");
    return CurveConfiguration{std::move(components), n, tag};
}

ClosedPoint component_to_point(const BiPoly& f) {
    if (f.is_zero()) throw Error("component equation is zero");
    if (f.degree() == 0)
        throw Error("vertical component: no corresponding point of the projected line");
    YPoly g = ypoly_from_bipoly(f);
    return ClosedPoint::finite(g.monic());
}

namespace {

bool is_axis(const HomPoly& line, int axis) {
    HomPoly z = HomPoly::monomial(line.order(), 1, axis == 0 ? 1 : 0, axis == 1 ? 1 : 0,
                                  gone(line.order()));
    return line.proportional_to(z);
}

Vec3 line_coeffs(const HomPoly& line) {
    return {line.coeff(1, 0), line.coeff(0, 1), line.coeff(0, 0)};
}

// Fill the rows listed in `missing` with the lexicographically first standard
// basis vectors keeping the matrix invertible.
Mat3 complete_rows(Mat3 m, const std::vector<int>& missing) {
    int n = m.order();
    for (size_t idx = 0; idx < missing.size(); ++idx) {
        int row = missing[idx];
        bool placed = false;
        for (int i = 0; i < 3 && !placed; ++i) {
            Mat3 trial = m;
            for (int c = 0; c < 3; ++c) trial.set(row, c, i == c ? gone(n) : gzero(n));
            // Later missing rows are still zero; test invertibility only when
            // this is the last one, otherwise test rank via a nonzero cofactor.
            if (idx + 1 == missing.size()) {
                if (!trial.det().is_zero()) {
                    m = trial;
                    placed = true;
                }
            } else {
                for (int r = 0; r < 3 && !placed; ++r)
                    for (int c = 0; c < 3 && !placed; ++c)
                        if (!cofactor(trial, r, c).is_zero()) {
                            m = trial;
                            placed = true;
                        }
            }
        }
        if (!placed) throw InvariantViolation("no basis vector completes the matrix");
    }
    return m;
}

} // namespace

ProjectiveMap lines_to_standard(const CurveConfiguration& config) {
    if (config.tag != ConfigTag::FourLines && config.tag != ConfigTag::TwoLinesConic)
        throw Error("lines_to_standard needs a four-line or two-lines-and-conic configuration");
    int n = config.n;
    std::vector<int> lines;
    for (size_t i = 0; i < config.components.size(); ++i)
        if (config.components[i].form.degree() == 1) lines.push_back(int(i));

    int inf_idx = lines.front();
    for (int i : lines)
        if (is_axis(config.components[i].form, 2)) {
            inf_idx = i;
            break;
        }
    std::vector<int> rest;
    for (int i : lines)
        if (i != inf_idx) rest.push_back(i);
    int x_idx = rest.front();
    for (int i : rest)
        if (is_axis(config.components[i].form, 0)) {
            x_idx = i;
            break;
        }

    Mat3 b = Mat3::zero(n);
    Vec3 xrow = line_coeffs(config.components[x_idx].form);
    Vec3 zrow = line_coeffs(config.components[inf_idx].form);
    for (int c = 0; c < 3; ++c) {
        b.set(0, c, xrow[c]);
        b.set(2, c, zrow[c]);
    }
    return ProjectiveMap(complete_rows(b, {1}));
}

ProjectiveMap line_to_infinite(const HomPoly& line) {
    if (line.degree() != 1 || line.is_zero()) throw Error("expected a nonzero linear form");
    Mat3 b = Mat3::zero(line.order());
    Vec3 zrow = line_coeffs(line);
    for (int c = 0; c < 3; ++c) b.set(2, c, zrow[c]);
    return ProjectiveMap(complete_rows(b, {0, 1}));
}

std::pair<GroundScalar, ProjectiveMap> shear_to_kill_top_y(const HomPoly& f) {
    int n = f.order();
    int d = f.degree();
    if (f.coeff(0, d).is_zero())
        return {gzero(n), ProjectiveMap::identity(n)};
    std::vector<GroundScalar> lead;
    for (int i = 0; i <= d; ++i) lead.push_back(f.coeff(i, d - i));
    XPoly p("x", gone(n), lead);
    if (p.degree() == 0)
        throw Unsupported("leading form is a pure power of the fiber variable; no shear removes it");
    std::vector<GroundScalar> roots = ground_roots(p);
    if (roots.empty())
        throw ExtensionRequired("the shear root of the leading form lies outside the ground field");
    GroundScalar a = roots.front();
    Mat3 b = Mat3::identity(n);
    b.set(0, 1, -a);
    return {a, ProjectiveMap(b)};
}

namespace {

GroundScalar half(int n) { return GroundScalar::from_rational(n, rat(1, 2)); }

bool conic_degenerate(const HomPoly& c) {
    int n = c.order();
    GroundScalar h = half(n);
    Mat3 s = Mat3::zero(n);
    s.set(0, 0, c.coeff(2, 0));
    s.set(1, 1, c.coeff(0, 2));
    s.set(2, 2, c.coeff(0, 0));
    s.set(0, 1, c.coeff(1, 1) * h);
    s.set(1, 0, c.coeff(1, 1) * h);
    s.set(0, 2, c.coeff(1, 0) * h);
    s.set(2, 0, c.coeff(1, 0) * h);
    s.set(1, 2, c.coeff(0, 1) * h);
    s.set(2, 1, c.coeff(0, 1) * h);
    return s.det().is_zero();
}

// All ground-field roots of a univariate polynomial with Lx coefficients are
// not needed here; conics specialize to plain ground polynomials.
UniPoly<GroundScalar> specialize_x(const BiPoly& p, const GroundScalar& x0) {
    int n = x0.order();
    std::vector<GroundScalar> cs;
    for (int j = 0; j <= p.degree(); ++j) cs.push_back(p.coeff(j).eval(x0));
    UniPoly<GroundScalar> u("y", gone(n), cs);
    return u;
}

std::optional<Vec3> common_affine_point(const HomPoly& c1, const HomPoly& c2) {
    int n = c1.order();
    Chart def;
    BiPoly a1 = c1.dehomogenize(def);
    BiPoly a2 = c2.dehomogenize(def);
    if (a1.is_zero() || a2.is_zero()) return std::nullopt;
    if (a1.degree() == 0 && a2.degree() == 0) {
        // Both conics are x-only in this chart; any shared root gives a line
        // of common points, which degenerate conics would have produced.
        XPoly g = poly_gcd(a1.coeff(0), a2.coeff(0));
        for (const GroundScalar& x0 : ground_roots(g))
            return Vec3{x0, gzero(n), gone(n)};
        return std::nullopt;
    }
    std::vector<GroundScalar> xs;
    if (a1.degree() == 0 || a2.degree() == 0) {
        const BiPoly& flat = a1.degree() == 0 ? a1 : a2;
        xs = ground_roots(flat.coeff(0));
    } else {
        YPoly y1 = ypoly_from_bipoly(a1);
        YPoly y2 = ypoly_from_bipoly(a2);
        Lx res = poly_resultant(y1, y2);
        if (res.is_zero())
            throw Error("the conics share a component");
        if (res.num().degree() == 0) return std::nullopt;
        xs = ground_roots(res.num());
    }
    for (const GroundScalar& x0 : xs) {
        UniPoly<GroundScalar> u1 = specialize_x(a1, x0);
        UniPoly<GroundScalar> u2 = specialize_x(a2, x0);
        if (u1.is_zero() || u2.is_zero())
            throw Error("the conics share a component");
        UniPoly<GroundScalar> h = poly_gcd(u1, u2);
        std::vector<GroundScalar> ys =
            h.degree() > 0 ? ground_roots(h) : std::vector<GroundScalar>{};
        for (const GroundScalar& y0 : ys) {
            Vec3 pt{x0, y0, gone(n)};
            if (c1.eval(pt).is_zero() && c2.eval(pt).is_zero()) return pt;
        }
    }
    return std::nullopt;
}

std::optional<Vec3> common_infinite_point(const HomPoly& c1, const HomPoly& c2) {
    int n = c1.order();
    // Points (s : 1 : 0) first.
    std::vector<GroundScalar> v1, v2;
    for (int i = 0; i <= 2; ++i) {
        v1.push_back(c1.coeff(i, 2 - i));
        v2.push_back(c2.coeff(i, 2 - i));
    }
    XPoly p1("s", gone(n), v1), p2("s", gone(n), v2);
    if (!p1.is_zero() && !p2.is_zero()) {
        XPoly g = poly_gcd(p1, p2);
        if (g.degree() > 0)
            for (const GroundScalar& s : ground_roots(g))
                return Vec3{s, gone(n), gzero(n)};
    }
    if (c1.coeff(2, 0).is_zero() && c2.coeff(2, 0).is_zero())
        return Vec3{gone(n), gzero(n), gzero(n)};
    return std::nullopt;
}

} // namespace

ConicsNormalization conics_common_point(const HomPoly& c1, const HomPoly& c2) {
    if (c1.degree() != 2 || c2.degree() != 2)
        throw Error("both inputs must be conics");
    if (conic_degenerate(c1) || conic_degenerate(c2))
        throw Error("conic component is degenerate (not geometrically irreducible)");
    if (c1.proportional_to(c2)) throw Error("repeated configuration component");

    std::optional<Vec3> pt = common_affine_point(c1, c2);
    if (!pt) pt = common_infinite_point(c1, c2);
    if (!pt)
        throw ExtensionRequired("the conics have no common point with ground-field coordinates");

    int n = c1.order();
    Mat3 m = Mat3::zero(n);
    for (int r = 0; r < 3; ++r) m.set(r, 1, (*pt)[r]);
    // Complete columns 0 and 2 with the first basis vectors keeping det != 0:
    // work on the transpose so the row completion helper applies.
    Mat3 mt = Mat3::zero(n);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) mt.set(c, r, m.at(r, c));
    mt = complete_rows(mt, {0, 2});
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.set(c, r, mt.at(r, c));

    ProjectiveMap map(m.inverse());
    for (const HomPoly* c : {&c1, &c2})
        if (!map.apply_to_form(*c).coeff(0, 2).is_zero())
            throw InvariantViolation("transformed conic keeps a Y^2 term");
    return ConicsNormalization{*pt, map};
}

QuarticNormalization quartic_monicize(const HomPoly& f) {
    int n = f.order();
    if (f.degree() != 4) throw Error("expected a quartic form");
    if (!f.coeff(0, 4).is_zero())
        throw Error("quartic still has a y^4 term; shear it away first");
    GroundScalar a1 = f.coeff(1, 3);
    GroundScalar a0 = f.coeff(0, 3);
    if (a1.is_zero() && a0.is_zero())
        throw Error("no y^3 term: the equation routes to a lower-degree case");

    if (a1.is_zero()) {
        BiPoly affine = f.dehomogenize(Chart{});
        YPoly g = ypoly_from_bipoly(affine).monic();
        if (g.degree() != 3)
            throw InvariantViolation("dividing by the y^3 coefficient lost the cubic term");
        return QuarticNormalization{ProjectiveMap::identity(n), g, false};
    }

    Mat3 b = Mat3::identity(n);
    b.set(0, 0, a1);
    b.set(0, 2, a0);
    Chart swapped{2, 1, 0};
    ProjectiveMap map(b, swapped);
    HomPoly moved = map.apply_to_form(f);
    BiPoly affine = moved.dehomogenize(swapped);
    YPoly g = ypoly_from_bipoly(affine);
    if (g.degree() != 3 || !g.lc().is_one())
        throw InvariantViolation("chart swap did not produce a monic cubic fiber equation");
    return QuarticNormalization{map, g, true};
}

BrauerPresentation apply_map_to_presentation(const BrauerPresentation& a,
                                             const ProjectiveMap& map) {
    BrauerPresentation out(a.order());
    for (const auto& [sym, exp] : a.terms())
        out.add(SymbolAlgebra(map.apply_to_slot(sym.a), map.apply_to_slot(sym.b), sym.n), exp);
    return out;
}

CurveConfiguration apply_map_to_configuration(const CurveConfiguration& config,
                                              const ProjectiveMap& map) {
    std::vector<CurveComponent> moved;
    for (const auto& comp : config.components)
        moved.push_back(CurveComponent{map.apply_to_form(comp.form), comp.irreducible_asserted});
    return classify_configuration(std::move(moved));
}

} // namespace tamesym
