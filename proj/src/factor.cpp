#include "tamesym/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "tamesym/errors.hpp"

namespace tamesym {
namespace {

using GS = GroundScalar;
using Poly = UniPoly<GS>;

bool is_rational_poly(const Poly& p) {
    for (const auto& c : p.coeffs())
        if (!c.is_rational()) return false;
    return true;
}

// Height of a ground element: max of |numerator|, |denominator| over coords.
Int height(const GS& a) {
    Int h = 0;
    for (const auto& q : a.coords()) {
        Int num = abs(q.get_num());
        Int den = abs(q.get_den());
        if (num > h) h = num;
        if (den > h) h = den;
    }
    return h;
}

bool ground_less(const GS& a, const GS& b) {
    Int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    const auto& ca = a.coords();
    const auto& cb = b.coords();
    for (size_t i = 0; i < ca.size() && i < cb.size(); ++i) {
        if (ca[i] != cb[i]) return ca[i] < cb[i];
    }
    return ca.size() < cb.size();
}

// Positive divisors of |m|, via trial division. Remainders that survive the
// trial bound must be (probable) primes or the enumeration is incomplete.
std::vector<Int> positive_divisors(Int m, long trial_bound = 1000000) {
    m = abs(m);
    if (m == 0) throw Error("divisor enumeration of zero");
    std::map<Int, int> primes;
    Int d = 2;
    while (d * d <= m && d <= trial_bound) {
        while (m % d == 0) {
            ++primes[d];
            m /= d;
        }
        d += (d == 2) ? 1 : 2;
    }
    if (m > 1) {
        if (mpz_probab_prime_p(m.get_mpz_t(), 40) == 0)
            throw Unsupported("integer factorization bound exceeded during root search");
        ++primes[m];
    }
    std::vector<Int> divs = {Int(1)};
    for (const auto& [p, e] : primes) {
        size_t base = divs.size();
        Int pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Rational coefficient vector of a rational-coefficient polynomial.
std::vector<Rational> rational_coeffs(const Poly& p) {
    std::vector<Rational> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(c.rational_value());
    return out;
}

Poly poly_from_rationals(const Poly& model, const std::vector<Rational>& cs) {
    int n = model.unit().order();
    std::vector<GS> gs;
    gs.reserve(cs.size());
    for (const auto& q : cs) gs.push_back(GS::from_rational(n, q));
    return Poly(model.var(), model.unit(), gs);
}

// Distinct rational roots of a rational-coefficient polynomial, complete by
// the rational root theorem on the primitive integer model.
std::vector<Rational> rational_roots(const Poly& p) {
    if (p.is_zero()) throw Error("root search on zero polynomial");
    std::vector<Rational> roots;
    if (p.degree() == 0) return roots;
    std::vector<Rational> cs = rational_coeffs(p);
    size_t low = 0;
    while (low < cs.size() && cs[low] == 0) ++low;
    if (low > 0) roots.push_back(Rational(0));
    if (low + 1 >= cs.size()) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    // Clear denominators and content: integer primitive coefficients.
    Int den_lcm = 1;
    for (size_t i = low; i < cs.size(); ++i) {
        Int d = cs[i].get_den();
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    std::vector<Int> ic;
    for (size_t i = low; i < cs.size(); ++i) {
        Rational scaled = cs[i] * Rational(den_lcm);
        ic.push_back(scaled.get_num());
    }
    Int content = 0;
    for (const auto& v : ic) content = gcd(content, v);
    for (auto& v : ic) v /= content;
    std::vector<Int> pnum = positive_divisors(ic.front());
    std::vector<Int> pden = positive_divisors(ic.back());
    std::set<Rational> seen;
    for (const auto& a : pnum) {
        for (const auto& b : pden) {
            for (int sign = 0; sign < 2; ++sign) {
                Rational cand(sign ? -a : a, b);
                cand.canonicalize();
                if (!seen.insert(cand).second) continue;
                // Horner on the integer model, exact.
                Rational acc = 0;
                for (size_t i = ic.size(); i-- > 0;) acc = acc * cand + Rational(ic[i]);
                if (acc == 0) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Smallest j in (1, n) coprime to n: the generator list of conjugations.
std::vector<int> conjugation_exponents(int n) {
    std::vector<int> out;
    for (int j = 2; j < n; ++j) {
        bool cop = std::gcd(j, n) == 1;
        if (cop) out.push_back(j);
    }
    return out;
}

Poly conjugate_poly(const Poly& p, int j) {
    std::vector<GS> cs;
    cs.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) cs.push_back(c.conjugate(j));
    return Poly(p.var(), p.unit(), cs);
}

// Gcd over Q of the coordinate polynomials: the largest rational-coefficient
// monic divisor capturing every rational root of p.
Poly rational_root_carrier(const Poly& p) {
    size_t phi = GS::phi(p.unit().order());
    Poly g = p.zero_like();
    for (size_t j = 0; j < phi; ++j) {
        std::vector<Rational> cj;
        cj.reserve(p.coeffs().size());
        for (const auto& c : p.coeffs()) {
            const auto& coords = c.coords();
            cj.push_back(j < coords.size() ? coords[j] : Rational(0));
        }
        Poly pj = poly_from_rationals(p, cj);
        g = g.is_zero() ? (pj.is_zero() ? g : pj.monic()) : poly_gcd(g, pj);
        if (!g.is_zero() && g.degree() == 0) break;
    }
    return g.is_zero() ? p.zero_like() : g;
}

// Forward declaration: squarefree rational-coefficient factorization over Q.
std::vector<Poly> q_factor_squarefree(const Poly& f, int bound);

// Kronecker search for a proper factor of a squarefree, rational-rootless,
// primitive integer polynomial of degree >= 4. Returns a monic rational
// factor, or nullopt when f is irreducible over Q.
std::optional<Poly> kronecker_factor(const Poly& f, int bound) {
    int d = f.degree();
    if (d > bound) throw Unsupported("factorization degree exceeds configured bound");
    std::vector<Rational> cs = rational_coeffs(f);
    Int den_lcm = 1;
    for (const auto& q : cs) {
        Int dd = q.get_den();
        den_lcm = den_lcm / gcd(den_lcm, dd) * dd;
    }
    std::vector<Int> ic;
    for (const auto& q : cs) ic.push_back(Rational(q * Rational(den_lcm)).get_num());
    Int content = 0;
    for (const auto& v : ic) content = gcd(content, v);
    for (auto& v : ic) v /= content;

    auto eval_int = [&](const Int& x) {
        Int acc = 0;
        for (size_t i = ic.size(); i-- > 0;) acc = acc * x + ic[i];
        return acc;
    };

    for (int m = 2; m <= d / 2; ++m) {
        // Integer sample points 0, 1, -1, 2, -2, ...
        std::vector<Int> xs;
        Int next = 0;
        while ((int)xs.size() < m + 1) {
            if (eval_int(next) != 0) xs.push_back(next);
            next = (next > 0) ? Int(-next) : Int(-next + 1);
        }
        std::vector<std::vector<Int>> choices;
        for (const auto& x : xs) {
            std::vector<Int> ds = positive_divisors(eval_int(x));
            std::vector<Int> signed_ds;
            // Factor sign is free: pin the first sample value positive.
            for (const auto& v : ds) {
                signed_ds.push_back(v);
                if (!choices.empty()) signed_ds.push_back(-v);
            }
            choices.push_back(std::move(signed_ds));
        }
        double space = 1.0;
        for (const auto& c : choices) space *= c.size();
        if (space > 400000.0)
            throw Unsupported("factorization search space too large");

        std::vector<size_t> idx(xs.size(), 0);
        int n = f.unit().order();
        while (true) {
            // Lagrange interpolation through (xs[i], choices[i][idx[i]]).
            Poly cand = f.zero_like();
            for (size_t i = 0; i < xs.size(); ++i) {
                Poly term = Poly::constant(f.var(), GS::from_rational(n, Rational(choices[i][idx[i]])));
                for (size_t j = 0; j < xs.size(); ++j) {
                    if (j == i) continue;
                    Rational diff = Rational(xs[i]) - Rational(xs[j]);
                    Poly lin = Poly::variable(f.var(), f.unit()) -
                               Poly::constant(f.var(), GS::from_rational(n, Rational(xs[j])));
                    term = term * lin.scaled(GS::from_rational(n, Rational(1) / diff));
                }
                cand = cand + term;
            }
            if (cand.degree() == m) {
                auto [quot, rem] = poly_divmod(f, cand.monic());
                if (rem.is_zero()) return cand.monic();
            }
            // Advance the mixed-radix counter.
            size_t k = 0;
            while (k < idx.size()) {
                if (++idx[k] < choices[k].size()) break;
                idx[k] = 0;
                ++k;
            }
            if (k == idx.size()) break;
        }
    }
    return std::nullopt;
}

std::vector<Poly> q_factor_squarefree(const Poly& f, int bound) {
    std::vector<Poly> out;
    Poly rem = f.monic();
    for (const auto& r : rational_roots(rem)) {
        Poly lin = Poly::variable(f.var(), f.unit()) -
                   Poly::constant(f.var(), GS::from_rational(f.unit().order(), r));
        out.push_back(lin);
        rem = poly_exact_div(rem, lin);
    }
    if (rem.degree() == 0) return out;
    if (rem.degree() <= 3) {
        out.push_back(rem);
        return out;
    }
    auto g = kronecker_factor(rem, bound);
    if (!g) {
        out.push_back(rem);
        return out;
    }
    for (auto& part : q_factor_squarefree(*g, bound)) out.push_back(std::move(part));
    for (auto& part : q_factor_squarefree(poly_exact_div(rem, *g), bound)) out.push_back(std::move(part));
    return out;
}

// Splits a rootless quartic over the ground field into two quadratics when
// possible; complete given exact cubic root search and exact square roots.
std::optional<std::pair<Poly, Poly>> quartic_split(const Poly& f);

// Factors a squarefree, ground-rootless polynomial over Q(rho). Linear
// factors are impossible by construction.
std::vector<Poly> ground_factor_rootless(const Poly& f, int bound) {
    std::vector<Poly> out;
    if (f.degree() == 0) return out;
    if (f.degree() <= 3) {
        out.push_back(f.monic());
        return out;
    }
    if (f.degree() == 4) {
        auto split = quartic_split(f.monic());
        if (!split) {
            out.push_back(f.monic());
            return out;
        }
        // Both halves are rootless quadratics, hence irreducible.
        out.push_back(split->first);
        out.push_back(split->second);
        return out;
    }
    if (is_rational_poly(f)) {
        size_t phi = GS::phi(f.unit().order());
        std::vector<Poly> qparts = q_factor_squarefree(f.monic(), bound);
        if (phi == 1) return qparts;
        // Refine each Q-irreducible part over the quadratic ground field.
        for (const auto& part : qparts) {
            if (part.degree() <= 1 || part.degree() % 2 == 1) {
                // Odd-degree Q-irreducible polynomials stay irreducible over
                // a quadratic extension.
                out.push_back(part);
            } else if (part.degree() == 2) {
                auto roots = ground_roots(part);
                if (roots.empty()) {
                    out.push_back(part);
                } else {
                    for (const auto& r : roots)
                        out.push_back(Poly::variable(f.var(), f.unit()) -
                                      Poly::constant(f.var(), r));
                }
            } else if (part.degree() == 4) {
                auto roots = ground_roots(part);
                Poly r4 = part;
                for (const auto& r : roots) {
                    Poly lin = Poly::variable(f.var(), f.unit()) - Poly::constant(f.var(), r);
                    out.push_back(lin);
                    r4 = poly_exact_div(r4, lin);
                }
                for (auto& piece : ground_factor_rootless(r4, bound)) out.push_back(std::move(piece));
            } else {
                throw Unsupported(
                    "refining a degree >= 6 rational factor over a complex ground field "
                    "is outside the supported envelope");
            }
        }
        return out;
    }
    throw Unsupported("factorization of irrational polynomials above degree 4 "
                      "is outside the supported envelope");
}

std::optional<std::pair<Poly, Poly>> quartic_split(const Poly& f) {
    // Depress: f(t) = g(t - c3/4) with g = t^4 + p t^2 + q t + r.
    GS c3 = f.coeff(3);
    GS quarter = GS::from_rational(f.unit().order(), Rational(1, 4));
    GS shift = -(c3 * quarter);
    Poly t = Poly::variable(f.var(), f.unit());
    Poly dep = f.compose(t + Poly::constant(f.var(), shift));
    GS p = dep.coeff(2), q = dep.coeff(1), r = dep.coeff(0);
    GS two = GS::from_int(f.unit().order(), 2);

    auto assemble = [&](const GS& a, const GS& b, const GS& c) -> std::optional<std::pair<Poly, Poly>> {
        Poly g1 = t * t + t.scaled(a) + Poly::constant(f.var(), b);
        Poly g2 = t * t - t.scaled(a) + Poly::constant(f.var(), c);
        if (g1 * g2 != dep) return std::nullopt;
        // Undo the depression shift.
        Poly back = t - Poly::constant(f.var(), shift);
        return std::make_pair(g1.compose(back).monic(), g2.compose(back).monic());
    };

    if (q.is_zero()) {
        // Biquadratic: try t^2 = w splits, then the symmetric split.
        GS disc = p * p - GS::from_int(f.unit().order(), 4) * r;
        if (auto s = disc.sqrt()) {
            GS w1 = (-p + *s) / two;
            GS w2 = (-p - *s) / two;
            Poly g1 = t * t - Poly::constant(f.var(), w1);
            Poly g2 = t * t - Poly::constant(f.var(), w2);
            if (g1 * g2 == dep) {
                Poly back = t - Poly::constant(f.var(), shift);
                return std::make_pair(g1.compose(back).monic(), g2.compose(back).monic());
            }
        }
        if (auto b = r.sqrt()) {
            for (int sgn = 0; sgn < 2; ++sgn) {
                GS bb = sgn ? -*b : *b;
                GS a2 = two * bb - p;
                if (auto a = a2.sqrt()) {
                    auto res = assemble(*a, bb, bb);
                    if (res) return res;
                }
            }
        }
        return std::nullopt;
    }

    // Resolvent cubic in z = a^2: z^3 + 2p z^2 + (p^2 - 4r) z - q^2 = 0.
    Poly z = Poly::variable("z", f.unit());
    Poly resolvent = z * z * z + (z * z).scaled(two * p) +
                     z.scaled(p * p - GS::from_int(f.unit().order(), 4) * r) -
                     Poly::constant("z", q * q);
    for (const auto& zr : ground_roots(resolvent)) {
        if (zr.is_zero()) continue;
        auto a = zr.sqrt();
        if (!a) continue;
        // b + c = p + a^2, c - b = q / a.
        GS sum = p + zr;
        GS diff = q / *a;
        GS b = (sum - diff) / two;
        GS c = (sum + diff) / two;
        auto res = assemble(*a, b, c);
        if (res) return res;
    }
    return std::nullopt;
}

} // namespace

std::vector<GroundScalar> ground_roots(const Poly& p) {
    if (p.is_zero()) throw Error("root search on zero polynomial");
    std::vector<GS> roots;
    if (p.degree() == 0) return roots;
    int n = p.unit().order();
    size_t phi = GS::phi(n);

    Poly carrier = rational_root_carrier(p);
    if (carrier.degree() > 0) {
        for (const auto& r : rational_roots(carrier)) roots.push_back(GS::from_rational(n, r));
    }

    if (phi == 2) {
        auto js = conjugation_exponents(n);
        Poly h = p.monic();
        for (int j : js) h = poly_gcd(h, conjugate_poly(p, j).monic());
        if (!is_rational_poly(h))
            throw InvariantViolation("conjugation-stable gcd has irrational coefficients");
        // Strip the rational-root linears already found, then scan quadratics.
        Poly rem = h;
        for (const auto& r : roots) {
            Poly lin = Poly::variable(p.var(), p.unit()) - Poly::constant(p.var(), r);
            while (true) {
                auto [quot, remr] = poly_divmod(rem, lin);
                if (!remr.is_zero()) break;
                rem = quot;
            }
        }
        if (rem.degree() > 0) {
            Poly sqf = squarefree_part(rem);
            for (const auto& part : q_factor_squarefree(sqf, 8)) {
                if (part.degree() != 2) continue;
                GS b = part.coeff(1), c = part.coeff(0);
                GS disc = b * b - GS::from_int(n, 4) * c;
                if (auto s = disc.sqrt()) {
                    GS two = GS::from_int(n, 2);
                    roots.push_back((-b + *s) / two);
                    roots.push_back((-b - *s) / two);
                }
            }
        }
    } else if (phi > 2) {
        // Only rational roots are decidable here; make sure nothing else can
        // hide in a conjugation-stable factor.
        auto js = conjugation_exponents(n);
        Poly h = p.monic();
        for (int j : js) h = poly_gcd(h, conjugate_poly(p, j).monic());
        Poly rem = h;
        for (const auto& r : roots) {
            Poly lin = Poly::variable(p.var(), p.unit()) - Poly::constant(p.var(), r);
            while (true) {
                auto [quot, remr] = poly_divmod(rem, lin);
                if (!remr.is_zero()) break;
                rem = quot;
            }
        }
        if (rem.degree() > 0)
            throw Unsupported("root search over ground fields of degree > 2 is limited "
                              "to rational roots");
    }

    for (const auto& r : roots)
        if (!p.eval(r).is_zero()) throw InvariantViolation("root candidate fails evaluation");
    std::sort(roots.begin(), roots.end(), ground_less);
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::optional<GroundScalar> rational_root_search(const Poly& p) {
    auto roots = ground_roots(p);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

GroundFactorization univariate_factor(const Poly& p, int bound) {
    if (p.is_zero()) throw Error("factorization of zero");
    if (p.degree() > bound) throw Unsupported("factorization degree exceeds configured bound");
    GroundFactorization out{p.lc(), {}};
    if (p.degree() == 0) return out;
    for (const auto& [part, mult] : squarefree_decomposition(p)) {
        // Peel ground roots first so the remainder is rootless.
        Poly rem = part;
        for (const auto& r : ground_roots(part)) {
            Poly lin = Poly::variable(p.var(), p.unit()) - Poly::constant(p.var(), r);
            out.factors.emplace_back(lin, mult);
            rem = poly_exact_div(rem, lin);
        }
        for (auto& piece : ground_factor_rootless(rem, bound))
            out.factors.emplace_back(std::move(piece), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.to_string() < b.first.to_string();
    });
    return out;
}

bool ground_irreducible(const Poly& p, int bound) {
    if (p.degree() <= 0) return false;
    auto f = univariate_factor(p, bound);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

} // namespace tamesym
