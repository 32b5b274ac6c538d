#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "tamesym/factor.hpp"
#include "tamesym/fields.hpp"

using namespace tamesym;

namespace {

// Oracle: resultant as the determinant of the Sylvester matrix, computed by
// exact Gaussian elimination over the coefficient field.
template <class F>
F sylvester_resultant(const UniPoly<F>& a, const UniPoly<F>& b) {
    F one = a.unit();
    F zero = one - one;
    int m = a.degree(), n = b.degree();
    if (a.is_zero() || b.is_zero()) return zero;
    if (m == 0) return a.lc().pow(n);
    if (n == 0) return b.lc().pow(m);
    int size = m + n;
    std::vector<std::vector<F>> mat(size, std::vector<F>(size, zero));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) mat[r][r + i] = a.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) mat[n + r][r + i] = b.coeff(n - i);
    F det = one;
    for (int col = 0; col < size; ++col) {
        int pivot = -1;
        for (int r = col; r < size; ++r) {
            if (!(mat[r][col] == zero)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return zero;
        if (pivot != col) {
            std::swap(mat[pivot], mat[col]);
            det = -det;
        }
        det = det * mat[col][col];
        F inv = mat[col][col].inv();
        for (int c = col; c < size; ++c) mat[col][c] = mat[col][c] * inv;
        for (int r = col + 1; r < size; ++r) {
            F factor = mat[r][col];
            if (factor == zero) continue;
            for (int c = col; c < size; ++c) mat[r][c] = mat[r][c] - factor * mat[col][c];
        }
    }
    return det;
}

GroundScalar gs(int n, long v) { return GroundScalar::from_int(n, v); }

XPoly xp(int n, std::initializer_list<long> ascending) {
    std::vector<GroundScalar> cs;
    for (long v : ascending) cs.push_back(gs(n, v));
    return XPoly("x", GroundScalar::one(n), cs);
}

} // namespace

TEST_CASE("ground field: roots of unity behave") {
    auto r4 = GroundScalar::rho(4);
    CHECK(r4 * r4 == -GroundScalar::one(4));
    CHECK(r4.pow(4) == GroundScalar::one(4));

    auto r3 = GroundScalar::rho(3);
    CHECK(r3 + r3 * r3 == -GroundScalar::one(3));
    CHECK(r3.pow(3) == GroundScalar::one(3));

    auto r6 = GroundScalar::rho(6);
    CHECK(r6.pow(6) == GroundScalar::one(6));
    CHECK(r6.pow(3) == -GroundScalar::one(6));

    CHECK(GroundScalar::rho(2) == -GroundScalar::one(2));
    CHECK(GroundScalar::rho(1) == GroundScalar::one(1));
}

TEST_CASE("ground field: rational embedding and field axioms") {
    auto a = GroundScalar::from_rational(2, rat(3, 6));
    auto b = GroundScalar::from_rational(2, rat(1, 2));
    CHECK(a == b);
    CHECK((a + b).is_one());

    auto r = GroundScalar::rho(3);
    auto x = gs(3, 2) + r;
    CHECK(x * x.inv() == GroundScalar::one(3));
    CHECK((x - x).is_zero());
    CHECK(x.pow(-2) == (x * x).inv());
}

TEST_CASE("ground field: conjugation and norm") {
    auto r = GroundScalar::rho(3);
    auto x = gs(3, 1) + gs(3, 2) * r;
    auto xbar = x.conjugate(2);
    CHECK((x * xbar).is_rational());
    CHECK(x.norm_to_q() == (x * xbar).rational_value());
    // 1 + 2*rho with rho^2 + rho + 1 = 0: norm = 1 - 2 + 4 = 3.
    CHECK(x.norm_to_q() == rat(3));

    auto i = GroundScalar::rho(4);
    auto z = gs(4, 3) + gs(4, 4) * i;
    CHECK(z.norm_to_q() == rat(25));
}

TEST_CASE("ground field: exact square roots") {
    auto n9 = GroundScalar::from_int(2, 9).sqrt();
    REQUIRE(n9.has_value());
    CHECK(*n9 * *n9 == gs(2, 9));
    CHECK_FALSE(GroundScalar::from_int(2, 2).sqrt().has_value());

    // In Q(i): sqrt(2i) = 1 + i.
    auto i = GroundScalar::rho(4);
    auto s = (gs(4, 2) * i).sqrt();
    REQUIRE(s.has_value());
    CHECK(*s * *s == gs(4, 2) * i);

    // Any reported square root must verify by squaring.
    auto r = GroundScalar::rho(3);
    for (const auto& cand : {r * r, gs(3, 4) + r, -GroundScalar::one(3)}) {
        auto root = cand.sqrt();
        if (root) CHECK(*root * *root == cand);
    }

    // -1 is a square in Q(i) but not in Q(rho3) or Q.
    auto m4 = (-GroundScalar::one(4)).sqrt();
    REQUIRE(m4.has_value());
    CHECK(*m4 * *m4 == -GroundScalar::one(4));
    CHECK_FALSE((-GroundScalar::one(2)).sqrt().has_value());
    CHECK_FALSE((-GroundScalar::one(3)).sqrt().has_value());
}

TEST_CASE("univariate polynomials: division, gcd, multiplicity") {
    auto f = xp(2, {-1, 0, 1});      // x^2 - 1
    auto g = xp(2, {1, 1});          // x + 1
    auto [q, r] = poly_divmod(f, g);
    CHECK(r.is_zero());
    CHECK(q == xp(2, {-1, 1}));

    auto h = f * f * g;
    CHECK(poly_multiplicity(h, g) == 3);
    CHECK(poly_gcd(h, f * g) == (f * g).monic());

    auto one = poly_gcd(xp(2, {1, 1}), xp(2, {2, 1}));
    CHECK(one.degree() == 0);
}

TEST_CASE("univariate polynomials: extended gcd certificate") {
    auto a = xp(2, {0, -1, 0, 1});   // x^3 - x
    auto b = xp(2, {-2, 0, 1});      // x^2 - 2
    auto [g, u, v] = poly_ext_gcd(a, b);
    CHECK(u * a + v * b == g);
    CHECK(g.lc().is_one());
}

TEST_CASE("resultant matches Sylvester determinant oracle") {
    std::mt19937_64 rng(42);
    auto rnd_poly = [&](int n, int maxdeg) {
        std::uniform_int_distribution<int> degd(0, maxdeg);
        std::uniform_int_distribution<long> cd(-5, 5);
        int d = degd(rng);
        std::vector<GroundScalar> cs;
        for (int i = 0; i <= d; ++i) cs.push_back(gs(n, cd(rng)));
        return XPoly("x", GroundScalar::one(n), cs);
    };
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = (trial % 2 == 0) ? 2 : 3;
        auto a = rnd_poly(n, 4);
        auto b = rnd_poly(n, 4);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(poly_resultant(a, b) == sylvester_resultant(a, b));
        ++checked;
    }
    CHECK(checked > 40);
}

TEST_CASE("rational functions: canonical reduction") {
    auto num = xp(2, {-1, 0, 1});    // x^2 - 1
    auto den = xp(2, {2, 2});        // 2x + 2
    Lx f(num, den);
    CHECK(f.den().is_one());
    CHECK(f.num() == xp(2, {-1, 1}).scaled(GroundScalar::from_rational(2, rat(1, 2))));

    auto g = f * f.inv();
    CHECK(g.is_one());
    CHECK((f - f).is_zero());

    Lx x = lx_var(2);
    CHECK((x / x).is_one());
    CHECK_THROWS_AS(x / lx_zero(2), Error);
}

TEST_CASE("squarefree decomposition: Yun against hand-built products") {
    auto p1 = xp(2, {1, 1});         // x + 1
    auto p2 = xp(2, {-2, 1});        // x - 2
    auto p3 = xp(2, {1, 0, 1});      // x^2 + 1
    auto f = p1 * p2 * p2 * p3 * p3 * p3;
    auto parts = squarefree_decomposition(f.scaled(gs(2, 7)));
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].first == p1.monic());
    CHECK(parts[0].second == 1);
    CHECK(parts[1].first == p2.monic());
    CHECK(parts[1].second == 2);
    CHECK(parts[2].first == p3.monic());
    CHECK(parts[2].second == 3);

    // Reconstruction and pairwise coprimality on random products.
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> cd(-4, 4);
    std::uniform_int_distribution<int> md(1, 3);
    for (int trial = 0; trial < 20; ++trial) {
        XPoly prod = xpoly_one(2);
        for (int k = 0; k < 3; ++k) {
            XPoly factor = XPoly("x", GroundScalar::one(2),
                                 {gs(2, cd(rng)), gs(2, cd(rng)), GroundScalar::one(2)});
            int m = md(rng);
            for (int i = 0; i < m; ++i) prod = prod * factor;
        }
        auto dec = squarefree_decomposition(prod);
        XPoly rebuilt = xpoly_one(2);
        for (const auto& [part, mult] : dec) {
            CHECK(poly_gcd(part, part.derivative()).degree() == 0);
            for (int i = 0; i < mult; ++i) rebuilt = rebuilt * part;
        }
        CHECK(rebuilt == prod.monic());
        for (size_t i = 0; i < dec.size(); ++i)
            for (size_t j = i + 1; j < dec.size(); ++j)
                CHECK(poly_gcd(dec[i].first, dec[j].first).degree() == 0);
    }
}

TEST_CASE("coprime basis: refinement properties") {
    auto a = xp(2, {0, 1});            // x
    auto b = xp(2, {1, 1});            // x + 1
    auto c = xp(2, {-1, 1});           // x - 1
    std::vector<XPoly> inputs = {a * b, b * c, a * c};
    auto basis = coprime_basis(inputs);
    REQUIRE(basis.size() == 3);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j)
            CHECK(poly_gcd(basis[i], basis[j]).degree() == 0);
    // Every input must be a product of basis elements (constant cofactor).
    for (const auto& in : inputs) {
        XPoly rem = in.monic();
        for (const auto& e : basis) {
            int m = poly_multiplicity(rem, e);
            for (int i = 0; i < m; ++i) rem = poly_exact_div(rem, e);
        }
        CHECK(rem.degree() == 0);
    }
}

TEST_CASE("root search: rational and quadratic-field roots") {
    // (x - 2)(x + 1/3)(x^2 + 1) over Q.
    auto f = xp(2, {-2, 1}) * XPoly("x", GroundScalar::one(2),
                                    {GroundScalar::from_rational(2, rat(1, 3)), GroundScalar::one(2)}) *
             xp(2, {1, 0, 1});
    auto roots = ground_roots(f);
    REQUIRE(roots.size() == 2);
    // Ascending height: 2 before -1/3.
    CHECK(roots[0] == gs(2, 2));
    CHECK(roots[1] == GroundScalar::from_rational(2, rat(-1, 3)));

    // Same polynomial over Q(i): picks up +-i as well.
    auto f4 = xp(4, {-2, 1}) * xp(4, {1, 0, 1});
    auto roots4 = ground_roots(f4);
    REQUIRE(roots4.size() == 3);
    auto i = GroundScalar::rho(4);
    CHECK(std::count(roots4.begin(), roots4.end(), i) == 1);
    CHECK(std::count(roots4.begin(), roots4.end(), -i) == 1);

    // x^2 + x + 1 over Q(rho3): roots are rho and rho^2.
    auto g = xp(3, {1, 1, 1});
    auto roots3 = ground_roots(g);
    REQUIRE(roots3.size() == 2);
    auto r = GroundScalar::rho(3);
    CHECK(std::count(roots3.begin(), roots3.end(), r) == 1);
    CHECK(std::count(roots3.begin(), roots3.end(), r * r) == 1);

    CHECK(ground_roots(xp(2, {1, 0, 0, 0, 1})).empty());
    CHECK(rational_root_search(xp(2, {5, 1})).value() == gs(2, -5));
}

TEST_CASE("factorization: products of known irreducibles") {
    // (x^2 + 1)^2 (x - 3) over Q.
    auto f = xp(2, {1, 0, 1}) * xp(2, {1, 0, 1}) * xp(2, {-3, 1});
    auto fac = univariate_factor(f);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].first == xp(2, {-3, 1}));
    CHECK(fac.factors[0].second == 1);
    CHECK(fac.factors[1].first == xp(2, {1, 0, 1}));
    CHECK(fac.factors[1].second == 2);
    CHECK(fac.lead.is_one());

    // x^4 + 1 is irreducible over Q but splits over Q(i).
    auto q = xp(2, {1, 0, 0, 0, 1});
    auto qf = univariate_factor(q);
    REQUIRE(qf.factors.size() == 1);
    CHECK(qf.factors[0].first.degree() == 4);
    CHECK(ground_irreducible(q));

    auto q4 = xp(4, {1, 0, 0, 0, 1});
    auto qf4 = univariate_factor(q4);
    REQUIRE(qf4.factors.size() == 2);
    XPoly rebuilt = xpoly_one(4);
    for (const auto& [p, m] : qf4.factors) {
        CHECK(p.degree() == 2);
        CHECK(m == 1);
        rebuilt = rebuilt * p;
    }
    CHECK(rebuilt == q4);

    // x^6 - 1 over Q: full cyclotomic split.
    auto s = xp(2, {-1, 0, 0, 0, 0, 0, 1});
    auto sf = univariate_factor(s);
    XPoly prod = xpoly_one(2);
    int total = 0;
    for (const auto& [p, m] : sf.factors) {
        total += p.degree() * m;
        for (int i = 0; i < m; ++i) prod = prod * p;
    }
    CHECK(total == 6);
    CHECK(prod == s);
    CHECK(sf.factors.size() == 4);
}

TEST_CASE("factorization: degree bound raises Unsupported") {
    std::vector<GroundScalar> cs(10, GroundScalar::zero(2));
    cs[0] = gs(2, 1);
    cs.push_back(GroundScalar::one(2)); // degree 10
    XPoly big("x", GroundScalar::one(2), cs);
    CHECK_THROWS_AS(univariate_factor(big, 8), Unsupported);
}
