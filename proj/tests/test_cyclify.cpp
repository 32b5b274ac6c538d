#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tamesym/cyclify.hpp"
#include "tamesym/factor.hpp"

using namespace tamesym;

namespace {

Lx lxp(int n, std::initializer_list<long> ascending) {
    std::vector<GroundScalar> cs;
    for (long v : ascending) cs.push_back(GroundScalar::from_int(n, v));
    return lx_of(XPoly("x", GroundScalar::one(n), cs));
}

YPoly yp(int n, std::initializer_list<Lx> ascending) {
    return YPoly("y", lx_one(n), std::vector<Lx>(ascending));
}

Lx lint(int n, long v) { return lx_const(GroundScalar::from_int(n, v)); }

ClosedPoint at_lin(const Lx& root) {
    int n = root.num().unit().order();
    return ClosedPoint::finite(yp(n, {-root, lx_one(n)}));
}

bool has_row(const ConstructionReport& rep, const ClosedPoint& p, RowStatus s) {
    for (const auto& row : rep.rows) {
        bool same = row.point.is_infinite() == p.is_infinite() &&
                    (p.is_infinite() || row.point.modulus() == p.modulus());
        if (same && row.status == s) return true;
    }
    return false;
}

int count_status(const ConstructionReport& rep, RowStatus s) {
    int c = 0;
    for (const auto& row : rep.rows)
        if (row.status == s) ++c;
    return c;
}

} // namespace

TEST_CASE("fractional-linear substitutions compose and invert") {
    int n = 2;
    Mobius id = Mobius::identity(n);
    CHECK(id.as_yrat() == yrat_of(ypoly_var(n)));
    CHECK(id.determinant().is_one());

    // t -> (t + 1) / (t - x)
    Mobius m{lx_one(n), lint(n, 1), lx_one(n), -lxp(n, {0, 1})};
    CHECK_FALSE(m.determinant().is_zero());

    // Composite c = "first m, then s" acts as s(m(p)) on points.
    Mobius s{lx_zero(n), lx_one(n), lx_one(n), lx_zero(n)}; // t -> 1/t
    Mobius c = m.then(s);
    Lx p = lint(n, 2);
    auto via_c = c.apply(p);
    auto via_steps = s.apply(m.apply(p));
    REQUIRE(via_c);
    REQUIRE(via_steps);
    CHECK(*via_c == *via_steps);

    // On functions the composite substitutes inside-out.
    YRat g = yrat_of(yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_one(n)})); // y^2 - x
    CHECK(c.substitute(g) == m.substitute(s.substitute(g)));

    // Round trips through the inverse.
    Mobius minv = m.inverse();
    CHECK(m.then(minv).as_yrat() == yrat_of(ypoly_var(n)));
    auto back = minv.apply(m.apply(p));
    REQUIRE(back);
    CHECK(*back == p);
    CHECK(minv.substitute(m.substitute(g)) == g);

    // Poles and the infinite point.
    CHECK_FALSE(m.apply(lxp(n, {0, 1})).has_value()); // p = x is the pole
    auto img_inf = m.apply(std::nullopt);
    REQUIRE(img_inf);
    CHECK(img_inf->is_one()); // alpha/gamma

    Mobius degenerate{lx_one(n), lx_one(n), lx_one(n), lx_one(n)};
    CHECK_THROWS_AS(degenerate.inverse(), Error);
}

TEST_CASE("normalization sends marked points to 0, 1, infinity") {
    int n = 2;
    Lx a = lxp(n, {0, 1}), b = lxp(n, {1, 1}); // x and x + 1

    // Three points (a, b, infinity): the classical (t - a)/(b - a).
    Mobius m = mobius_normalize({at_lin(a), at_lin(b), ClosedPoint::infinity(n)});
    CHECK(m.as_yrat() == yrat_of(yp(n, {-a, lx_one(n)}).scaled((b - a).inv())));

    // (0, 1, infinity) is already normalized.
    Mobius id = mobius_normalize(
        {at_lin(lx_zero(n)), at_lin(lx_one(n)), ClosedPoint::infinity(n)});
    CHECK(id.as_yrat() == yrat_of(ypoly_var(n)));

    // Two given points are padded from the virtual sequence skipping them:
    // (infinity, 0) picks 1 as the third point.
    Mobius m2 = mobius_normalize({ClosedPoint::infinity(n), at_lin(lx_zero(n))});
    auto i0 = m2.apply(std::nullopt);
    auto i1 = m2.apply(lx_zero(n));
    REQUIRE(i0);
    REQUIRE(i1);
    CHECK(i0->is_zero());
    CHECK(i1->is_one());
    CHECK_FALSE(m2.apply(lx_one(n)).has_value());

    // One given point: (2) is padded with (infinity, 0).
    Mobius m3 = mobius_normalize({at_lin(lint(n, 2))});
    auto j0 = m3.apply(lint(n, 2));
    auto j1 = m3.apply(std::nullopt);
    REQUIRE(j0);
    REQUIRE(j1);
    CHECK(j0->is_zero());
    CHECK(j1->is_one());
    CHECK_FALSE(m3.apply(lx_zero(n)).has_value());

    // General position with no infinite point.
    Mobius m4 = mobius_normalize({at_lin(a), at_lin(b), at_lin(lx_zero(n))});
    auto k0 = m4.apply(a);
    auto k1 = m4.apply(b);
    REQUIRE(k0);
    REQUIRE(k1);
    CHECK(k0->is_zero());
    CHECK(k1->is_one());
    CHECK_FALSE(m4.apply(lx_zero(n)).has_value());

    CHECK_THROWS_AS(mobius_normalize({}), Error);
    CHECK_THROWS_AS(mobius_normalize({at_lin(a), at_lin(a)}), Error);
    CHECK_THROWS_AS(mobius_normalize(
                        {ClosedPoint::infinity(n), ClosedPoint::infinity(n)}),
                    Error);
    CHECK_THROWS_AS(
        mobius_normalize({ClosedPoint::finite(yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_one(n)}))}),
        Error); // degree-2 point has no coordinate in l
    CHECK_THROWS_AS(mobius_normalize({at_lin(a), at_lin(b), ClosedPoint::infinity(n),
                                      at_lin(lx_zero(n))}),
                    Error);
}

TEST_CASE("three-linear construction places both targets exactly") {
    int n = 2;
    Lx b1 = lxp(n, {0, 1}), b2 = lxp(n, {1, 1});
    CyclicOutput out = construct_three_linear(b1, b2, n);

    CHECK(out.tag == CyclifyCase::ThreeLinear);
    CHECK_FALSE(out.slots_swapped);
    // ((x+1) t, -x^{-1} (t - 1))
    CHECK(out.symbol.a == yrat_of(ypoly_var(n).scaled(b2)));
    CHECK(out.symbol.b == yrat_of(yp(n, {lx_one(n), -lx_one(n)}).scaled(b1.inv())));

    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(rep.reciprocity_ok);
    CHECK(has_row(rep, ClosedPoint::finite(ypoly_var(n)), RowStatus::PrescribedMatch));
    CHECK(has_row(rep, at_lin(lx_one(n)), RowStatus::PrescribedMatch));
    // x(x+1) is not a square times a constant, so the infinite point is the
    // forced reciprocity complement.
    CHECK(has_row(rep, ClosedPoint::infinity(n), RowStatus::ForcedByReciprocity));

    BrauerPresentation B(n);
    B.add(out.symbol);
    ResidueClass rinf = residue_at(ClosedPoint::infinity(n), B);
    CHECK(rinf.infinite_rep() == (b1 * b2).inv());
}

TEST_CASE("three-linear with square product leaves infinity witnessed trivial") {
    int n = 2;
    Lx b = lxp(n, {0, 1});
    CyclicOutput out = construct_three_linear(b, b, n);
    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(has_row(rep, ClosedPoint::infinity(n), RowStatus::TrivialWitnessed));
    CHECK(count_status(rep, RowStatus::ForcedByReciprocity) == 0);
}

TEST_CASE("prescribing the infinite class needs an n-th power witness") {
    int n = 2;
    Lx x = lxp(n, {0, 1}), x1 = lxp(n, {1, 1});
    auto ok = three_linear_infinity_witness(x, x1, x * x1, n);
    REQUIRE(ok);
    CHECK(x * x1 * (x * x1) == lx_const(ok->second) * ok->first.pow(n));
    CHECK_FALSE(three_linear_infinity_witness(x, x1, x, n).has_value());
    CHECK_THROWS_AS(three_linear_infinity_witness(x, lx_zero(n), x, n), Error);
}

TEST_CASE("three-linear random suite verifies end to end") {
    std::mt19937_64 rng(20260815);
    std::uniform_int_distribution<long> cd(-3, 3);
    std::uniform_int_distribution<int> degd(0, 2);
    for (int round = 0; round < 25; ++round) {
        int n = round % 2 == 0 ? 2 : 3;
        auto rnd = [&]() {
            std::vector<GroundScalar> cs;
            int d = degd(rng);
            for (int i = 0; i < d; ++i) cs.push_back(GroundScalar::from_int(n, cd(rng)));
            cs.push_back(GroundScalar::from_int(n, 1 + std::abs(cd(rng))));
            return lx_of(XPoly("x", GroundScalar::one(n), cs));
        };
        Lx b1 = rnd(), b2 = rnd();
        CyclicOutput out = construct_three_linear(b1, b2, n);
        ConstructionReport rep = verify_construction(out);
        CHECK(rep.verdict);
        BrauerPresentation B(n);
        B.add(out.symbol);
        CHECK(residue_at(ClosedPoint::infinity(n), B).infinite_rep() == (b1 * b2).inv());
    }
}

TEST_CASE("quadratic targets: constant residue uses the plain symbol") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_one(n)}); // y^2 - x
    Lx u = lxp(n, {1, 1});
    CyclicOutput out = construct_quadratic(f, u, lx_zero(n), n);

    CHECK(out.tag == CyclifyCase::QuadraticV0);
    CHECK_FALSE(out.slots_swapped);
    CHECK(out.symbol.a == yrat_const(u));
    CHECK(out.symbol.b == yrat_of(f));
    CHECK(out.auxiliary.empty());

    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(has_row(rep, ClosedPoint::finite(f), RowStatus::PrescribedMatch));
    // (x+1)^{-2} at infinity is an exact square.
    CHECK(has_row(rep, ClosedPoint::infinity(n), RowStatus::TrivialWitnessed));
}

TEST_CASE("quadratic targets: theta coefficient scales the second slot") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_one(n)}); // y^2 - x
    CyclicOutput out = construct_quadratic(f, lx_zero(n), lx_one(n), n);

    CHECK(out.tag == CyclifyCase::QuadraticVNonzero);
    // (t, -(t^2 - x)/x): the scaling constant is f(0) = -x.
    CHECK(out.symbol.a == yrat_of(ypoly_var(n)));
    CHECK(out.symbol.b == yrat_of(f) / yrat_const(-lxp(n, {0, 1})));
    REQUIRE(out.auxiliary.size() == 1);
    CHECK(out.auxiliary[0].modulus() == ypoly_var(n));

    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(has_row(rep, ClosedPoint::finite(f), RowStatus::PrescribedMatch));
    CHECK(has_row(rep, ClosedPoint::finite(ypoly_var(n)), RowStatus::AuxiliaryUnit));

    // A unit target keeps every other point trivial.
    CyclicOutput triv = construct_quadratic(f, lx_one(n), lx_zero(n), n);
    ConstructionReport trep = verify_construction(triv);
    CHECK(trep.verdict);
    CHECK(count_status(trep, RowStatus::Failed) == 0);
    CHECK(count_status(trep, RowStatus::ForcedByReciprocity) == 0);
}

TEST_CASE("quadratic guards reject malformed input") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_one(n)});
    CHECK_THROWS_AS(construct_quadratic(ypoly_var(n), lx_one(n), lx_zero(n), n), Error);
    CHECK_THROWS_AS(construct_quadratic(f.scaled(lint(n, 2)), lx_one(n), lx_zero(n), n), Error);
    CHECK_THROWS_AS(construct_quadratic(f, lx_zero(n), lx_zero(n), n), Error);
    // y^2 - 1 splits, so no quadratic point exists there.
    CHECK_THROWS_AS(
        construct_quadratic(yp(n, {-lx_one(n), lx_zero(n), lx_one(n)}), lx_one(n), lx_zero(n), n),
        Error);
}

TEST_CASE("cubic constant targets swap the printed slots") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_zero(n), lx_one(n)}); // y^3 - x
    Lx x = lxp(n, {0, 1});
    CyclicOutput out = construct_cubic(f, x, lx_zero(n), lx_zero(n), n);

    CHECK(out.tag == CyclifyCase::Cubic1);
    CHECK(out.slots_swapped);
    CHECK(out.symbol.a == yrat_const(x));
    CHECK(out.symbol.b == yrat_of(f));

    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(has_row(rep, ClosedPoint::finite(f), RowStatus::PrescribedMatch));
    // Norm of the target is x^3, so infinity carries the complement class x.
    CHECK(has_row(rep, ClosedPoint::infinity(n), RowStatus::ForcedByReciprocity));
}

TEST_CASE("cubic linear targets add one exactly unramified point") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_zero(n), lx_one(n)}); // y^3 - x
    CyclicOutput out = construct_cubic(f, lx_one(n), lx_one(n), lx_zero(n), n);

    CHECK(out.tag == CyclifyCase::Cubic2);
    CHECK(out.slots_swapped);
    REQUIRE(out.auxiliary.size() == 1);
    CHECK(out.auxiliary[0].modulus() == yp(n, {lx_one(n), lx_one(n)})); // y + 1

    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(has_row(rep, ClosedPoint::finite(f), RowStatus::PrescribedMatch));
    CHECK(has_row(rep, out.auxiliary[0], RowStatus::AuxiliaryUnit));
    // N(1 + theta) = 1 + x forces the infinite class.
    CHECK(has_row(rep, ClosedPoint::infinity(n), RowStatus::ForcedByReciprocity));

    // Over y^3 + x^4 + 1 the same shape of target has square norm -x^4,
    // so nothing is forced and infinity is witnessed trivial.
    YPoly g = yp(n, {lxp(n, {1, 0, 0, 0, 1}), lx_zero(n), lx_zero(n), lx_one(n)});
    CyclicOutput out2 = construct_cubic(g, lx_one(n), lx_one(n), lx_zero(n), n);
    ConstructionReport rep2 = verify_construction(out2);
    CHECK(rep2.verdict);
    CHECK(count_status(rep2, RowStatus::ForcedByReciprocity) == 0);
    CHECK(has_row(rep2, ClosedPoint::infinity(n), RowStatus::TrivialWitnessed));
}

TEST_CASE("cubic quadratic target with vanishing linear part") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_zero(n), lx_one(n)}); // y^3 - x
    Lx x = lxp(n, {0, 1});
    // theta^2: multiplying by theta gives theta^3 = x, already linear, c = 0.
    CyclicOutput out = construct_cubic(f, lx_zero(n), lx_zero(n), lx_one(n), n);

    CHECK(out.tag == CyclifyCase::Cubic3b);
    CHECK(out.slots_swapped);
    CHECK(out.symbol.a == yrat_of(ypoly_var(n).scaled(x)));
    CHECK(out.symbol.b == yrat_of(f) / yrat_const(-x));
    REQUIRE(out.auxiliary.size() == 1);
    CHECK(out.auxiliary[0].modulus() == ypoly_var(n));
    REQUIRE(out.witnesses.size() == 1);
    REQUIRE(out.witnesses[0].finite_w);
    CHECK(out.witnesses[0].finite_w->rep() == ypoly_var(n)); // w = theta

    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(has_row(rep, ClosedPoint::finite(f), RowStatus::PrescribedMatch));
    CHECK(has_row(rep, out.auxiliary[0], RowStatus::AuxiliaryUnit));
    // The infinite value is x^{-4}, an exact square.
    CHECK(has_row(rep, ClosedPoint::infinity(n), RowStatus::TrivialWitnessed));
    CHECK(count_status(rep, RowStatus::ForcedByReciprocity) == 0);

    // Same target at order 3: exponent n - 1 = 2 on the linear slot.
    YPoly f3 = yp(3, {-lxp(3, {0, 1}), lx_zero(3), lx_zero(3), lx_one(3)});
    CyclicOutput out3 = construct_cubic(f3, lx_zero(3), lx_zero(3), lx_one(3), 3);
    CHECK(out3.tag == CyclifyCase::Cubic3b);
    CHECK(out3.symbol.a.num().degree() == 2);
    CHECK(verify_construction(out3).verdict);
}

TEST_CASE("cubic quadratic target with full support") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_zero(n), lx_one(n)}); // y^3 - x
    Lx x = lxp(n, {0, 1});
    // theta^2 + theta: a(c + theta) is linear for c = -1, b = x - theta.
    CyclicOutput out = construct_cubic(f, lx_zero(n), lx_one(n), lx_one(n), n);

    CHECK(out.tag == CyclifyCase::Cubic3a);
    CHECK(out.slots_swapped);
    REQUIRE(out.auxiliary.size() == 1);
    CHECK(out.auxiliary[0].modulus() == yp(n, {-x, lx_one(n)})); // y - x
    REQUIRE(out.witnesses[0].finite_w);
    CHECK(out.witnesses[0].finite_w->rep() == yp(n, {-lx_one(n), lx_one(n)})); // theta - 1
    // Slot degrees n and 2n make the infinite residue an exact n-th power.
    CHECK(out.symbol.a.num().degree() == n);
    CHECK(out.symbol.b.num().degree() == 2 * n);

    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(rep.reciprocity_ok);
    CHECK(has_row(rep, ClosedPoint::finite(f), RowStatus::PrescribedMatch));
    CHECK(has_row(rep, out.auxiliary[0], RowStatus::AuxiliaryUnit));
    CHECK(has_row(rep, ClosedPoint::infinity(n), RowStatus::TrivialWitnessed));
    // N(theta^2 + theta) = x(x + 1) is not a square times a constant, and the
    // class lands on the remaining support point y - 1.
    CHECK(has_row(rep, at_lin(lx_one(n)), RowStatus::ForcedByReciprocity));

    // Order 3 exercises the general exponents 2n - 3 and n - 1.
    YPoly f3 = yp(3, {-lxp(3, {0, 1}), lx_zero(3), lx_zero(3), lx_one(3)});
    CyclicOutput out3 = construct_cubic(f3, lx_zero(3), lx_one(3), lx_one(3), 3);
    CHECK(out3.tag == CyclifyCase::Cubic3a);
    CHECK(out3.symbol.a.num().degree() == 3);
    CHECK(out3.symbol.b.num().degree() == 6);
    CHECK(verify_construction(out3).verdict);
}

TEST_CASE("cubic quadratic target with empty forced profile") {
    int n = 2;
    // f = y^3 + x^4 + 1, target theta^2 - (x^4 + 1) = theta^2 (1 + theta):
    // the norm is -x^4 (x^4+1)^2, trivial mod squares and constants, so
    // every unprescribed point must carry a witnessed trivial class.
    Lx q = lxp(n, {1, 0, 0, 0, 1});
    YPoly f = yp(n, {q, lx_zero(n), lx_zero(n), lx_one(n)});
    CyclicOutput out = construct_cubic(f, -q, lx_zero(n), lx_one(n), n);

    CHECK(out.tag == CyclifyCase::Cubic3a);
    REQUIRE(out.auxiliary.size() == 1);
    CHECK(out.auxiliary[0].modulus() == yp(n, {lx_one(n), lx_one(n)})); // y + 1

    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(count_status(rep, RowStatus::ForcedByReciprocity) == 0);
    CHECK(count_status(rep, RowStatus::Failed) == 0);
    CHECK(has_row(rep, ClosedPoint::finite(f), RowStatus::PrescribedMatch));
}

TEST_CASE("cubic target with rational coefficients forces the infinite class") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_zero(n), lx_one(n)}); // y^3 - x
    Lx a2 = lx_one(n) / lxp(n, {1, 1});
    CyclicOutput out = construct_cubic(f, lx_zero(n), lx_zero(n), a2, n);

    CHECK(out.tag == CyclifyCase::Cubic3b);
    ConstructionReport rep = verify_construction(out);
    CHECK(rep.verdict);
    CHECK(has_row(rep, out.auxiliary[0], RowStatus::AuxiliaryUnit));
    // Norm x^2/(x+1)^3 has class x + 1; the complement sits at infinity.
    CHECK(has_row(rep, ClosedPoint::infinity(n), RowStatus::ForcedByReciprocity));
}

TEST_CASE("cubic guards reject malformed input") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_zero(n), lx_one(n)});
    CHECK_THROWS_AS(construct_cubic(ypoly_var(n), lx_one(n), lx_zero(n), lx_zero(n), n), Error);
    CHECK_THROWS_AS(
        construct_cubic(f.scaled(lint(n, 2)), lx_one(n), lx_zero(n), lx_zero(n), n), Error);
    CHECK_THROWS_AS(construct_cubic(f, lx_zero(n), lx_zero(n), lx_zero(n), n), Error);
    // y^3 - x^3 has the root x.
    YPoly split = yp(n, {-lxp(n, {0, 0, 0, 1}), lx_zero(n), lx_zero(n), lx_one(n)});
    CHECK_THROWS_AS(construct_cubic(split, lx_one(n), lx_zero(n), lx_zero(n), n), Error);
}

TEST_CASE("exchanging the slots inverts every residue") {
    int n = 2;
    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_zero(n), lx_one(n)});
    std::vector<SymbolAlgebra> symbols = {
        construct_three_linear(lxp(n, {0, 1}), lxp(n, {1, 1}), n).symbol,
        construct_quadratic(yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_one(n)}), lxp(n, {2, 1}),
                            lx_one(n), n)
            .symbol,
        construct_cubic(f, lx_zero(n), lx_one(n), lx_one(n), n).symbol,
    };
    for (const auto& sym : symbols) {
        BrauerPresentation B(n), Bsw(n);
        B.add(sym);
        Bsw.add(SymbolAlgebra(sym.b, sym.a, n));
        for (const auto& p : support_points(B)) {
            ResidueClass r1 = residue_at(p, B);
            ResidueClass r2 = residue_at(p, Bsw);
            if (p.is_infinite())
                CHECK((r1.infinite_rep() * r2.infinite_rep()).is_one());
            else
                CHECK((r1.finite_rep() * r2.finite_rep()).is_one());
        }
    }
}

TEST_CASE("corrupted witnesses fail verification naming the point") {
    int n = 2;
    Lx b1 = lxp(n, {0, 1}), b2 = lxp(n, {1, 1});

    CyclicOutput out = construct_three_linear(b1, b2, n);
    out.witnesses[0].constant = GroundScalar::from_int(n, 5);
    ConstructionReport rep = verify_construction(out);
    CHECK_FALSE(rep.verdict);
    CHECK(has_row(rep, out.prescribed[0].point, RowStatus::Failed));

    YPoly f = yp(n, {-lxp(n, {0, 1}), lx_zero(n), lx_zero(n), lx_one(n)});
    CyclicOutput cub = construct_cubic(f, lx_zero(n), lx_one(n), lx_one(n), n);
    cub.witnesses[0].finite_w = QuotientElement::theta(f);
    ConstructionReport crep = verify_construction(cub);
    CHECK_FALSE(crep.verdict);
    CHECK(has_row(crep, ClosedPoint::finite(f), RowStatus::Failed));

    // A wrong target is detected even with the honest witness.
    CyclicOutput good = construct_cubic(f, lx_zero(n), lx_one(n), lx_one(n), n);
    std::vector<RamificationDatum> wrong = good.prescribed;
    wrong[0].target = ResidueClass(wrong[0].point, QuotientElement::theta(f), n);
    ConstructionReport wrep = verify_construction(wrong, good);
    CHECK_FALSE(wrep.verdict);
    CHECK(has_row(wrep, ClosedPoint::finite(f), RowStatus::Failed));
}
