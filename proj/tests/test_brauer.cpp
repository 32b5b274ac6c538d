#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tamesym/brauer.hpp"
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

// y as a rational function.
YRat yy(int n) { return yrat_of(ypoly_var(n)); }
YRat ycst(const Lx& c) { return yrat_const(c); }

// Random nonzero rational-function slot in y: a product of small factors.
struct SlotGen {
    std::mt19937_64 rng;
    int n;
    explicit SlotGen(int n_, unsigned long seed) : rng(seed), n(n_) {}

    XPoly rnd_xpoly(int maxdeg) {
        std::uniform_int_distribution<int> degd(0, maxdeg);
        std::uniform_int_distribution<long> cd(-4, 4);
        int d = degd(rng);
        std::vector<GroundScalar> cs;
        for (int i = 0; i < d; ++i) cs.push_back(GroundScalar::from_int(n, cd(rng)));
        cs.push_back(GroundScalar::from_int(n, 1 + std::abs(cd(rng)) % 3));
        return XPoly("x", GroundScalar::one(n), cs);
    }

    YPoly rnd_ypoly(int ydeg, int xdeg) {
        std::vector<Lx> cs;
        for (int i = 0; i < ydeg; ++i) cs.push_back(lx_of(rnd_xpoly(xdeg)) -
                                                    lx_of(rnd_xpoly(xdeg)));
        cs.push_back(lx_of(rnd_xpoly(xdeg)));
        YPoly p("y", lx_one(n), cs);
        return p.is_zero() ? ypoly_one(n) : p;
    }

    YRat rnd_slot() {
        std::uniform_int_distribution<int> yd(0, 2), xd(0, 2), coin(0, 1);
        YPoly num = rnd_ypoly(yd(rng), xd(rng));
        YPoly den = coin(rng) ? rnd_ypoly(yd(rng), xd(rng)) : ypoly_one(n);
        if (num.is_zero()) num = ypoly_one(n);
        if (den.is_zero()) den = ypoly_one(n);
        return YRat(num, den);
    }
};

} // namespace

TEST_CASE("point valuations") {
    int n = 2;
    ClosedPoint at_y = ClosedPoint::finite(ypoly_var(n));
    YRat e = yrat_of(ypoly_var(n) * ypoly_var(n)) / yrat_of(ypoly_var(n) + ypoly_one(n));
    CHECK(point_valuation(at_y, e) == 2);

    ClosedPoint inf = ClosedPoint::infinity(n);
    YRat xy = yrat_const(lxp(n, {0, 1})) * yy(n);
    CHECK(point_valuation(inf, xy) == -1);

    YPoly f = yp(n, {-lx_var(n), lx_zero(n), lx_one(n)}); // y^2 - x
    ClosedPoint p = ClosedPoint::finite(f);
    YRat big = yrat_of(f).pow(3) * (yy(n) + yrat_const(lx_one(n)));
    CHECK(point_valuation(p, big) == 3);

    CHECK_THROWS_AS(point_valuation(at_y, YRat::zero("y", lx_one(n))), Error);
}

TEST_CASE("infinite-line valuation matches the chart computation") {
    int n = 2;
    YRat xy = yrat_const(lx_var(n)) * yy(n);
    CHECK(infinite_line_valuation(xy) == -2);
    YRat x2p1 = yrat_const(lxp(n, {1, 0, 1}));
    CHECK(infinite_line_valuation(x2p1) == -2);
    CHECK(infinite_line_valuation(yrat_const(lx_rat(n, rat(7, 3)))) == 0);
    // (x^2+1)/y has total degrees 2 and 1.
    CHECK(infinite_line_valuation(x2p1 / yy(n)) == -1);
}

TEST_CASE("tame residue: hand-checked examples") {
    int n = 2;
    // (y, y-1) at the point y: v(a)=1, v(b)=0, residue = 1/b(0) = -1.
    BrauerPresentation A(n);
    A.add(SymbolAlgebra(yy(n), yy(n) - yrat_const(lx_one(n)), n));
    ClosedPoint at_y = ClosedPoint::finite(ypoly_var(n));
    ResidueClass r = residue_at(at_y, A);
    CHECK(r.finite_rep().rep() == YPoly::constant("y", -lx_one(n)));

    // Unit slots give representative exactly 1.
    ClosedPoint elsewhere = ClosedPoint::finite(ypoly_var(n) - ypoly_const(lxp(n, {5})));
    CHECK(residue_at(elsewhere, A).trivial_unit());
}

TEST_CASE("tame residue at infinity: three-linear leading coefficients") {
    int n = 3;
    // (b2 y, -b1^{-1} (y-1)) at Infinity: class of (b1 b2)^{-1}.
    Lx b1 = lxp(n, {3});
    Lx b2 = lxp(n, {5});
    BrauerPresentation A(n);
    A.add(SymbolAlgebra(yrat_const(b2) * yy(n),
                        yrat_const(-b1.inv()) * (yy(n) - yrat_const(lx_one(n))), n));
    ResidueClass r = residue_at(ClosedPoint::infinity(n), A);
    CHECK(r.infinite_rep() == (b1 * b2).inv());
}

TEST_CASE("quaternion example over l(y): residues and reciprocity") {
    int n = 2;
    Lx x = lx_var(n);
    Lx x2p1 = lxp(n, {1, 0, 1});
    BrauerPresentation B(n);
    B.add(SymbolAlgebra(yrat_const(x) * yy(n), ycst(x2p1), n));

    ClosedPoint at_y = ClosedPoint::finite(ypoly_var(n));
    ResidueClass r0 = residue_at(at_y, B);
    CHECK(r0.finite_rep().rep() == YPoly::constant("y", x2p1.inv()));

    ResidueClass rinf = residue_at(ClosedPoint::infinity(n), B);
    CHECK(rinf.infinite_rep() == x2p1);

    auto ledger = reciprocity_auto(B);
    CHECK(ledger.verdict);
    REQUIRE(ledger.entries.size() == 2);
    CHECK(ledger.entries[0].point == at_y);
    CHECK_FALSE(ledger.entries[0].profile.empty());
    CHECK(ledger.entries[1].point.is_infinite());
    CHECK_FALSE(ledger.entries[1].profile.empty());
    CHECK(ledger.combined.empty());

    // Ramified exactly at y=0 and Infinity, certified nontrivial.
    auto ram = ramification_profile(B, 8, 11);
    int nontrivial = 0;
    for (const auto& e : ram) {
        if (e.status == RamStatus::NontrivialCertified) {
            ++nontrivial;
            bool expected = e.point.is_infinite() || e.point == at_y;
            CHECK(expected);
        } else {
            CHECK(e.status == RamStatus::UnramifiedExact);
        }
    }
    CHECK(nontrivial == 2);
}

TEST_CASE("residue properties: bilinearity, antisymmetry, unit case") {
    for (int n : {2, 3}) {
        SlotGen gen(n, 1000 + n);
        int done = 0;
        for (int trial = 0; trial < 40 && done < 12; ++trial) {
            YRat a = gen.rnd_slot();
            YRat a2 = gen.rnd_slot();
            YRat b = gen.rnd_slot();
            if (a.is_zero() || a2.is_zero() || b.is_zero()) continue;
            // Test at a random degree-1 point and at infinity.
            std::vector<ClosedPoint> pts = {
                ClosedPoint::finite(ypoly_var(n) - ypoly_const(lxp(n, {2}))),
                ClosedPoint::finite(ypoly_var(n)), ClosedPoint::infinity(n)};
            for (const auto& p : pts) {
                BrauerPresentation P1(n), P2(n), P12(n), Pab(n), Pba(n);
                P1.add(SymbolAlgebra(a, b, n));
                P2.add(SymbolAlgebra(a2, b, n));
                P12.add(SymbolAlgebra(a * a2, b, n));
                Pab.add(SymbolAlgebra(a, b, n));
                Pba.add(SymbolAlgebra(b, a, n));
                if (p.is_infinite()) {
                    Lx lhs = residue_at(p, P12).infinite_rep();
                    Lx rhs = residue_at(p, P1).infinite_rep() * residue_at(p, P2).infinite_rep();
                    CHECK(lhs == rhs);
                    Lx prod = residue_at(p, Pab).infinite_rep() * residue_at(p, Pba).infinite_rep();
                    CHECK(prod.is_one());
                } else {
                    auto lhs = residue_at(p, P12).finite_rep();
                    auto rhs = residue_at(p, P1).finite_rep() * residue_at(p, P2).finite_rep();
                    CHECK(lhs == rhs);
                    auto prod = residue_at(p, Pab).finite_rep() * residue_at(p, Pba).finite_rep();
                    CHECK(prod.is_one());
                }
                // Unit case.
                if (point_valuation(p, a) == 0 && point_valuation(p, b) == 0)
                    CHECK(residue_at(p, Pab).trivial_unit());
            }
            ++done;
        }
        CHECK(done == 12);
    }
}

TEST_CASE("witnessed equality in residue fields") {
    int n = 2;
    YPoly f = yp(n, {-lx_var(n), lx_zero(n), lx_one(n)}); // y^2 - x
    ClosedPoint p = ClosedPoint::finite(f);
    QuotientElement theta = QuotientElement::theta(f);
    QuotientElement a = theta + QuotientElement::from_scalar(f, lx_one(n));
    ResidueClass r2(p, a, n);

    // r1 = a * (c + theta)^n with witness w = c + theta.
    QuotientElement w = theta + QuotientElement::from_scalar(f, lxp(n, {3}));
    ResidueClass r1(p, a * w.pow(n), n);
    CHECK(residue_equal_with_witness(r1, r2, w, GroundScalar::one(n)));
    CHECK(residue_equal_with_witness(
        r2, r2, QuotientElement::from_scalar(f, lx_one(n)), GroundScalar::one(n)));

    // Scaled by a constant.
    ResidueClass r3(p, a * w.pow(n) * QuotientElement::from_scalar(f, lxp(n, {7})), n);
    CHECK(residue_equal_with_witness(r3, r2, w, GroundScalar::from_int(n, 7)));
    CHECK_FALSE(residue_equal_with_witness(r3, r2, w, GroundScalar::one(n)));

    // theta vs theta + 1 cannot be witnessed by degree-0 elements.
    ResidueClass t1(p, theta, n);
    ResidueClass t2(p, theta + QuotientElement::from_scalar(f, lx_one(n)), n);
    CHECK_FALSE(residue_equal_with_witness(
        t1, t2, QuotientElement::from_scalar(f, lxp(n, {2})), GroundScalar::one(n)));
}

TEST_CASE("corestriction profiles") {
    int n = 2;
    // Degree-2 point y^2 - x, residue theta: norm is -x, profile {x: 1}.
    YPoly f = yp(n, {-lx_var(n), lx_zero(n), lx_one(n)});
    ClosedPoint p = ClosedPoint::finite(f);
    ResidueClass r(p, QuotientElement::theta(f), n);
    CorProfile prof = corestriction_at(r);
    REQUIRE(prof.parts().size() == 1);
    CHECK(prof.parts()[0].first == XPoly::variable("x", GroundScalar::one(n)));
    CHECK(prof.parts()[0].second == 1);

    // Degree-1 point: corestriction = evaluation.
    YPoly g = ypoly_var(n) - ypoly_const(lx_var(n)); // y - x
    ClosedPoint q = ClosedPoint::finite(g);
    QuotientElement u(g, ypoly_var(n) + ypoly_one(n)); // theta + 1 -> x + 1
    ResidueClass rq(q, u, n);
    CorProfile pq = corestriction_at(rq);
    REQUIRE(pq.parts().size() == 1);
    CHECK(pq.parts()[0].first == XPoly("x", GroundScalar::one(n),
                                       {GroundScalar::one(n), GroundScalar::one(n)}));

    // Trivial representative: empty profile.
    ResidueClass rt(q, QuotientElement::from_scalar(g, lxp(n, {9})), n);
    CHECK(corestriction_at(rt).empty());
}

TEST_CASE("nth power membership and witnesses") {
    int n = 2;
    Lx x = lx_var(n);
    CHECK(nth_power_mod_constants(x * x, 2));
    CHECK_FALSE(nth_power_mod_constants(x * (x + lx_one(n)), 2));
    Lx p6 = (x + lx_one(n)).pow(6);
    CHECK(nth_power_mod_constants(p6, 3));

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> cd(-6, 6);
    for (int trial = 0; trial < 15; ++trial) {
        for (int nn : {2, 3}) {
            Lx w = lxp(nn, {cd(rng), 1 + std::abs(cd(rng))}) /
                   lxp(nn, {cd(rng), 0, 1 + std::abs(cd(rng))});
            if (w.is_zero()) continue;
            GroundScalar c = GroundScalar::from_int(nn, 5);
            Lx g = lx_const(c) * w.pow(nn);
            auto wit = nth_power_witness(g, nn);
            REQUIRE(wit.has_value());
            CHECK(lx_const(wit->second) * wit->first.pow(nn) == g);
        }
    }
}

TEST_CASE("reciprocity holds on random presentations") {
    for (int n : {2, 3}) {
        SlotGen gen(n, 777 + n);
        int done = 0;
        for (int trial = 0; trial < 60 && done < 15; ++trial) {
            BrauerPresentation A(n);
            std::uniform_int_distribution<int> terms(1, 2), expo(1, n - 1);
            int t = terms(gen.rng);
            for (int i = 0; i < t; ++i) {
                YRat a = gen.rnd_slot();
                YRat b = gen.rnd_slot();
                if (a.is_zero() || b.is_zero()) { A = BrauerPresentation(n); break; }
                A.add(SymbolAlgebra(a, b, n), expo(gen.rng));
            }
            if (A.trivial_presentation()) continue;
            auto ledger = reciprocity_auto(A);
            CHECK(ledger.verdict);
            ++done;
        }
        CHECK(done == 15);
    }
}

TEST_CASE("reciprocity rejects incomplete point lists") {
    int n = 2;
    Lx x = lx_var(n);
    BrauerPresentation B(n);
    B.add(SymbolAlgebra(yrat_const(x) * yy(n), ycst(lxp(n, {1, 0, 1})), n));
    // Missing the finite point y = 0.
    CHECK_THROWS_AS(reciprocity_check(B, {ClosedPoint::infinity(n)}), Error);
    // Missing Infinity.
    CHECK_THROWS_AS(reciprocity_check(B, {ClosedPoint::finite(ypoly_var(n))}), Error);
    // Complete list passes.
    auto ledger = reciprocity_check(
        B, {ClosedPoint::finite(ypoly_var(n)), ClosedPoint::infinity(n)});
    CHECK(ledger.verdict);
}

TEST_CASE("clusters: uniform valuations fine, mixed valuations rejected") {
    int n = 2;
    // y^2 - x^2 = (y-x)(y+x), squarefree: a valid cluster.
    YPoly f = yp(n, {-(lx_var(n) * lx_var(n)), lx_zero(n), lx_one(n)});
    ClosedPoint cl = ClosedPoint::cluster(f);
    CHECK(cl.irreducible_status() == ClosedPoint::IrreducibleStatus::Cluster);

    BrauerPresentation ok(n);
    ok.add(SymbolAlgebra(yrat_of(f), yy(n), n));
    ResidueClass r = residue_at(cl, ok);
    // residue of (f, y) at f: v(a)=1, v(b)=0: eps = y^{-1} = theta/x^2.
    QuotientElement expect =
        QuotientElement::theta(f) * QuotientElement::from_scalar(f, (lx_var(n) * lx_var(n)).inv());
    CHECK(r.finite_rep() == expect);

    BrauerPresentation mixed(n);
    mixed.add(SymbolAlgebra(yy(n) - yrat_const(lx_var(n)), yy(n), n)); // y - x: divides one factor
    CHECK_THROWS_AS(residue_at(cl, mixed), InvariantViolation);
}

TEST_CASE("nontriviality certificate: detection and soundness") {
    int n = 2;
    // x^2+1 at Infinity is certified nontrivial.
    BrauerPresentation B(n);
    B.add(SymbolAlgebra(yrat_const(lx_var(n)) * yy(n), ycst(lxp(n, {1, 0, 1})), n));
    ResidueClass rinf = residue_at(ClosedPoint::infinity(n), B);
    auto cert = nontriviality_certificate(rinf, 10, 42);
    REQUIRE(cert.has_value());
    CHECK(cert->prime > 0);

    // Soundness: representatives of the form c * w^n never fire.
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> cd(-5, 5);
    YPoly f = yp(n, {-lx_var(n), lx_zero(n), lx_one(n)}); // y^2 - x
    ClosedPoint p = ClosedPoint::finite(f);
    for (int trial = 0; trial < 20; ++trial) {
        YPoly wrep = yp(n, {lxp(n, {cd(rng), cd(rng)}), lxp(n, {1 + std::abs(cd(rng))})});
        QuotientElement w(f, wrep);
        if (w.is_zero()) continue;
        GroundScalar c = GroundScalar::from_int(n, 3);
        QuotientElement rep = QuotientElement::from_scalar(f, lx_const(c)) * w.pow(n);
        if (rep.is_zero()) continue;
        ResidueClass r(p, rep, n);
        auto hit = nontriviality_certificate(r, 6, 1000 + trial);
        CHECK_FALSE(hit.has_value());
    }

    // And an l-valued variant of soundness.
    for (int trial = 0; trial < 10; ++trial) {
        Lx w = lxp(n, {cd(rng), 1 + std::abs(cd(rng))});
        Lx repv = lx_const(GroundScalar::from_int(n, 7)) * w.pow(n);
        ResidueClass r(ClosedPoint::infinity(n), repv, n);
        auto hit = nontriviality_certificate(r, 6, 2000 + trial);
        CHECK_FALSE(hit.has_value());
    }
}

TEST_CASE("roots over l and exact square roots in l") {
    int n = 2;
    Lx x = lx_var(n);
    // y^2 - x^2: roots x and -x.
    YPoly f = yp(n, {-(x * x), lx_zero(n), lx_one(n)});
    auto roots = l_roots(f);
    REQUIRE(roots.size() == 2);
    CHECK((roots[0] == x || roots[1] == x));
    CHECK((roots[0] == -x || roots[1] == -x));

    // y^2 - x: no roots in l.
    CHECK(l_roots(yp(n, {-x, lx_zero(n), lx_one(n)})).empty());

    // (y - x/(x+1)) (y - 2): rational-function root.
    Lx r1 = x / (x + lx_one(n));
    YPoly g = (ypoly_var(n) - ypoly_const(r1)) * (ypoly_var(n) - ypoly_const(lxp(n, {2})));
    auto roots2 = l_roots(g);
    REQUIRE(roots2.size() == 2);
    CHECK(std::count(roots2.begin(), roots2.end(), r1) == 1);

    CHECK(lx_sqrt(lx_const(GroundScalar::from_int(n, 4)) * x * x).value() ==
          lx_const(GroundScalar::from_int(n, 2)) * x);
    CHECK_FALSE(lx_sqrt(x).has_value());
    auto s = lx_sqrt((x + lx_one(n)).pow(4) / (x * x));
    REQUIRE(s.has_value());
    CHECK(*s * *s == (x + lx_one(n)).pow(4) / (x * x));
}

TEST_CASE("closed point construction screens reducible moduli") {
    int n = 2;
    Lx x = lx_var(n);
    // y^2 - x^2 factors: rejected as a point.
    CHECK_THROWS_AS(ClosedPoint::finite(yp(n, {-(x * x), lx_zero(n), lx_one(n)})), Error);
    // y^2 - x is irreducible: verified.
    ClosedPoint p = ClosedPoint::finite(yp(n, {-x, lx_zero(n), lx_one(n)}));
    CHECK(p.irreducible_status() == ClosedPoint::IrreducibleStatus::Verified);
    // Degree-4 split into quadratics is caught: (y^2-x)(y^2-x-1).
    YPoly q = yp(n, {-x, lx_zero(n), lx_one(n)}) * yp(n, {-x - lx_one(n), lx_zero(n), lx_one(n)});
    CHECK_THROWS_AS(ClosedPoint::finite(q), Error);
    // y^3 - x is irreducible.
    ClosedPoint c = ClosedPoint::finite(yp(n, {-x, lx_zero(n), lx_zero(n), lx_one(n)}));
    CHECK(c.irreducible_status() == ClosedPoint::IrreducibleStatus::Verified);
}

TEST_CASE("presentation exponent canonicalization") {
    CHECK(BrauerPresentation::canonical_exponent(2, 3) == -1);
    CHECK(BrauerPresentation::canonical_exponent(-2, 3) == 1);
    CHECK(BrauerPresentation::canonical_exponent(3, 3) == 0);
    CHECK(BrauerPresentation::canonical_exponent(1, 2) == 1);
    CHECK(BrauerPresentation::canonical_exponent(-1, 2) == 1);
    CHECK(BrauerPresentation::canonical_exponent(2, 4) == 2);
    CHECK(BrauerPresentation::canonical_exponent(-3, 4) == 1);
    CHECK(BrauerPresentation::canonical_exponent(3, 4) == -1);
}
