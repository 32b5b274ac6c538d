#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "tamesym/fields.hpp"

namespace tamesym {

// Yun squarefree decomposition over a characteristic-zero coefficient field:
// p = lc * prod parts[i].first ^ parts[i].second with monic, nonconstant,
// pairwise coprime, squarefree parts and strictly increasing multiplicities.
template <class F>
std::vector<std::pair<UniPoly<F>, int>> squarefree_decomposition(const UniPoly<F>& p) {
    if (p.is_zero()) throw Error("squarefree decomposition of zero");
    std::vector<std::pair<UniPoly<F>, int>> out;
    if (p.degree() == 0) return out;
    UniPoly<F> f = p.monic();
    UniPoly<F> fp = f.derivative();
    UniPoly<F> g = poly_gcd(f, fp);
    if (g.is_constant()) {
        out.emplace_back(f, 1);
        return out;
    }
    UniPoly<F> c = poly_exact_div(f, g);
    UniPoly<F> d = poly_exact_div(fp, g) - c.derivative();
    int i = 1;
    while (!c.is_constant()) {
        UniPoly<F> part = poly_gcd(c, d); // monic, so a trivial gcd is exactly 1
        if (part.degree() > 0) out.emplace_back(part, i);
        c = poly_exact_div(c, part);
        d = poly_exact_div(d, part) - c.derivative();
        ++i;
    }
    return out;
}

// Product of the squarefree parts (the radical), monic.
template <class F>
UniPoly<F> squarefree_part(const UniPoly<F>& p) {
    UniPoly<F> r = p.one_like();
    for (const auto& [part, mult] : squarefree_decomposition(p)) r = r * part;
    return r;
}

// Refines a family of monic squarefree polynomials into a pairwise coprime
// basis such that every input is a product of basis elements. Inputs must be
// squarefree (that keeps chunks coprime after a single split).
template <class F>
std::vector<UniPoly<F>> coprime_basis(std::vector<UniPoly<F>> inputs) {
    std::vector<UniPoly<F>> basis;
    for (auto& q : inputs) {
        if (q.degree() <= 0) continue;
        UniPoly<F> cur = q.monic();
        std::vector<UniPoly<F>> next;
        for (auto& b : basis) {
            if (cur.degree() == 0) {
                next.push_back(b);
                continue;
            }
            UniPoly<F> g = poly_gcd(cur, b);
            if (g.degree() == 0) {
                next.push_back(b);
                continue;
            }
            next.push_back(g);
            UniPoly<F> rest = poly_exact_div(b, g);
            if (rest.degree() > 0) next.push_back(rest);
            cur = poly_exact_div(cur, g);
        }
        if (cur.degree() > 0) next.push_back(cur);
        basis = std::move(next);
    }
    std::sort(basis.begin(), basis.end(), [](const UniPoly<F>& a, const UniPoly<F>& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.to_string() < b.to_string();
    });
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
    return basis;
}

// All roots of p that lie in the ground field Q(rho), sorted by ascending
// height. Complete for phi(n) <= 2; for larger ground fields only rational
// roots are found and a nonlinear irrational remainder raises Unsupported.
std::vector<GroundScalar> ground_roots(const UniPoly<GroundScalar>& p);

// First root in the ascending-height order, if any.
std::optional<GroundScalar> rational_root_search(const UniPoly<GroundScalar>& p);

struct GroundFactorization {
    GroundScalar lead;
    std::vector<std::pair<UniPoly<GroundScalar>, int>> factors; // monic irreducible, multiplicity
};

// Full factorization over Q(rho) for degrees within `bound` (default 8).
// Throws Unsupported above the bound or outside the supported field envelope.
GroundFactorization univariate_factor(const UniPoly<GroundScalar>& p, int bound = 8);

// True when p (nonconstant, over Q(rho)) is irreducible; runs the bounded
// factorization machinery.
bool ground_irreducible(const UniPoly<GroundScalar>& p, int bound = 8);

} // namespace tamesym
