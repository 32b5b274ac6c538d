#include "tamesym/certificate.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace tamesym {
namespace {

long mulmod(long a, long b, long p) {
    return static_cast<long>(static_cast<__int128>(a) * b % p);
}

long powmod(long a, long e, long p) {
    long r = 1 % p;
    a %= p;
    if (a < 0) a += p;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

long powmod_big(long a, const Int& e, long p) {
    long r = 1 % p;
    a %= p;
    if (a < 0) a += p;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, a, p);
    }
    return r;
}

long invmod(long a, long p) { return powmod(a, p - 2, p); }

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

long primitive_root(long p) {
    auto fs = prime_factors(p - 1);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (long f : fs) {
            if (powmod(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw InvariantViolation("no primitive root found");
}

// Dense polynomial over F_p, ascending coefficients, no trailing zeros.
using FpPoly = std::vector<long>;

void fp_normalize(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    fp_normalize(c);
    return c;
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, long p) {
    if (m.empty()) throw Error("fp division by zero");
    long lead_inv = invmod(m.back(), p);
    while (fp_deg(a) >= fp_deg(m)) {
        long f = mulmod(a.back(), lead_inv, p);
        int shift = fp_deg(a) - fp_deg(m);
        for (size_t i = 0; i < m.size(); ++i) {
            size_t k = i + shift;
            a[k] = (a[k] - mulmod(f, m[i], p) % p + p) % p;
        }
        fp_normalize(a);
        if (a.empty()) break;
    }
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        long s = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, s, p);
    }
    return a;
}

FpPoly fp_exact_div(const FpPoly& a, const FpPoly& b, long p) {
    FpPoly q(a.size(), 0);
    FpPoly r = a;
    long lead_inv = invmod(b.back(), p);
    while (fp_deg(r) >= fp_deg(b)) {
        long f = mulmod(r.back(), lead_inv, p);
        int shift = fp_deg(r) - fp_deg(b);
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) {
            size_t k = i + shift;
            r[k] = (r[k] - mulmod(f, b[i], p) % p + p) % p;
        }
        fp_normalize(r);
        if (r.empty()) break;
    }
    if (!r.empty()) throw InvariantViolation("fp exact division failed");
    fp_normalize(q);
    return q;
}

FpPoly fp_derivative(const FpPoly& a, long p) {
    FpPoly d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(a[i], static_cast<long>(i % p), p));
    fp_normalize(d);
    return d;
}

FpPoly fp_powmod(FpPoly base, const Int& e, const FpPoly& m, long p) {
    FpPoly r = {1};
    base = fp_mod(std::move(base), m, p);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        r = fp_mod(fp_mul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_mod(fp_mul(r, base, p), m, p);
    }
    return r;
}

// Cantor-Zassenhaus factorization of a squarefree monic polynomial.
void fp_edf(const FpPoly& f, int d, long p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (fp_deg(f) == d) {
        out.push_back(f);
        return;
    }
    std::uniform_int_distribution<long> coeff(0, p - 1);
    Int pd = 1;
    for (int i = 0; i < d; ++i) pd *= p;
    Int half = (pd - 1) / 2;
    while (true) {
        FpPoly a(fp_deg(f), 0);
        for (auto& c : a) c = coeff(rng);
        fp_normalize(a);
        if (a.empty()) continue;
        FpPoly t = fp_powmod(a, half, f, p);
        if (t.empty()) continue;
        t[0] = (t[0] - 1 + p) % p;
        fp_normalize(t);
        FpPoly g = fp_gcd(f, t, p);
        if (fp_deg(g) > 0 && fp_deg(g) < fp_deg(f)) {
            fp_edf(g, d, p, rng, out);
            fp_edf(fp_exact_div(f, g, p), d, p, rng, out);
            return;
        }
    }
}

std::vector<FpPoly> fp_factor_squarefree(FpPoly f, long p, std::mt19937_64& rng) {
    std::vector<FpPoly> out;
    // Make monic.
    if (f.back() != 1) {
        long s = invmod(f.back(), p);
        for (auto& c : f) c = mulmod(c, s, p);
    }
    FpPoly y = {0, 1};
    FpPoly h = y;
    int d = 0;
    while (fp_deg(f) > 0 && 2 * (d + 1) <= fp_deg(f)) {
        ++d;
        h = fp_powmod(h, Int(p), f, p);
        FpPoly hy = h;
        if (hy.size() < 2) hy.resize(2, 0);
        hy[1] = (hy[1] - 1 + p) % p;
        fp_normalize(hy);
        FpPoly g = fp_gcd(f, hy, p);
        if (fp_deg(g) > 0) {
            fp_edf(g, d, p, rng, out);
            f = fp_exact_div(f, g, p);
            h = fp_mod(h, f, p);
        }
    }
    if (fp_deg(f) > 0) out.push_back(f);
    return out;
}

// Specialization context: rho mapped to an element of exact order n mod q.
struct Reducer {
    long q;
    long rho;
    int n;
};

std::optional<long> map_ground(const GroundScalar& a, const Reducer& R) {
    long acc = 0;
    long rp = 1;
    for (const auto& c : a.coords()) {
        Int num = c.get_num() % R.q;
        Int den = c.get_den() % R.q;
        long dn = den.get_si();
        if (dn == 0) return std::nullopt;
        long nm = num.get_si();
        if (nm < 0) nm += R.q;
        if (dn < 0) dn += R.q;
        acc = (acc + mulmod(mulmod(nm, invmod(dn, R.q), R.q), rp, R.q)) % R.q;
        rp = mulmod(rp, R.rho, R.q);
    }
    return acc;
}

std::optional<GroundScalar> eval_lx(const Lx& v, const GroundScalar& x0) {
    GroundScalar den = v.den().eval(x0);
    if (den.is_zero()) return std::nullopt;
    return v.num().eval(x0) / den;
}

std::vector<long> good_primes(int n) {
    std::vector<long> out;
    for (long q = 50; q < 20000; ++q) {
        if ((q - 1) % n != 0) continue;
        if (!is_prime_long(q)) continue;
        out.push_back(q);
    }
    return out;
}

Reducer make_reducer(long q, int n) {
    long g = primitive_root(q);
    return Reducer{q, powmod(g, (q - 1) / n, q), n};
}

} // namespace

std::optional<CertificateHit> certify_nontrivial_finite(const YPoly& modulus, const YPoly& rep,
                                                        int n, int rounds, unsigned long seed) {
    int ord = modulus.unit().num().unit().order();
    std::mt19937_64 rng(seed);
    auto primes = good_primes(n);
    if (primes.empty()) throw Error("no usable primes for the certificate");
    std::uniform_int_distribution<size_t> prime_pick(0, primes.size() - 1);
    std::uniform_int_distribution<long> xpick(-50, 50);

    int completed = 0;
    int attempts = 0;
    const int max_attempts = std::max(rounds * 25, 200);
    while (completed < rounds && attempts < max_attempts) {
        ++attempts;
        Rational x0 = rat(xpick(rng));
        GroundScalar x0g = GroundScalar::from_rational(ord, x0);
        // Exact specialization of modulus and representative coefficients.
        std::vector<GroundScalar> mod_c, rep_c;
        bool ok = true;
        for (int i = 0; i <= modulus.degree() && ok; ++i) {
            auto v = eval_lx(modulus.coeff(i), x0g);
            if (!v) ok = false;
            else mod_c.push_back(*v);
        }
        for (int i = 0; i <= rep.degree() && ok; ++i) {
            auto v = eval_lx(rep.coeff(i), x0g);
            if (!v) ok = false;
            else rep_c.push_back(*v);
        }
        if (!ok) continue;

        long q = primes[prime_pick(rng)];
        Reducer R = make_reducer(q, n);
        FpPoly fbar, ubar;
        for (const auto& c : mod_c) {
            auto v = map_ground(c, R);
            if (!v) { ok = false; break; }
            fbar.push_back(*v);
        }
        if (ok) {
            for (const auto& c : rep_c) {
                auto v = map_ground(c, R);
                if (!v) { ok = false; break; }
                ubar.push_back(*v);
            }
        }
        if (!ok) continue;
        fp_normalize(fbar);
        fp_normalize(ubar);
        if (fp_deg(fbar) != modulus.degree()) continue; // degree drop
        if (ubar.empty()) continue;
        if (fp_deg(fp_gcd(fbar, fp_derivative(fbar, q), q)) > 0) continue; // not squarefree

        // Subgroup generated by the constants' image in each component.
        long g0 = primitive_root(q);
        bool fired = false;
        std::string detail;
        for (const auto& h : fp_factor_squarefree(fbar, q, rng)) {
            FpPoly u = fp_mod(ubar, h, q);
            if (u.empty()) { ok = false; break; } // representative hit the component
            int e = fp_deg(h);
            Int qe = 1;
            for (int i = 0; i < e; ++i) qe *= q;
            Int E = (qe - 1) / n;
            FpPoly t = fp_powmod(u, E, h, q);
            // Constants' image: gamma = g0^((q^e-1)/n) mod q, a scalar.
            long gamma = powmod_big(g0, E, q);
            bool in_H = false;
            if (fp_deg(t) == 0) {
                long tv = t[0];
                long cur = 1;
                for (int k = 0; k < n; ++k) {
                    if (cur == tv) { in_H = true; break; }
                    cur = mulmod(cur, gamma, q);
                }
            }
            if (!in_H) {
                fired = true;
                detail = "x0=" + rat_to_string(x0) + ", q=" + std::to_string(q) +
                         ", component degree " + std::to_string(e) +
                         ": residue power lies outside the constants subgroup";
                break;
            }
        }
        if (!ok) continue;
        ++completed;
        if (fired) return CertificateHit{x0, q, detail};
    }
    if (completed == 0) throw Error("nontriviality certificate: exhausted resampling budget");
    return std::nullopt;
}

std::optional<CertificateHit> certify_nontrivial_lx(const Lx& rep, int n, int rounds,
                                                    unsigned long seed) {
    if (rep.is_zero()) throw Error("certificate on zero representative");
    int ord = rep.num().unit().order();
    std::mt19937_64 rng(seed);
    auto primes = good_primes(n);
    if (primes.empty()) throw Error("no usable primes for the certificate");
    std::uniform_int_distribution<size_t> prime_pick(0, primes.size() - 1);
    std::uniform_int_distribution<long> xpick(-50, 50);

    int completed = 0;
    int attempts = 0;
    const int max_attempts = std::max(rounds * 25, 200);
    while (completed < rounds && attempts < max_attempts) {
        ++attempts;
        Rational x0 = rat(xpick(rng));
        Rational x1 = rat(xpick(rng));
        if (x0 == x1) continue;
        auto v0 = eval_lx(rep, GroundScalar::from_rational(ord, x0));
        auto v1 = eval_lx(rep, GroundScalar::from_rational(ord, x1));
        if (!v0 || !v1 || v0->is_zero() || v1->is_zero()) continue;

        long q = primes[prime_pick(rng)];
        Reducer R = make_reducer(q, n);
        auto b0 = map_ground(*v0, R);
        auto b1 = map_ground(*v1, R);
        if (!b0 || !b1 || *b0 == 0 || *b1 == 0) continue;
        long ratio = mulmod(*b0, invmod(*b1, q), q);
        ++completed;
        if (powmod(ratio, (q - 1) / n, q) != 1) {
            std::string detail = "x0=" + rat_to_string(x0) + ", x1=" + rat_to_string(x1) +
                                 ", q=" + std::to_string(q) +
                                 ": value ratio is not an n-th power";
            return CertificateHit{x0, q, detail};
        }
    }
    if (completed == 0) throw Error("nontriviality certificate: exhausted resampling budget");
    return std::nullopt;
}

} // namespace tamesym
