#include "tamesym/ground.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace tamesym {

namespace {

// Dense rational polynomials (ascending coefficients), used only for the
// cyclotomic modulus bookkeeping below.
using QPoly = std::vector<Rational>;

void strip(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    strip(r);
    return r;
}

// Division with remainder; divisor must be nonzero.
void divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    q.assign(a.empty() ? 1 : a.size(), Rational(0));
    while (deg(a) >= deg(b) && !a.empty()) {
        Rational f = a.back() / b.back();
        int shift = deg(a) - deg(b);
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        strip(a);
    }
    strip(q);
    r = a;
}

// Extended gcd step specialized to inversion: returns u with u*a == 1 mod m.
// Throws when a shares a factor with m (cannot happen for cyclotomic moduli).
QPoly inv_mod(const QPoly& a, const QPoly& m) {
    QPoly r0 = m, r1 = a, s0 = {}, s1 = {Rational(1)};
    while (!r1.empty()) {
        QPoly q, r;
        divmod(r0, r1, q, r);
        QPoly qs = mul(q, s1);
        QPoly s2 = s0;
        s2.resize(std::max(s2.size(), qs.size()), Rational(0));
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        strip(s2);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (deg(r0) != 0) throw Error("element not invertible modulo cyclotomic polynomial");
    Rational lead = r0[0];
    for (auto& c : s0) c /= lead;
    return s0;
}

struct Tables {
    std::map<int, QPoly> cyclo;
    std::mutex lock;
};

Tables& tables() {
    static Tables t;
    return t;
}

QPoly cyclotomic_poly(int n);

QPoly cyclotomic_uncached(int n) {
    // t^n - 1 divided by the product of all proper cyclotomic divisors.
    QPoly num(n + 1, Rational(0));
    num[0] = -1;
    num[n] = 1;
    QPoly den = {Rational(1)};
    for (int d = 1; d < n; ++d)
        if (n % d == 0) den = mul(den, cyclotomic_poly(d));
    QPoly q, r;
    divmod(num, den, q, r);
    if (!r.empty()) throw Error("cyclotomic division left a remainder");
    return q;
}

QPoly cyclotomic_poly(int n) {
    auto& t = tables();
    {
        std::lock_guard<std::mutex> g(t.lock);
        auto it = t.cyclo.find(n);
        if (it != t.cyclo.end()) return it->second;
    }
    QPoly p = cyclotomic_uncached(n);
    std::lock_guard<std::mutex> g(t.lock);
    t.cyclo.emplace(n, p);
    return p;
}

} // namespace

int GroundScalar::phi(int n) {
    if (n <= 0) throw Error("cyclotomic order must be positive");
    int result = n;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

const std::vector<Rational>& GroundScalar::cyclotomic(int n) {
    static std::map<int, QPoly> cache;
    static std::mutex lock;
    std::lock_guard<std::mutex> g(lock);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, cyclotomic_poly(n)).first;
    return it->second;
}

GroundScalar::GroundScalar(int n, std::vector<Rational> coords) : n_(n), c_(std::move(coords)) {
    int d = phi(n);
    if (static_cast<int>(c_.size()) > d) {
        // Reduce modulo the cyclotomic polynomial.
        const QPoly& m = cyclotomic(n);
        QPoly a = c_;
        strip(a);
        QPoly q, r;
        if (!a.empty()) divmod(a, m, q, r);
        else r = {};
        c_.assign(d, Rational(0));
        for (std::size_t i = 0; i < r.size(); ++i) c_[i] = r[i];
    } else {
        c_.resize(d, Rational(0));
    }
    for (auto& x : c_) x.canonicalize();
}

GroundScalar GroundScalar::zero(int n) { return GroundScalar(n, {}); }

GroundScalar GroundScalar::one(int n) { return GroundScalar(n, {Rational(1)}); }

GroundScalar GroundScalar::rho(int n) {
    if (n == 1) return one(1);
    if (n == 2) return GroundScalar(2, {Rational(-1)});
    return GroundScalar(n, {Rational(0), Rational(1)});
}

GroundScalar GroundScalar::from_rational(int n, const Rational& q) {
    return GroundScalar(n, {q});
}

bool GroundScalar::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool GroundScalar::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool GroundScalar::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational GroundScalar::rational_value() const {
    if (!is_rational()) throw Error("ground scalar is not rational: " + to_string());
    return c_.empty() ? Rational(0) : c_[0];
}

GroundScalar GroundScalar::operator-() const {
    std::vector<Rational> r = c_;
    for (auto& x : r) x = -x;
    return GroundScalar(n_, std::move(r));
}

GroundScalar GroundScalar::operator+(const GroundScalar& o) const {
    if (n_ != o.n_) throw Error("mixed cyclotomic orders in ground arithmetic");
    std::vector<Rational> r = c_;
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return GroundScalar(n_, std::move(r));
}

GroundScalar GroundScalar::operator-(const GroundScalar& o) const { return *this + (-o); }

GroundScalar GroundScalar::operator*(const GroundScalar& o) const {
    if (n_ != o.n_) throw Error("mixed cyclotomic orders in ground arithmetic");
    QPoly a = c_, b = o.c_;
    strip(a);
    strip(b);
    return GroundScalar(n_, mul(a, b));
}

GroundScalar GroundScalar::inv() const {
    if (is_zero()) throw Error("division by zero in ground field");
    if (is_rational()) return from_rational(n_, Rational(1) / rational_value());
    QPoly a = c_;
    strip(a);
    return GroundScalar(n_, inv_mod(a, cyclotomic(n_)));
}

GroundScalar GroundScalar::operator/(const GroundScalar& o) const { return *this * o.inv(); }

GroundScalar GroundScalar::pow(long e) const {
    if (e == 0) return one(n_);
    GroundScalar base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
    GroundScalar acc = one(n_);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool GroundScalar::operator==(const GroundScalar& o) const {
    return n_ == o.n_ && c_ == o.c_;
}

GroundScalar GroundScalar::conjugate(int j) const {
    j %= n_;
    if (j < 0) j += n_;
    if (std::gcd(j, n_) != 1) throw Error("conjugation index not coprime to order");
    // rho^i -> rho^(i*j mod n); powers >= phi(n) are folded by the constructor.
    std::vector<Rational> r(n_, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[(i * j) % n_] += c_[i];
    // rho^k for k >= phi(n) must be rewritten via t^n = 1 first: the vector r
    // above is indexed by exponents mod n, which the constructor reduces mod
    // the cyclotomic polynomial after we re-express t^k directly.
    return GroundScalar(n_, std::move(r));
}

Rational GroundScalar::norm_to_q() const {
    GroundScalar acc = one(n_);
    for (int j = 1; j <= n_; ++j) {
        if (std::gcd(j, n_) == 1) acc = acc * conjugate(j);
    }
    if (!acc.is_rational()) throw Error("galois norm failed to land in Q");
    return acc.rational_value();
}

std::optional<GroundScalar> GroundScalar::sqrt() const {
    int d = phi(n_);
    if (d == 1) {
        Rational r;
        if (!rational_sqrt(rational_value(), r)) return std::nullopt;
        return from_rational(n_, r);
    }
    if (d != 2) throw Unsupported("square roots only supported for ground fields of degree <= 2");
    // Phi_n = t^2 + p t + q; rho = (-p + sqrt(D))/2 with D = p^2 - 4q.
    const QPoly& m = cyclotomic(n_);
    Rational p = m[1], q0 = m[0];
    Rational D = p * p - 4 * q0;
    // this = u + v*rho = a + b*sqrt(D) with a = u - v p/2, b = v/2.
    Rational u = c_[0], v = c_[1];
    Rational a = u - v * p / 2, b = v / 2;
    auto from_ab = [&](const Rational& x, const Rational& y) {
        // x + y*sqrt(D) = (x + y p) + 2 y rho
        return GroundScalar(n_, {x + y * p, 2 * y});
    };
    if (b == 0) {
        Rational r;
        if (rational_sqrt(a, r)) return from_rational(n_, r);
        if (D != 0 && rational_sqrt(a / D, r)) return from_ab(Rational(0), r);
        return std::nullopt;
    }
    Rational nrm = a * a - D * b * b;
    Rational mroot;
    if (!rational_sqrt(nrm, mroot)) return std::nullopt;
    for (int sign = 0; sign < 2; ++sign) {
        Rational mm = sign ? -mroot : mroot;
        Rational usq = (a + mm) / 2;
        Rational ur;
        if (usq != 0 && rational_sqrt(usq, ur) && ur != 0) {
            Rational vr = b / (2 * ur);
            GroundScalar cand = from_ab(ur, vr);
            if (cand * cand == *this) return cand;
        }
    }
    return std::nullopt;
}

std::string GroundScalar::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rational v = c_[i];
        if (first) {
            if (v < 0) {
                out << "-";
                v = -v;
            }
            first = false;
        } else {
            out << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        if (i == 0) {
            out << rat_to_string(v);
        } else {
            if (v != 1) out << rat_to_string(v) << "*";
            out << "rho";
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

} // namespace tamesym
