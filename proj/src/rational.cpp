#include "tamesym/rational.hpp"

#include <cctype>

namespace tamesym {

Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw Error("empty rational literal");
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rational q(s);
            q.canonicalize();
            return q;
        }
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw Error("malformed rational literal: " + s);
        Rational q(num + "/" + den);
        if (q.get_den() == 0) throw Error("rational with zero denominator: " + s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational literal: " + s);
    }
}

bool perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return true;
}

bool rational_sqrt(const Rational& q, Rational& root) {
    if (q < 0) return false;
    Int rn, rd;
    if (!perfect_square(q.get_num(), rn)) return false;
    if (!perfect_square(q.get_den(), rd)) return false;
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

} // namespace tamesym
