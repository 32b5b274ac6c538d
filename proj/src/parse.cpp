#include "tamesym/parse.hpp"

#include <cctype>
#include <cstddef>
#include <utility>
#include <vector>

#include "tamesym/errors.hpp"
#include "tamesym/fields.hpp"

namespace tamesym {

namespace {

std::string at_pos(std::size_t pos) { return " at position " + std::to_string(pos); }

} // namespace

TriPoly TriPoly::constant(const GroundScalar& c) {
    TriPoly t(c.order());
    t.add_term({0, 0, 0}, c);
    return t;
}

TriPoly TriPoly::variable(int n, int axis) {
    if (axis < 0 || axis > 2) throw Error("variable axis out of range");
    TriPoly t(n);
    Key e{0, 0, 0};
    e[axis] = 1;
    t.add_term(e, GroundScalar::one(n));
    return t;
}

void TriPoly::add_term(const Key& e, const GroundScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    GroundScalar s = it->second + c;
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = s;
}

TriPoly TriPoly::operator+(const TriPoly& o) const {
    TriPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

TriPoly TriPoly::operator-(const TriPoly& o) const {
    TriPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

TriPoly TriPoly::operator-() const {
    TriPoly r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

TriPoly TriPoly::operator*(const TriPoly& o) const {
    TriPoly r(n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return r;
}

TriPoly TriPoly::pow(int e) const {
    if (e < 0) throw Error("negative exponent");
    TriPoly r = constant(GroundScalar::one(n_));
    TriPoly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e > 0) b = b * b;
    }
    return r;
}

bool TriPoly::uses(int axis) const {
    for (const auto& [e, c] : terms_)
        if (e[axis] > 0) return true;
    return false;
}

int TriPoly::total_degree() const {
    if (terms_.empty()) throw Error("degree of the zero polynomial");
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

bool TriPoly::is_homogeneous() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = e[0] + e[1] + e[2];
        if (d < 0) d = s;
        if (s != d) return false;
    }
    return true;
}

BiPoly TriPoly::to_bipoly() const {
    if (uses(2)) throw Error("z is not allowed in this expression");
    int dy = 0;
    for (const auto& [e, c] : terms_) dy = std::max(dy, e[1]);
    std::vector<XPoly> cs(dy + 1, xpoly_zero(n_));
    for (const auto& [e, c] : terms_) cs[e[1]] = cs[e[1]] + XPoly::monomial("x", c, e[0]);
    return BiPoly("y", xpoly_one(n_), std::move(cs));
}

XPoly TriPoly::to_xpoly() const {
    if (uses(1) || uses(2)) throw Error("only x may appear in this expression");
    XPoly p = xpoly_zero(n_);
    for (const auto& [e, c] : terms_) p = p + XPoly::monomial("x", c, e[0]);
    return p;
}

HomPoly TriPoly::to_form() const {
    if (is_zero()) throw Error("a curve component cannot be the zero polynomial");
    if (uses(2) && !is_homogeneous())
        throw Error("an equation involving z must be homogeneous");
    int d = total_degree();
    HomPoly h(n_, d);
    for (const auto& [e, c] : terms_) h.add_term(e[0], e[1], c);
    return h;
}

namespace {

// Parseable text for a ground scalar with a rho component, without the
// surrounding parentheses.
std::string rho_text(const GroundScalar& c) {
    const auto& co = c.coords();
    Rational a = co[0];
    Rational b = co.size() > 1 ? co[1] : Rational(0);
    std::string s;
    if (a != 0) s = rat_to_string(a);
    if (b != 0) {
        bool bneg = b < 0;
        Rational ab = b;
        if (bneg) ab = -ab;
        std::string bp = ab == 1 ? "rho" : rat_to_string(ab) + "*rho";
        if (s.empty())
            s = (bneg ? "-" : "") + bp;
        else
            s += (bneg ? "-" : "+") + bp;
    }
    if (s.empty()) s = "0";
    return s;
}

} // namespace

std::string TriPoly::to_string() const {
    if (terms_.empty()) return "0";
    static const char* names[3] = {"x", "y", "z"};
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (int a = 0; a < 3; ++a) {
            if (e[a] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[a];
            if (e[a] > 1) mono += "^" + std::to_string(e[a]);
        }
        bool neg = false;
        std::string piece;
        if (c.is_rational()) {
            Rational q = c.rational_value();
            neg = q < 0;
            Rational aq = q;
            if (neg) aq = -aq;
            if (mono.empty())
                piece = rat_to_string(aq);
            else if (aq == 1)
                piece = mono;
            else
                piece = rat_to_string(aq) + "*" + mono;
        } else {
            piece = "(" + rho_text(c) + ")";
            if (!mono.empty()) piece += "*" + mono;
        }
        if (first) {
            out = (neg ? "-" : "") + piece;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + piece;
        }
    }
    return out;
}

namespace {

struct Token {
    enum Kind { Int, Ident, Op, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(c)) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Token::Int, s.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(c)) {
            while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Token::Ident, s.substr(start, i - start), start});
            continue;
        }
        if (std::string("+-*/^()").find(static_cast<char>(c)) != std::string::npos) {
            ++i;
            out.push_back({Token::Op, std::string(1, static_cast<char>(c)), start});
            continue;
        }
        throw Error("unexpected character '" + std::string(1, static_cast<char>(c)) + "'" +
                    at_pos(start));
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> toks, int n) : t_(std::move(toks)), n_(n) {}

    ParsedExpr parse_top() {
        TriPoly num = parse_expr();
        std::optional<TriPoly> den;
        if (is_op("/")) {
            std::size_t slash = peek().pos;
            advance();
            den = parse_expr();
            if (den->is_zero()) throw Error("division by zero polynomial" + at_pos(slash));
        }
        if (peek().kind != Token::End)
            throw Error("unexpected '" + peek().text + "'" + at_pos(peek().pos));
        return {std::move(num), std::move(den)};
    }

  private:
    const Token& peek() const { return t_[i_]; }
    const Token& look(std::size_t ahead) const {
        std::size_t j = i_ + ahead;
        return j < t_.size() ? t_[j] : t_.back();
    }
    Token advance() { return t_[i_++]; }
    bool is_op(const char* s) const { return peek().kind == Token::Op && peek().text == s; }

    TriPoly parse_expr() {
        TriPoly v = parse_term();
        while (is_op("+") || is_op("-")) {
            bool plus = peek().text == "+";
            advance();
            TriPoly r = parse_term();
            v = plus ? v + r : v - r;
        }
        return v;
    }

    TriPoly parse_term() {
        TriPoly v = parse_factor();
        while (is_op("*")) {
            advance();
            v = v * parse_factor();
        }
        return v;
    }

    TriPoly parse_factor() {
        TriPoly v = parse_base();
        if (is_op("^")) {
            advance();
            if (peek().kind != Token::Int)
                throw Error("expected a number after '^'" + at_pos(peek().pos));
            Token e = advance();
            if (e.text.size() > 2)
                throw Unsupported("exponent larger than 99" + at_pos(e.pos));
            v = v.pow(std::stoi(e.text));
        }
        return v;
    }

    TriPoly parse_base() {
        const Token& t = peek();
        if (t.kind == Token::Int) {
            Token a = advance();
            // An integer directly followed by '/' and another integer is a
            // rational literal, not a top-level division.
            if (is_op("/") && look(1).kind == Token::Int) {
                advance();
                Token b = advance();
                Int den(b.text);
                if (den == 0) throw Error("division by zero in rational literal" + at_pos(b.pos));
                Rational q(Int(a.text), den);
                q.canonicalize();
                return TriPoly::constant(GroundScalar::from_rational(n_, q));
            }
            return TriPoly::constant(GroundScalar::from_rational(n_, Rational(Int(a.text))));
        }
        if (t.kind == Token::Ident) {
            Token id = advance();
            if (id.text == "x") return TriPoly::variable(n_, 0);
            if (id.text == "y") return TriPoly::variable(n_, 1);
            if (id.text == "z") return TriPoly::variable(n_, 2);
            if (id.text == "rho") return TriPoly::constant(GroundScalar::rho(n_));
            throw Error("unknown name '" + id.text + "'" + at_pos(id.pos));
        }
        if (is_op("(")) {
            advance();
            TriPoly v = parse_expr();
            if (!is_op(")")) throw Error("expected ')'" + at_pos(peek().pos));
            advance();
            return v;
        }
        if (is_op("-")) {
            advance();
            return -parse_factor();
        }
        if (t.kind == Token::End) throw Error("unexpected end of input" + at_pos(t.pos));
        throw Error("unexpected '" + t.text + "'" + at_pos(t.pos));
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
    int n_;
};

} // namespace

ParsedExpr parse_expression(const std::string& text, int n) {
    return Parser(tokenize(text), n).parse_top();
}

TriPoly parse_polynomial(const std::string& text, int n) {
    ParsedExpr e = parse_expression(text, n);
    if (e.den) throw Error("a ratio is not allowed here: " + text);
    return e.num;
}

std::string parsed_to_string(const ParsedExpr& e) {
    std::string s = e.num.to_string();
    if (e.den) s += " / (" + e.den->to_string() + ")";
    return s;
}

YRat parsed_to_yrat(const ParsedExpr& e) {
    YRat num = yrat_of(ypoly_from_bipoly(e.num.to_bipoly()));
    if (!e.den) return num;
    YRat den = yrat_of(ypoly_from_bipoly(e.den->to_bipoly()));
    return num / den;
}

HomPoly parsed_to_form(const ParsedExpr& e) {
    if (e.den) throw Error("a curve equation cannot be a ratio");
    return e.num.to_form();
}

} // namespace tamesym
