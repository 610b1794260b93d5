#pragma once

#include "asymcheck/field.hpp"
#include "asymcheck/form.hpp"

#include <cctype>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

namespace asymcheck {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// Homogeneous integer cubic in x1..xm. Monomials are stored as sorted index
// triples, so x1*x4^2 is (1,4,4); zero coefficients are dropped.
struct CubicPolynomial {
    int m = 0;
    std::map<Triple, Scalar> terms;

    bool operator==(const CubicPolynomial& o) const { return m == o.m && terms == o.terms; }

    void add_term(const Triple& t, Scalar c) {
        auto it = terms.find(t);
        Scalar v = (it == terms.end() ? 0 : it->second) + c;
        if (v == 0) terms.erase(t);
        else terms[t] = v;
    }

    Scalar evaluate(const Vec& x) const {
        Scalar acc = 0;
        for (const auto& [t, c] : terms)
            acc += c * x[t[0] - 1] * x[t[1] - 1] * x[t[2] - 1];
        return acc;
    }
};

namespace detail {

// Recursive-descent parser for
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := [int] [ '(' expr ')' | monomial ]
//   monomial := factor ('*'? factor)*
//   factor   := 'x' int ['^' int]
// Whitespace is insignificant; juxtaposed factors multiply.
class CubicParser {
public:
    CubicParser(const std::string& text, int m) : s_(text), m_(m) {}

    CubicPolynomial parse() {
        CubicPolynomial out;
        out.m = m_;
        parse_expr(out, 1);
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return out;
    }

private:
    void parse_expr(CubicPolynomial& out, Scalar scale) {
        Scalar sign = 1;
        skip_ws();
        if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1 : 1;
        parse_term(out, scale * sign);
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            take();
            parse_term(out, scale * (c == '-' ? -1 : 1));
        }
    }

    void parse_term(CubicPolynomial& out, Scalar scale) {
        skip_ws();
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            scale *= parse_int();
            have_coeff = true;
            skip_ws();
            if (peek() == '*') { // optional separator between coefficient and monomial
                take();
                skip_ws();
                if (peek() != 'x') fail("expected variable after '*'");
            }
        }
        skip_ws();
        if (peek() == '(') {
            take();
            parse_expr(out, scale);
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            take();
            return;
        }
        if (peek() == 'x') {
            parse_monomial(out, scale);
            return;
        }
        if (!have_coeff) fail("expected coefficient, '(' or variable");
        fail("constant term has degree 0, expected degree 3");
    }

    void parse_monomial(CubicPolynomial& out, Scalar coeff) {
        int exps[3];
        int deg = 0;
        std::size_t start = pos_;
        while (true) {
            skip_ws();
            if (peek() == '*') {
                take();
                skip_ws();
                if (peek() != 'x') fail("expected factor after '*'");
            } else if (peek() != 'x') {
                break;
            }
            take();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index after 'x'");
            Scalar idx = parse_int();
            if (idx < 1 || idx > m_) fail("variable index out of range 1.." + std::to_string(m_));
            Scalar exp = 1;
            skip_ws();
            if (peek() == '^') {
                take();
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent after '^'");
                exp = parse_int();
            }
            for (Scalar e = 0; e < exp; ++e) {
                if (deg == 3) fail_at("monomial degree exceeds 3", start);
                exps[deg++] = static_cast<int>(idx);
            }
        }
        if (deg != 3) fail_at("monomial has degree " + std::to_string(deg) + ", expected 3", start);
        out.add_term(sorted_triple(exps[0], exps[1], exps[2]), coeff);
    }

    Scalar parse_int() {
        Scalar v = 0;
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (take() - '0');
            if (v > (1LL << 40)) fail_at("integer literal too large", start);
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char take() { return s_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const { throw ParseError(msg, pos); }

    const std::string& s_;
    int m_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline CubicPolynomial parse_cubic(const std::string& text, int m) {
    return detail::CubicParser(text, m).parse();
}

// Canonical printer; parse(print(p)) is the identity.
inline std::string to_string(const CubicPolynomial& p) {
    if (p.terms.empty()) return "0(x1^3)"; // zero polynomial, still parseable
    std::string out;
    bool first = true;
    for (const auto& [t, c] : p.terms) {
        Scalar a = c;
        if (first) {
            if (a < 0) { out += "-"; a = -a; }
            first = false;
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string mono;
        for (int pos = 0; pos < 3;) {
            int var = t[pos];
            int exp = 0;
            while (pos < 3 && t[pos] == var) { ++exp; ++pos; }
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(var);
            if (exp > 1) mono += "^" + std::to_string(exp);
        }
        if (a != 1) out += std::to_string(a) + "*";
        out += mono;
    }
    return out;
}

// Form with f(x) = mu(x,x,x): the square-free coefficients carry factors 3
// and 6. Over the integers those must divide exactly; over F2 and F3 an
// integral lift is required first since 3 or 6 is not invertible there.
inline TrilinearForm form_from_cubic(const CubicPolynomial& f, const Field& field) {
    TrilinearForm mu(field, f.m);
    bool direct_division = field.is_finite() && field.p() != 2 && field.p() != 3;
    for (const auto& [t, c] : f.terms) {
        Scalar divisor = 1;
        if (t[0] != t[1] && t[1] != t[2]) divisor = 6;
        else if (t[0] != t[1] || t[1] != t[2]) divisor = 3;
        Scalar v;
        if (direct_division) {
            v = field.mul(field.canon(c), field.inv(divisor));
        } else {
            if (c % divisor != 0)
                throw std::invalid_argument("coefficient of " + std::string("x") + std::to_string(t[0]) +
                                            "-monomial not divisible by " + std::to_string(divisor));
            v = c / divisor;
        }
        mu.set(t[0], t[1], t[2], v);
    }
    return mu;
}

} // namespace asymcheck
