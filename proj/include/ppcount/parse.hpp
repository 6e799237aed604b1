#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppcount/curve.hpp"
#include "ppcount/modarith.hpp"

namespace ppcount {

enum class Var { None, X1, X2 };

struct Term {
    BigInt coeff;
    Var var = Var::None;
    unsigned exponent = 0;
};

/// Sum of single-variable terms c * v^e as written in the input.
struct PolyExpr {
    std::vector<Term> terms;

    /// Integer coefficient vectors (g in x1 carrying constants, h in x2), like terms merged.
    std::pair<std::vector<BigInt>, std::vector<BigInt>> coefficients() const {
        std::vector<BigInt> g{0}, h;
        for (const auto& t : terms) {
            const bool constant = t.var == Var::None || t.exponent == 0;
            auto& target = (constant || t.var == Var::X1) ? g : h;
            const std::size_t e = constant ? 0 : t.exponent;
            if (target.size() <= e) target.resize(e + 1, BigInt(0));
            target[e] += t.coeff;
        }
        auto trim = [](std::vector<BigInt>& v) {
            while (!v.empty() && sgn(v.back()) == 0) v.pop_back();
        };
        trim(g);
        trim(h);
        return {std::move(g), std::move(h)};
    }

    SeparatedCurve to_curve(const PrimePowerCtx& ctx) const {
        auto [g, h] = coefficients();
        return SeparatedCurve::normalize(std::move(g), std::move(h), ctx);
    }
};

enum class ParseErrorKind { SyntaxError, NotSeparated, UnknownVariable };

inline std::string_view to_string(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::SyntaxError: return "SyntaxError";
        case ParseErrorKind::NotSeparated: return "NotSeparated";
        case ParseErrorKind::UnknownVariable: return "UnknownVariable";
    }
    return "Unknown";
}

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t offset, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + " at byte " + std::to_string(offset) + ": " + msg),
          kind_(kind),
          offset_(offset) {}

    ParseErrorKind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    ParseErrorKind kind_;
    std::size_t offset_;
};

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : s_(text) {}

    PolyExpr parse() {
        PolyExpr out;
        skip_ws();
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        out.terms.push_back(term(negative));
        for (;;) {
            skip_ws();
            if (at_end()) break;
            const char c = peek();
            if (c != '+' && c != '-') fail(ParseErrorKind::SyntaxError, std::string("expected '+' or '-', found '") + c + "'");
            ++pos_;
            out.terms.push_back(term(c == '-'));
        }
        return out;
    }

private:
    Term term(bool negative) {
        skip_ws();
        Term t;
        t.coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            t.coeff = integer();
            have_coeff = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (!starts_var()) fail(ParseErrorKind::SyntaxError, "expected a variable after '*'");
            }
        }
        if (starts_var()) {
            t.var = variable();
            t.exponent = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(ParseErrorKind::SyntaxError, "expected an exponent");
                const BigInt e = integer();
                if (e > 1'000'000) fail(ParseErrorKind::SyntaxError, "exponent too large");
                t.exponent = static_cast<unsigned>(e.get_ui());
            }
            skip_ws();
            const std::size_t at = pos_;
            if (peek() == '*' || starts_var()) {
                if (peek() == '*') {
                    ++pos_;
                    skip_ws();
                }
                if (!starts_var()) fail(ParseErrorKind::SyntaxError, "expected a variable after '*'");
                const Var other = variable();
                if (other != t.var) throw ParseError(ParseErrorKind::NotSeparated, at, "term mixes x1 and x2");
                throw ParseError(ParseErrorKind::SyntaxError, at, "repeated variable within a term");
            }
        } else if (!have_coeff) {
            if (std::isalpha(static_cast<unsigned char>(peek())))
                fail(ParseErrorKind::UnknownVariable, "unknown variable '" + identifier_at(pos_) + "'");
            fail(ParseErrorKind::SyntaxError, at_end() ? "unexpected end of input" : "expected a term");
        }
        if (negative) t.coeff = -t.coeff;
        return t;
    }

    BigInt integer() {
        const std::size_t begin = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return BigInt(std::string(s_.substr(begin, pos_ - begin)));
    }

    bool starts_var() const { return peek() == 'x' || peek() == 'y' || std::isalpha(static_cast<unsigned char>(peek())); }

    std::string identifier_at(std::size_t at) const {
        std::size_t end = at;
        while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
        return std::string(s_.substr(at, end - at));
    }

    Var variable() {
        const std::size_t at = pos_;
        // Longest match among x1, x2, x, y; a following digit other than 1/2 is not a variable.
        if (peek() == 'x') {
            ++pos_;
            if (peek() == '1') {
                ++pos_;
                return check_boundary(at, Var::X1);
            }
            if (peek() == '2') {
                ++pos_;
                return check_boundary(at, Var::X2);
            }
            return check_boundary(at, Var::X1);
        }
        if (peek() == 'y') {
            ++pos_;
            return check_boundary(at, Var::X2);
        }
        throw ParseError(ParseErrorKind::UnknownVariable, at, "unknown variable '" + identifier_at(at) + "'");
    }

    Var check_boundary(std::size_t at, Var v) {
        // "x1" followed directly by x/y is a juxtaposed product, handled by the caller.
        if (std::isalnum(static_cast<unsigned char>(peek())) && peek() != 'x' && peek() != 'y')
            throw ParseError(ParseErrorKind::UnknownVariable, at, "unknown variable '" + identifier_at(at) + "'");
        return v;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }

    [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg) const { throw ParseError(kind, pos_, msg); }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline PolyExpr parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

/// Canonical text: x2 terms by descending exponent, then x1 terms, then the constant.
/// parse_poly(to_string(e)) has the same coefficients as e.
inline std::string to_string(const PolyExpr& e) {
    const auto [g, h] = e.coefficients();
    std::string out;
    auto emit = [&](const BigInt& c, const char* var, std::size_t exp) {
        if (sgn(c) == 0) return;
        const bool neg = sgn(c) < 0;
        const BigInt mag = neg ? BigInt(-c) : c;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        if (exp == 0) {
            out += mag.get_str();
            return;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += var;
        if (exp > 1) out += "^" + std::to_string(exp);
    };
    for (std::size_t i = h.size(); i-- > 1;) emit(h[i], "x2", i);
    for (std::size_t i = g.size(); i-- > 1;) emit(g[i], "x1", i);
    if (!g.empty()) emit(g[0], "", 0);
    return out.empty() ? "0" : out;
}

}  // namespace ppcount
