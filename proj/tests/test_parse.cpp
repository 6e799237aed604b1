#include <gtest/gtest.h>

#include <random>

#include "ppcount/parse.hpp"

using namespace ppcount;

namespace {

std::vector<BigInt> big(std::vector<long> c) {
    std::vector<BigInt> b;
    for (long x : c) b.emplace_back(x);
    return b;
}

ParseError parse_error(const char* text) {
    try {
        parse_poly(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for " << text;
    return ParseError(ParseErrorKind::SyntaxError, 0, "");
}

}  // namespace

TEST(ParsePoly, SpecExamples) {
    const auto a = parse_poly("x2^2 - x1^3");
    EXPECT_EQ(a.coefficients().first, big({0, 0, 0, -1}));
    EXPECT_EQ(a.coefficients().second, big({0, 0, 1}));
    const auto c = a.to_curve(PrimePowerCtx(5, 2));
    EXPECT_EQ(c.g().coeffs(), big({0, 0, 0, 24}));

    const auto b = parse_poly("x^2 + y^2 + 1");
    EXPECT_EQ(b.coefficients().first, big({1, 0, 1}));
    EXPECT_EQ(b.coefficients().second, big({0, 0, 1}));

    EXPECT_EQ(parse_error("x1*x2").kind(), ParseErrorKind::NotSeparated);
}

TEST(ParsePoly, Forms) {
    EXPECT_EQ(parse_poly("3x1").coefficients().first, big({0, 3}));
    EXPECT_EQ(parse_poly("3 * x1 ^ 2").coefficients().first, big({0, 0, 3}));
    EXPECT_EQ(parse_poly("-x2 + 5").coefficients().second, big({0, -1}));
    EXPECT_EQ(parse_poly("x1 + x1 - 2*x1").coefficients().first, big({}));
    EXPECT_EQ(parse_poly("7").coefficients().first, big({7}));
    EXPECT_EQ(parse_poly("2*x2^0").coefficients().first, big({2}));
    EXPECT_EQ(parse_poly("123456789012345678901234567890*x1").coefficients().first[1],
              BigInt("123456789012345678901234567890"));
}

TEST(ParsePoly, Errors) {
    EXPECT_EQ(parse_error("x1 x2").kind(), ParseErrorKind::NotSeparated);
    EXPECT_EQ(parse_error("x1*x1").kind(), ParseErrorKind::SyntaxError);
    EXPECT_EQ(parse_error("x3").kind(), ParseErrorKind::UnknownVariable);
    EXPECT_EQ(parse_error("z^2").kind(), ParseErrorKind::UnknownVariable);
    EXPECT_EQ(parse_error("x1 +").kind(), ParseErrorKind::SyntaxError);
    EXPECT_EQ(parse_error("").kind(), ParseErrorKind::SyntaxError);
    EXPECT_EQ(parse_error("x1^").kind(), ParseErrorKind::SyntaxError);
    const auto e = parse_error("x1 + x2 ) ");
    EXPECT_EQ(e.kind(), ParseErrorKind::SyntaxError);
    EXPECT_EQ(e.offset(), 8u);
}

TEST(PrettyPrint, Canonical) {
    EXPECT_EQ(to_string(parse_poly("1 - x1^3 + x2^2")), "x2^2 - x1^3 + 1");
    EXPECT_EQ(to_string(parse_poly("-3*x1")), "-3*x1");
    EXPECT_EQ(to_string(parse_poly("x1 - x1")), "0");
}

TEST(ParseProperty, RoundTripIsAFixedPoint) {
    std::mt19937_64 rng(21);
    const char* vars[] = {"x1", "x2", "x", "y"};
    for (int i = 0; i < 500; ++i) {
        std::string text;
        const int terms = 1 + static_cast<int>(rng() % 6);
        for (int t = 0; t < terms; ++t) {
            const long c = static_cast<long>(rng() % 2000) - 1000;
            text += (c < 0 ? " - " : (t == 0 ? "" : " + ")) + std::to_string(std::labs(c));
            if (rng() % 4) text += std::string("*") + vars[rng() % 4] + "^" + std::to_string(rng() % 7);
        }
        const PolyExpr e = parse_poly(text);
        const std::string printed = to_string(e);
        const PolyExpr back = parse_poly(printed);
        EXPECT_EQ(back.coefficients(), e.coefficients()) << text;
        EXPECT_EQ(to_string(back), printed);
    }
}
