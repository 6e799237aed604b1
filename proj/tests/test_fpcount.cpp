#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ppcount/fpcount.hpp"
#include "ppcount/oracle.hpp"
#include "ppcount/parse.hpp"

using namespace ppcount;

namespace {

SeparatedCurve curve(const char* text, u64 p) { return parse_poly(text).to_curve(PrimePowerCtx(p, 1)); }

}  // namespace

TEST(ValueHistogram, SpecExamples) {
    EXPECT_EQ(value_histogram(FpPoly(5, {0, 0, 1})).counts, (std::vector<std::uint32_t>{1, 2, 0, 0, 2}));
    EXPECT_EQ(value_histogram(FpPoly(3, {0, 1})).counts, (std::vector<std::uint32_t>{1, 1, 1}));
    EXPECT_EQ(value_histogram(FpPoly(3, {2})).counts, (std::vector<std::uint32_t>{0, 0, 3}));
    EXPECT_EQ(value_histogram(FpPoly(3)).counts, (std::vector<std::uint32_t>{3, 0, 0}));
}

TEST(ValueHistogram, PrimeCeiling) {
    try {
        value_histogram(FpPoly(101, {0, 1}), 1, 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PrimeTooLarge);
    }
}

TEST(ValueHistogram, ThreadedMatchesSerial) {
    const FpPoly f(1'000'003, {7, 0, 3, 1, 0, 5});
    const auto serial = value_histogram(f, 1);
    EXPECT_EQ(value_histogram(f, 4).counts, serial.counts);
    u64 total = 0;
    for (auto c : serial.counts) total += c;
    EXPECT_EQ(total, 1'000'003u);
}

TEST(FpPointCount, SpecExamples) {
    EXPECT_EQ(fp_point_count(curve("x1^2+x2^2", 3)), 1u);
    EXPECT_EQ(fp_point_count(curve("x1^2+x2^2", 5)), 9u);
    EXPECT_EQ(fp_point_count(curve("x1+x2", 7)), 7u);
    EXPECT_THROW(fp_point_count(curve("0", 7)), Error);
}

TEST(FpSmoothCount, SpecExamples) {
    CounterRng rng(0);
    for (auto [text, p, expected] : std::vector<std::tuple<const char*, u64, u64>>{
             {"x2^2-x1^3", 5, 4}, {"x1+x2", 3, 3}, {"x1^2+x2^2", 3, 0}}) {
        const auto f = curve(text, p);
        const auto locus = singular_locus(f, rng);
        EXPECT_EQ(fp_smooth_count(f, locus), expected) << text;
        EXPECT_EQ(fp_smooth_count(f, locus) + singular_point_count(f, locus), fp_point_count(f));
    }
}

TEST(FpCurvePoints, EnumeratesAndRespectsBudget) {
    const auto f = curve("x1^2+x2^2", 5);
    const auto pts = fp_curve_points(f);
    EXPECT_EQ(pts.size(), 9u);
    for (const auto& z : pts) EXPECT_EQ((z.x1 * z.x1 + z.x2 * z.x2) % 5, 0u);
    try {
        fp_curve_points(f, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
    }
}

TEST(FpcountProperty, MatchesNaiveScan) {
    for (u64 p : {2, 3, 5, 7, 11, 23, 53, 101})
        for (const auto& f : corpus::make_corpus(p, 1, 60, 5)) {
            if (f.reduction_is_zero()) continue;
            EXPECT_EQ(fp_point_count(f), oracle::naive_pair_count(f, 101 * 101));
        }
}
