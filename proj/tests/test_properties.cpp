#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ppcount/oracle.hpp"
#include "ppcount/ppcount.hpp"

using namespace ppcount;

namespace {

constexpr u64 kSeed = 77;

SeparatedCurve at_k(const SeparatedCurve& f, unsigned k) {
    return SeparatedCurve::normalize(f.g().coeffs(), f.h().coeffs(), f.ctx().with_k(k));
}

bool squarefree_case(const SeparatedCurve& f) {
    if (f.reduction_is_zero() || f.reduction_is_constant() || line_branch_axis(f)) return false;
    return !(fp_derivative(f.g_mod_p()).is_zero() && fp_derivative(f.h_mod_p()).is_zero());
}

}  // namespace

TEST(Property, OracleEquivalenceAndFold) {
    for (u64 p : {2, 3, 5, 7})
        for (unsigned k = 1; k <= 4; ++k)
            for (const auto& f : corpus::make_corpus(p, k, 60, kSeed)) {
                const auto r = count_points(f);
                EXPECT_EQ(r.N, from_u64(oracle::brute_count(f))) << "p=" << p << " k=" << k;
                EXPECT_EQ(fold_tree(r.tree), r.N);
                EXPECT_GE(r.N, 0);
                EXPECT_LE(r.N, big_pow(p, 2 * k));
            }
}

TEST(Property, NaivePairScanAgreesWithHistogramOracle) {
    for (u64 p : {2, 3, 5, 7})
        for (const auto& f : corpus::make_corpus(p, 2, 40, kSeed))
            EXPECT_EQ(oracle::naive_pair_count(f), oracle::brute_count(f));
}

TEST(Property, MonotoneInK) {
    for (u64 p : {2, 3, 5})
        for (const auto& f : corpus::make_corpus(p, 6, 40, kSeed)) {
            BigInt prev = count_points(at_k(f, 1)).N;
            for (unsigned k = 2; k <= 6; ++k) {
                const BigInt cur = count_points(at_k(f, k)).N;
                EXPECT_LE(cur, prev * from_u64(p * p));
                prev = cur;
            }
        }
}

TEST(Property, ThreadedCountsAgree) {
    CountConfig eight;
    eight.threads = 8;
    for (u64 p : {3, 7})
        for (const auto& f : corpus::make_corpus(p, 6, 40, kSeed)) {
            const auto a = count_points(f), b = count_points(f, eight);
            EXPECT_EQ(a.N, b.N);
            EXPECT_EQ(a.stats.nodes, b.stats.nodes);
            EXPECT_EQ(a.stats.max_depth, b.stats.max_depth);
        }
}

TEST(Property, RootMethodDoesNotChangeTheCount) {
    CountConfig brute, cz;
    brute.method = RootMethod::Brute;
    cz.method = RootMethod::CantorZassenhaus;
    for (u64 p : {5, 7, 101})
        for (const auto& f : corpus::make_corpus(p, 4, 40, kSeed)) EXPECT_EQ(count_points(f, brute).N, count_points(f, cz).N);
}

TEST(Property, IsolatedLocusBoundsAndBezout) {
    for (u64 p : {3, 5, 7, 11, 13})
        for (const auto& f : corpus::make_corpus(p, 1, 100, kSeed)) {
            if (!squarefree_case(f)) continue;
            CounterRng rng(0);
            const auto locus = singular_locus(f, rng);
            ASSERT_TRUE(std::holds_alternative<IsolatedPoints>(locus));
            const auto& pts = std::get<IsolatedPoints>(locus).points;
            const u64 d = static_cast<u64>(f.reduced_degree());
            EXPECT_LE(pts.size(), choose2(d));
            const FpPoly dg = fp_derivative(f.g_mod_p());
            if (dg.is_zero()) continue;
            // m_zeta(f) * m_zeta(df/dx1), where the partial is a polynomial in x1 only
            u64 bezout = 0;
            for (const auto& z : pts) {
                u64 m_dg = 0;
                const FpPoly shifted = dg.taylor_shift(z.x1);
                while (static_cast<int>(m_dg) <= shifted.degree() && shifted[m_dg] == 0) ++m_dg;
                bezout += multiplicity_at(f, z) * m_dg;
            }
            EXPECT_LE(bezout, d * (d - 1));
        }
}

TEST(Property, PerturbationDegreeSum) {
    for (u64 p : {3, 5, 7})
        for (const auto& f : corpus::make_corpus(p, 4, 150, kSeed)) {
            if (!squarefree_case(f)) continue;
            CounterRng rng(0);
            const u64 d = static_cast<u64>(f.reduced_degree());
            u64 sum = 0;
            const SingularLocus locus = singular_locus(f, rng);
            for (const auto& z : std::get<IsolatedPoints>(locus).points) {
                const u64 s = point_valuation(f, z, f.k());
                if (s < 2 || s >= f.k()) continue;
                const auto pert = perturb_point(f, z, f.k());
                sum += static_cast<u64>(std::max(pert.child.reduced_degree(), 0));
                EXPECT_LE(pert.child.reduced_degree(), static_cast<int>(s));
                EXPECT_EQ(pert.child.h()[0], 0);
            }
            EXPECT_LE(sum, d * (d - 1));
        }
}

TEST(Property, SmoothClosedForm) {
    std::size_t seen = 0;
    for (u64 p : {3, 5, 7, 11})
        for (const auto& f : corpus::make_corpus(p, 1, 80, kSeed)) {
            if (!squarefree_case(f)) continue;
            CounterRng rng(0);
            if (!std::get<IsolatedPoints>(singular_locus(f, rng)).points.empty()) continue;
            ++seen;
            const u64 n1 = fp_point_count(f);
            for (unsigned k = 1; k <= 6; ++k) EXPECT_EQ(count_points(at_k(f, k)).N, from_u64(n1) * big_pow(p, k - 1));
        }
    EXPECT_GT(seen, 20u);
}

TEST(Property, MultiplicityDefinitionsAgree) {
    for (u64 p : {2, 3, 5, 7})
        for (const auto& f : corpus::make_corpus(p, 2, 60, kSeed)) {
            if (f.reduction_is_zero() || f.reduction_is_constant()) continue;
            for (const auto& z : fp_curve_points(f)) EXPECT_EQ(multiplicity_at(f, z), oracle::brute_multiplicity(f, z));
        }
}

TEST(Property, NmulRange) {
    for (u64 p : {2, 3, 5, 7})
        for (const auto& f : corpus::make_corpus(p, 3, 80, kSeed)) {
            if (f.reduction_is_zero()) continue;
            for (const auto& z : oracle::brute_singular_points(f)) {
                if (oracle::brute_roots_above(f, z, 2).empty()) continue;
                const unsigned m = oracle::brute_multiplicity(f, z);
                const u64 s = point_valuation(f, z, m + 1);
                EXPECT_GE(s, 2u);
                EXPECT_LE(s, m);
            }
        }
}
