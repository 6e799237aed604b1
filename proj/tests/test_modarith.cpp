#include <gtest/gtest.h>

#include <random>

#include "ppcount/modarith.hpp"

using namespace ppcount;

TEST(Valp, SpecExamples) {
    EXPECT_EQ(valp(BigInt(12), 2), Valuation(2));
    EXPECT_TRUE(valp(BigInt(0), 5).is_infinite());
    EXPECT_EQ(valp(BigInt(45), 3), Valuation(2));
}

TEST(Valp, NegativeAndUnit) {
    EXPECT_EQ(valp(BigInt(-18), 3), Valuation(2));
    EXPECT_EQ(valp(BigInt(7), 3), Valuation(0));
}

TEST(Valp, InfiniteComparesAboveEverything) {
    EXPECT_GT(Valuation::infinite(), Valuation(1'000'000));
    EXPECT_EQ(Valuation::infinite(), Valuation::infinite());
    EXPECT_EQ(Valuation::infinite().to_string(), "inf");
    EXPECT_EQ(Valuation(3).to_string(), "3");
}

TEST(Valp, PowersOfP) {
    for (u64 p : {2, 3, 5, 7, 1'000'003})
        for (unsigned k = 1; k <= 64; ++k) EXPECT_EQ(valp(big_pow(p, k), p), Valuation(k));
}

TEST(Valp, MultiplicativeOnRandomWords) {
    std::mt19937_64 rng(7);
    for (u64 p : {2, 3, 5, 97}) {
        for (int i = 0; i < 500; ++i) {
            const u64 a = rng() | 1u << 20, b = rng() >> 3 | 1;
            const Valuation va = valp(from_u64(a), p), vb = valp(from_u64(b), p);
            EXPECT_EQ(valp(from_u64(a) * from_u64(b), p), Valuation(va.value() + vb.value()));
        }
    }
}

TEST(Valp, CappedTreatsZeroAsCap) {
    EXPECT_EQ(valp_capped(BigInt(0), 3, 4), 4u);
    EXPECT_EQ(valp_capped(BigInt(81 * 81), 3, 4), 4u);
    EXPECT_EQ(valp_capped(BigInt(9), 3, 4), 2u);
}

TEST(ModCanonical, NegativeInputs) {
    EXPECT_EQ(mod_canonical(BigInt(-1), BigInt(9)), 8);
    EXPECT_EQ(mod_small(BigInt(-10), 7), 4u);
}

TEST(WordArith, Basics) {
    const u64 m = (u64{1} << 61) - 1;
    EXPECT_EQ(mul_mod(m - 1, m - 1, m), 1u);
    EXPECT_EQ(add_mod(m - 1, 5, m), 4u);
    EXPECT_EQ(sub_mod(2, 5, m), m - 3);
    EXPECT_EQ(pow_mod(3, 6, 7), 1u);
    EXPECT_EQ(mul_mod(inv_mod(5, 13), 5, 13), 1u);
}

TEST(IsPrime, SmallAndLarge) {
    EXPECT_FALSE(is_prime(0));
    EXPECT_FALSE(is_prime(1));
    EXPECT_TRUE(is_prime(2));
    EXPECT_FALSE(is_prime(91));
    EXPECT_TRUE(is_prime(1'000'003));
    EXPECT_TRUE(is_prime(4'294'967'311ULL));  // first prime above 2^32
    EXPECT_FALSE(is_prime(4'294'967'297ULL));  // 641 * 6700417
    EXPECT_TRUE(is_prime(18'446'744'073'709'551'557ULL));
    EXPECT_FALSE(is_prime(3'215'031'751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(PrimePowerCtx, ModulusAndErrors) {
    const PrimePowerCtx c(5, 3);
    EXPECT_EQ(c.modulus(), 125);
    EXPECT_EQ(c.with_k(1).modulus(), 5);
    EXPECT_EQ(c.reduce(BigInt(-1)), 124);
    try {
        PrimePowerCtx(9, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidPrime);
    }
    try {
        PrimePowerCtx(5, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}

TEST(CounterRng, DeterministicAndBounded) {
    CounterRng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
    CounterRng c(1);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(c.uniform(17), 17u);
    EXPECT_NE(CounterRng(5).split(1).next(), CounterRng(5).split(2).next());
    EXPECT_NE(child_path_hash(0, 0), child_path_hash(0, 1));
    EXPECT_NE(child_path_hash(child_path_hash(0, 0), 1), child_path_hash(child_path_hash(0, 1), 0));
}
