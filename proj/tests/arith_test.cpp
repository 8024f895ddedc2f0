#include "ppgaps/arith.hpp"

#include <gtest/gtest.h>

#include <set>

#include "ppgaps/real.hpp"

using namespace ppg;

TEST(Primality, SmallAndTableValues) {
    EXPECT_TRUE(is_prime(BigInt(2)));
    EXPECT_FALSE(is_prime(BigInt(1)));
    EXPECT_TRUE(is_prime(BigInt(2063)));
    EXPECT_TRUE(is_prime(BigInt(12373)));
    EXPECT_TRUE(is_prime(BigInt(30931)));
    EXPECT_FALSE(is_prime(BigInt(0)));
    EXPECT_THROW(is_prime(BigInt(-5)), domain_error);
}

TEST(Primality, U64Deterministic) {
    // strong pseudoprimes to small bases
    EXPECT_FALSE(is_prime_u64(3215031751ULL));
    EXPECT_FALSE(is_prime_u64(3825123056546413051ULL));
    EXPECT_TRUE(is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
    int count = 0;
    for (u64 n = 2; n < 1000; ++n)
        if (is_prime_u64(n)) ++count;
    EXPECT_EQ(count, 168);
}

TEST(Primality, AboveWordSize) {
    BigInt p("170141183460469231731687303715884105727");  // 2^127 - 1
    EXPECT_TRUE(is_prime(p));
    EXPECT_FALSE(is_prime(p - 2));
}

TEST(Jacobi, KnownValues) {
    EXPECT_EQ(jacobi(BigInt(2), BigInt(7)), 1);   // 3^2 = 2 mod 7
    EXPECT_EQ(jacobi(BigInt(0), BigInt(5)), 0);
    EXPECT_THROW(jacobi(BigInt(3), BigInt(8)), domain_error);
    EXPECT_THROW(jacobi(BigInt(3), BigInt(-5)), domain_error);
}

TEST(Jacobi, MatchesBruteForceSquareSearch) {
    // (-7 / 11) against exhaustive squares mod 11
    std::set<u64> squares;
    for (u64 r = 0; r < 11; ++r) squares.insert(r * r % 11);
    int expected = squares.count((11 - 7) % 11) ? 1 : -1;
    EXPECT_EQ(jacobi(BigInt(-7), BigInt(11)), expected);
}

TEST(Jacobi, Multiplicativity) {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        u64 l = 0;
        while (!is_prime_u64(l)) l = rng.below(100000) | 1;
        u64 a = rng.below(l - 1) + 1, b = rng.below(l - 1) + 1;
        EXPECT_EQ(jacobi_u64(a, l) * jacobi_u64(b, l), jacobi_u64(mulmod(a, b, l), l));
    }
}

TEST(PrimitiveRoot, KnownValues) {
    EXPECT_EQ(primitive_root_u64(7), 3u);
    EXPECT_EQ(primitive_root_u64(2), 1u);
    EXPECT_EQ(primitive_root_u64(23), 5u);
    EXPECT_THROW(primitive_root_u64(15), domain_error);
}

TEST(PrimitiveRoot, GeneratesFullGroup) {
    for (u64 l : {7ULL, 23ULL, 101ULL, 65537ULL, 1000003ULL}) {
        u64 g = primitive_root_u64(l);
        for (u64 p : distinct_prime_factors(l - 1)) {
            EXPECT_NE(powmod(g, (l - 1) / p, l), 1u) << "l=" << l;
        }
    }
}

TEST(SqrtMod, KnownValues) {
    EXPECT_EQ(sqrt_mod_u64(4, 7), std::optional<u64>(2));
    EXPECT_EQ(sqrt_mod_u64(3, 7), std::nullopt);  // squares mod 7: {0,1,2,4}
    EXPECT_EQ(sqrt_mod_u64(0, 13), std::optional<u64>(0));
}

TEST(SqrtMod, RandomRoundTripCanonical) {
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        u64 l = 0;
        while (!is_prime_u64(l) || l < 3) l = rng.below(1u << 20) | 1;
        u64 a = rng.below(l);
        auto r = sqrt_mod_u64(a, l);
        if (jacobi_u64(a % l, l) == 1) {
            ASSERT_TRUE(r.has_value());
            EXPECT_EQ(mulmod(*r, *r, l), a % l);
            EXPECT_LE(*r, (l - 1) / 2);
        } else if (a % l != 0) {
            EXPECT_FALSE(r.has_value());
        }
    }
}

TEST(Factor, Basics) {
    auto f = factor_u64(2ULL * 2 * 3 * 173 * 9973 * 9973);
    std::vector<u64> want{2, 2, 3, 173, 9973, 9973};
    EXPECT_EQ(f, want);
    auto big = factor_u64(1000003ULL * 1000033ULL);
    std::vector<u64> want2{1000003, 1000033};
    EXPECT_EQ(big, want2);
}

TEST(Roots, ExactNthRoot) {
    EXPECT_EQ(exact_nth_root_i64(32, 5), std::optional<i64>(2));
    EXPECT_EQ(exact_nth_root_i64(-243, 5), std::optional<i64>(-3));
    EXPECT_EQ(exact_nth_root_i64(-8, 2), std::nullopt);
    EXPECT_EQ(exact_nth_root_i64(100, 3), std::nullopt);
    EXPECT_EQ(iroot_u64(63, 3), 3u);
    EXPECT_EQ(iroot_u64(64, 3), 4u);
}

TEST(Mont, RoundTripAndPow) {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        u64 m = (rng.below(1ULL << 40) * 2 + 3);
        Mont F(m);
        u64 a = rng.below(m), b = rng.below(m);
        EXPECT_EQ(F.from(F.to(a)), a);
        EXPECT_EQ(F.from(F.mul(F.to(a), F.to(b))), mulmod(a, b, m));
        EXPECT_EQ(F.from(F.pow(F.to(a), 12345)), powmod(a, 12345, m));
    }
}

TEST(Real, BasicsAndRounding) {
    Real pi = Real::pi();
    EXPECT_NEAR(pi.to_double(), 3.14159265358979, 1e-12);
    EXPECT_NEAR(racos(Real(3) / Real(4)).to_double(), 0.7227342478134157, 1e-14);
    EXPECT_NEAR(roundup_3sf(Real("4.10684e8")).to_double(), 4.11e8, 1.0);
    EXPECT_NEAR(roundup_3sf(Real("1.4299e8")).to_double(), 1.43e8, 1.0);
    EXPECT_NEAR(roundup_3sf(Real("9.991e8")).to_double(), 1.00e9, 1.0);
    EXPECT_NEAR(roundup_3sf(Real("2.77e13")).to_double(), 2.77e13, 1e4);
}

TEST(Crt, MergeCompatibility) {
    auto r = crt_merge(BigInt(3), BigInt(10), BigInt(5), BigInt(12));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->second, 60);
    EXPECT_EQ(r->first % 10, 3);
    EXPECT_EQ(r->first % 12, 5);
    EXPECT_FALSE(crt_merge(BigInt(3), BigInt(10), BigInt(4), BigInt(12)).has_value());
}
