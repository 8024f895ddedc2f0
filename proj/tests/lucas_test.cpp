#include "ppgaps/lucas.hpp"

#include <gtest/gtest.h>

using namespace ppg;

namespace {
const LucasPair kFib = LucasPair::from_PQ(1, -1);
}

TEST(LucasTerm, FibonacciAndBase) {
    EXPECT_EQ(lucas_term(kFib, 10), 55);
    EXPECT_EQ(lucas_term(kFib, 0), 0);
    EXPECT_EQ(lucas_term(kFib, 1), 1);
    LucasPair p = LucasPair::from_ab(12, -76);
    EXPECT_EQ(p.Q, 55);
    EXPECT_EQ(lucas_term(p, 5), 1);
}

TEST(LucasPairValidation, RootOfUnityGuard) {
    EXPECT_THROW(LucasPair::from_PQ(1, 1), domain_error);   // P^2-Q = 0
    EXPECT_THROW(LucasPair::from_PQ(2, 2), domain_error);   // P^2-2Q = 0
    EXPECT_THROW(LucasPair::from_PQ(2, 1), domain_error);   // D = 0
    EXPECT_THROW(LucasPair::from_PQ(2, 4), domain_error);   // not coprime
    EXPECT_THROW(LucasPair::from_ab(1, 2), domain_error);   // parity
    EXPECT_NO_THROW(LucasPair::from_PQ(3, 1));
}

TEST(RankOfApparition, CarmichaelCases) {
    EXPECT_EQ(rank_of_apparition(kFib, 5), std::optional<u64>(5));   // 5 | D = 5
    EXPECT_EQ(rank_of_apparition(kFib, 2), std::optional<u64>(3));   // L_3 = 2
    LucasPair p = LucasPair::from_PQ(3, 5);                          // 5 | Q
    EXPECT_EQ(rank_of_apparition(p, 5), std::nullopt);
}

TEST(RankOfApparition, DivisibilityLaw) {
    // l | L_m iff m_l | m, checked for l < 100 and m <= 200 on several pairs
    std::vector<LucasPair> pairs{kFib, LucasPair::from_PQ(3, 2), LucasPair::from_PQ(5, -3),
                                 LucasPair::from_PQ(7, 12), LucasPair::from_ab(1, -7)};
    for (const auto& p : pairs) {
        for (u64 l : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 37ULL, 97ULL}) {
            auto ml = rank_of_apparition(p, l);
            if (mod_big(p.Q, l) == 0) {
                EXPECT_FALSE(ml.has_value());
                continue;
            }
            ASSERT_TRUE(ml.has_value());
            BigInt a = 0, b = 1;
            for (u64 m = 1; m <= 200; ++m) {
                bool divides = mod_big(b, l) == 0;  // b = L_m
                EXPECT_EQ(divides, m % *ml == 0) << "P=" << p.P << " Q=" << p.Q << " l=" << l << " m=" << m;
                BigInt c = (p.P * b - p.Q * a) % (long)l;
                a = b;
                b = c;
            }
        }
    }
}

TEST(RankOfApparition, DividesLPlusMinusOne) {
    // Carmichael (ii)(b),(c): m_l | l-1 when (D/l)=1, m_l | l+1 when (D/l)=-1
    std::vector<LucasPair> pairs{kFib, LucasPair::from_PQ(3, 2), LucasPair::from_PQ(5, -3)};
    for (const auto& p : pairs) {
        for (u64 l = 3; l < 100; l += 2) {
            if (!is_prime_u64(l)) continue;
            if (mod_big(2 * p.Q * p.D, l) == 0) continue;
            auto ml = rank_of_apparition(p, l);
            ASSERT_TRUE(ml.has_value());
            int chi = jacobi_i64((i64)p.D.get_si(), l);
            if (chi == 1) EXPECT_EQ((l - 1) % *ml, 0u);
            if (chi == -1) EXPECT_EQ((l + 1) % *ml, 0u);
        }
    }
}

TEST(PrimitiveDivisor, BhvExceptions) {
    EXPECT_FALSE(has_primitive_divisor(LucasPair::from_ab(1, -7), 5).has);
    EXPECT_FALSE(has_primitive_divisor(LucasPair::from_ab(1, -19), 7).has);
    EXPECT_FALSE(has_primitive_divisor(LucasPair::from_ab(12, -76), 5).has);
    auto fib30 = has_primitive_divisor(kFib, 30);
    EXPECT_TRUE(fib30.has);
    ASSERT_TRUE(fib30.witness.has_value());
    EXPECT_EQ(lucas_term(kFib, 30) % *fib30.witness, 0);
}

TEST(PrimitiveDivisor, WitnessIsPrimitive) {
    auto r = has_primitive_divisor(LucasPair::from_PQ(3, 2), 12);
    // L_m = 2^m - 1 here; L_12 = 4095 = 3^2 5 7 13; 13 has rank 12
    ASSERT_TRUE(r.has);
    EXPECT_EQ(*r.witness, 13);
}

TEST(PrimitiveDivisor, DegenerateTerm) {
    LucasPair p = LucasPair::from_ab(12, -76);  // L_5 = 1: no prime divisors
    auto r = has_primitive_divisor(p, 5);
    EXPECT_FALSE(r.has);
    EXPECT_FALSE(r.witness.has_value());
}

TEST(BhvLookup, ExceptionLists) {
    auto l5 = bhv_exception_lookup(5);
    ASSERT_EQ(l5.size(), 7u);
    EXPECT_EQ(l5[0], (std::pair<long, long>{1, 5}));
    EXPECT_EQ(l5[5], (std::pair<long, long>{12, -76}));
    auto l7 = bhv_exception_lookup(7);
    ASSERT_EQ(l7.size(), 2u);
    EXPECT_EQ(l7[1], (std::pair<long, long>{1, -19}));
    EXPECT_TRUE(bhv_exception_lookup(11).empty());
    EXPECT_TRUE(bhv_exception_lookup(13).empty());
}

TEST(DefectInstance, ReconstructsSolution) {
    // (a,b) = (12,-76), n = 5: alpha = 6 - sqrt(-19), q = 19, y = Norm = 55,
    // x = |V_5|/2 = 22434, and 22434^2 + 19 = 55^5.
    LucasPair p = LucasPair::from_ab(12, -76);
    EXPECT_EQ(p.D, -76);  // -4*19
    BigInt y = p.Q;
    BigInt x = lucas_companion(p, 5) / 2;
    if (x < 0) x = -x;
    EXPECT_EQ(y, 55);
    EXPECT_EQ(x, 22434);
    EXPECT_EQ(x * x + 19, big_pow(y, 5));
}
