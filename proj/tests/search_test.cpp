#include "ppgaps/search.hpp"

#include <gtest/gtest.h>

#include "ppgaps/golden.hpp"

using namespace ppg;

TEST(BruteForce, SpecExamples) {
    auto has = [](const std::vector<Solution>& v, u64 alpha, long x, long y, u64 n) {
        for (const auto& s : v)
            if (s.alpha == alpha && s.x == x && s.y == y && s.n == n) return true;
        return false;
    };
    auto s7 = brute_force_solutions(7, 0, 1000, 20);
    EXPECT_TRUE(has(s7, 1, 181, 32, 3));
    EXPECT_TRUE(has(s7, 1, 11, 2, 7));  // 11^2 + 7 = 2^7
    EXPECT_TRUE(has(s7, 3, 13, 2, 9));
    EXPECT_TRUE(has(s7, 3, 13, 8, 3));
    auto s19 = brute_force_solutions(19, 1, 1000, 20);
    EXPECT_TRUE(has(s19, 5, 654, -127, 3));
    auto s3 = brute_force_solutions(3, 0, 100, 20);
    EXPECT_TRUE(has(s3, 5, 10, 7, 3));
    for (const auto& s : s7) EXPECT_TRUE(s.verify());
}

TEST(BruteForce, RespectsCoprimality) {
    // 3^2 + 27 = 36 = 6^2 is not admissible (n >= 3 anyway); gcd filtering:
    // x=3, q=3 violates q coprime to x and must never appear
    auto s = brute_force_solutions(3, 0, 50, 10);
    for (const auto& sol : s) EXPECT_NE(sol.x % 3, 0);
}

TEST(Parametric, N3Branches) {
    auto r11 = parametric_n3(BigInt(11));
    ASSERT_EQ(r11.size(), 1u);
    EXPECT_EQ(r11[0].branch, "q=3a^2-1");
    EXPECT_EQ(r11[0].witness, 2);
    EXPECT_EQ(r11[0].x, 2);
    EXPECT_EQ(r11[0].y, 5);  // 2^2 + 11^2 = 5^3
    auto r7 = parametric_n3(BigInt(7));
    ASSERT_EQ(r7.size(), 1u);
    EXPECT_EQ(r7[0].branch, "q^2=3a^2+1");
    EXPECT_EQ(r7[0].x, 524);
    EXPECT_EQ(r7[0].y, 65);
    EXPECT_TRUE(parametric_n3(BigInt(5)).empty());
}

TEST(Parametric, PrimeLists) {
    EXPECT_EQ(primes_3a2_minus_1(1000), (std::vector<u64>{11, 47, 107, 191, 431, 587, 971}));
    EXPECT_EQ(primes_pell_3a2_plus_1(1000), (std::vector<u64>{7, 97}));
    EXPECT_EQ(primes_pell_2y2_minus_1(1000), (std::vector<u64>{7, 41, 239}));
    EXPECT_EQ(primes_n4_even_family(1000), (std::vector<u64>{3, 17, 577}));
}

TEST(Parametric, N4Witnesses) {
    auto r17 = parametric_n4(BigInt(17));
    ASSERT_FALSE(r17.empty());
    EXPECT_EQ(r17[0].witness, 2);  // m = 2
    EXPECT_EQ(r17[0].x, 145);
    EXPECT_EQ(r17[0].y, 12);  // 145^2 - 17^2 = 12^4
    auto r7 = parametric_n4(BigInt(7));
    ASSERT_EQ(r7.size(), 1u);
    EXPECT_EQ(r7[0].branch, "q^2=2y^2-1");
    EXPECT_EQ(r7[0].y, 5);  // 24^2 + 7^2 = 5^4
    EXPECT_EQ(r7[0].x, 24);
}

TEST(ThueMahler, SplitNnn31) {
    auto t = emit_split_nnn(31, 7);
    EXPECT_EQ(t.degree, 7u);
    EXPECT_EQ(t.coeffs[0], 1);
    EXPECT_EQ(t.coeffs[7], -32);
    for (int i = 1; i < 7; ++i) EXPECT_EQ(t.coeffs[i], 0);
    // the known solution y1 = y2 = -1, k = 1
    EXPECT_EQ(t.evaluate(BigInt(-1), BigInt(-1)), 31);
}

TEST(ThueMahler, DescentQ47MatchesPaper) {
    auto t = emit_descent_class_group(47, 5, 2);
    std::vector<BigInt> want{-9, 85, 4230, -7990, -99405, 37553};
    EXPECT_EQ(t.coeffs, want);
    // the paper's solutions (1,1) and (-1,-1) give +-2^16 (content 2 removed)
    EXPECT_EQ(t.evaluate(BigInt(1), BigInt(1)), -big_pow(BigInt(2), 16));
}

TEST(ThueMahler, GammaPowerQ7MatchesPaper) {
    QuadOrder O = QuadOrder::make(BigInt(-7));
    auto S = gamma_set(O, 1, 0, 7);
    const QuadRat* gamma = nullptr;
    for (const auto& g : S) {
        if (g.num.halves() == std::pair<BigInt, BigInt>{BigInt(22), BigInt(-2)}) gamma = &g;
    }
    ASSERT_NE(gamma, nullptr);  // 11 - sqrt(-7)
    auto t = emit_gamma_power(*gamma, 7, 7);
    std::vector<BigInt> want{-1, 35, 147, -105, -595, -231, 161, 45};
    EXPECT_EQ(t.coeffs, want);
    EXPECT_EQ(t.rhs_pattern, "7^k");
    // solution (X,Y,k) = (-1,0,0): x = -11
    EXPECT_EQ(t.evaluate(BigInt(-1), BigInt(0)), 1);
}

TEST(ThueMahler, Homogeneity) {
    Rng rng(3);
    for (auto t : {emit_split_nnn(31, 7), emit_descent_class_group(79, 5, 1), emit_quintic(11, 1)}) {
        BigInt X = (long)rng.below(50) - 25, Y = (long)rng.below(50) - 25, c = (long)rng.below(9) + 2;
        BigInt lhs = t.evaluate(c * X, c * Y);
        BigInt rhs = big_pow(c, t.degree) * t.evaluate(X, Y);
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Frey, NnnModelAndDiscriminant) {
    // (31, y1 = y2 = -1, n = 7, k = 1): 4Frey2 model, v2(Delta_min) = 2n-12
    WeierstrassModel f = frey_nnn(31, BigInt(-1), BigInt(-1), 7, 1);
    LocalData d2 = local_data(f, 2);
    EXPECT_EQ(d2.ord_disc_min, 2 * 7 - 12);
    EXPECT_EQ(d2.f, 1);  // multiplicative at 2
    LocalData d31 = local_data(f, 31);
    EXPECT_EQ(d31.f, 1);
    // full 2-torsion: three rational roots
    auto red = reduce_model(f, 101);
    ASSERT_TRUE(std::holds_alternative<CurveFp>(red));
    EXPECT_EQ(two_torsion_order(std::get<CurveFp>(red)), 4);
}

TEST(Frey, PrimaryRecipe) {
    // kappa = 1: Y^2 = X^3 + 4x X^2 + 4(x^2 + (-1)^delta q^{2k+1}) X
    WeierstrassModel g = frey_primary(7, 0, 1, BigInt(-11), 0);
    EXPECT_EQ(g.a2, -44);
    EXPECT_EQ(g.a4, 4 * (121 + 7));
    EXPECT_THROW(frey_primary(7, 0, 1, BigInt(3), 0), domain_error);  // x = 3 mod 4
    // the exceptional identity's curve has conductor 2q = 14
    EXPECT_EQ(conductor(g), BigInt(14));
    // kappa = 5 cases land on the right recipe
    WeierstrassModel h = frey_primary(73, 1, 5, BigInt(3), 0);  // q = 1 = (-1)^{delta+1} mod 4
    EXPECT_EQ(h.a2, 6);
    EXPECT_EQ(h.a4, 9 - 73);
}

TEST(Frey, MersenneFermatCurves) {
    WeierstrassModel e31 = mersenne_fermat_curve(31);
    EXPECT_EQ(e31.a2, 33);
    EXPECT_EQ(e31.a4, 32);
    EXPECT_EQ(conductor(e31), BigInt(62));
    WeierstrassModel e257 = mersenne_fermat_curve(257);
    EXPECT_EQ(e257.a2, -255);
    EXPECT_EQ(conductor(e257), BigInt(514));
    EXPECT_THROW(mersenne_fermat_curve(11), domain_error);
}

TEST(Golden, SmallRegionExactMatch) {
    GoldenTable t3 = load_golden(default_tables_dir() + "/p3.json", 3);
    EXPECT_EQ(t3.rows.size(), 89u);
    std::vector<Solution> oracle;
    for (u64 q = 2; q < 100; ++q) {
        if (!is_prime_u64(q)) continue;
        for (int delta : {0, 1}) {
            auto s = brute_force_solutions(q, delta, 3000, 6);
            oracle.insert(oracle.end(), s.begin(), s.end());
        }
    }
    auto d = diff_golden(t3, oracle, 2, 99, 3000);
    EXPECT_TRUE(d.clean()) << d.missing.size() << " missing, " << d.extras.size() << " extras";
    EXPECT_TRUE(d.flagged.empty());
    EXPECT_GT(d.covered, 50u);
}
