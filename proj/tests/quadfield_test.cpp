#include "ppgaps/quadfield.hpp"

#include <gtest/gtest.h>

using namespace ppg;

TEST(ClassNumber, ImaginaryTable) {
    EXPECT_EQ(class_number_imaginary(7), 1);
    EXPECT_EQ(class_number_imaginary(23), 3);
    EXPECT_EQ(class_number_imaginary(31), 3);
    EXPECT_EQ(class_number_imaginary(47), 5);
    EXPECT_EQ(class_number_imaginary(71), 7);
    EXPECT_EQ(class_number_imaginary(79), 5);
    EXPECT_EQ(class_number_imaginary(1), 1);  // Q(i)
    EXPECT_THROW(class_number_imaginary(12), domain_error);
}

TEST(ClassNumber, ImaginarySpotChecks) {
    // h(-d) for small squarefree d, standard values
    EXPECT_EQ(class_number_imaginary(2), 1);
    EXPECT_EQ(class_number_imaginary(5), 2);
    EXPECT_EQ(class_number_imaginary(14), 4);
    EXPECT_EQ(class_number_imaginary(163), 1);
    EXPECT_EQ(class_number_imaginary(89), 12);
}

TEST(ClassNumber, RealOnDemand) {
    // all 1 for prime q < 100 except h = 3 at q = 79
    for (int q = 2; q < 100; ++q) {
        if (!is_prime_u64((u64)q)) continue;
        int h = class_number_real(q);
        EXPECT_EQ(h, q == 79 ? 3 : 1) << "q=" << q;
    }
    // non-prime spot checks against standard tables
    EXPECT_EQ(class_number_real(10), 2);
    EXPECT_EQ(class_number_real(15), 2);
    EXPECT_EQ(class_number_real(65), 2);
}

TEST(FundamentalUnit, TableValues) {
    QuadInt e2 = fundamental_unit(2);
    EXPECT_EQ(e2.x, 1);
    EXPECT_EQ(e2.y, 1);  // 1 + sqrt(2)
    QuadInt e31 = fundamental_unit(31);
    EXPECT_EQ(e31.x, 1520);
    EXPECT_EQ(e31.y, 273);
    QuadInt e5 = fundamental_unit(5);  // (1+sqrt 5)/2 = theta
    EXPECT_EQ(e5.x, 0);
    EXPECT_EQ(e5.y, 1);
    EXPECT_EQ(e5.norm(), -1);
}

TEST(FundamentalUnit, NormAndMinimality) {
    for (int q : {2, 3, 7, 11, 31, 41, 61, 73, 89, 97}) {
        QuadInt e = fundamental_unit(q);
        BigInt n = e.norm();
        EXPECT_TRUE(n == 1 || n == -1) << q;
        EXPECT_GT(e.embed().to_double(), 1.0);
        // no smaller power is 1: e != 1 and e^2 != 1
        QuadInt one{e.O, 1, 0};
        EXPECT_FALSE(e == one);
        EXPECT_FALSE(e * e == one);
    }
}

TEST(QuadInt, NormMultiplicativity) {
    Rng rng(77);
    for (int t = 0; t < 200; ++t) {
        long d = (long)rng.below(100) + 2;
        bool sf = true;
        for (long p = 2; p * p <= d; ++p)
            if (d % (p * p) == 0) sf = false;
        if (!sf) continue;
        long sign = rng.next() & 1 ? 1 : -1;
        QuadOrder O = QuadOrder::make(BigInt(sign * d));
        QuadInt a{O, BigInt((long)rng.below(2000)) - 1000, BigInt((long)rng.below(2000)) - 1000};
        QuadInt b{O, BigInt((long)rng.below(2000)) - 1000, BigInt((long)rng.below(2000)) - 1000};
        EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
        EXPECT_EQ((a * a.conj()).x, a.norm());
        EXPECT_EQ((a * a.conj()).y, 0);
    }
}

TEST(PrimeOverTwo, TableHq) {
    // alpha_q = (u + sqrt(-q))/2 from the paper's table, norm 2^{h_q}
    struct Row {
        int q, h;
        long u;
    };
    for (Row r : {Row{7, 1, 1}, Row{23, 3, 3}, Row{31, 3, 1}, Row{47, 5, 9}, Row{71, 7, 21}, Row{79, 5, 7}}) {
        QuadInt a = prime_over_two_generator(r.q);
        auto [u, v] = a.halves();
        EXPECT_EQ(u, r.u) << r.q;
        EXPECT_EQ(v, 1) << r.q;
        EXPECT_EQ(a.norm(), big_pow(BigInt(2), r.h)) << r.q;
    }
    EXPECT_THROW(prime_over_two_generator(5), domain_error);  // 2 inert
}

TEST(GammaSet, NormIsPowerOfTwo) {
    for (auto [qd, kappa, delta, n] : {std::tuple<long, int, int, u64>{-7, 1, 0, 7},
                                       {31, 5, 1, 7},
                                       {-23, 1, 0, 7},
                                       {41, 1, 1, 7},
                                       {-47, 1, 0, 11}}) {
        QuadOrder O = QuadOrder::make(BigInt(qd));
        auto S = gamma_set(O, kappa, delta, n);
        EXPECT_FALSE(S.empty());
        for (const auto& g : S) {
            auto [num, e2] = g.norm2();
            BigInt v = num < 0 ? BigInt(-num) : num;
            // |norm| = 2^j / 2^e2: v must be a power of two
            EXPECT_GT(v, 0);
            while (v % 2 == 0) v /= 2;
            EXPECT_EQ(v, 1) << "gamma = " << g.num.x.get_str() << "+" << g.num.y.get_str() << " theta / 2^"
                            << g.den2;
        }
    }
}

TEST(GammaSet, Kappa1Q7MatchesPaper) {
    // q=7, delta=0, n=7: S = {11 - sqrt(-7), 11 + sqrt(-7)} up to sign
    QuadOrder O = QuadOrder::make(BigInt(-7));
    auto S = gamma_set(O, 1, 0, 7);
    ASSERT_EQ(S.size(), 2u);
    bool minus = false, plus = false;
    for (const auto& g : S) {
        EXPECT_EQ(g.den2, 0u);
        auto [u, v] = g.num.halves();
        EXPECT_EQ(g.num.norm(), 128);  // 11^2 + 7 = 2^7
        if (u == 22 && v == -2) minus = true;
        if (u == 22 && v == 2) plus = true;
    }
    EXPECT_TRUE(minus && plus);
}

TEST(GammaSet, Kappa5RealQ31ContainsEpsCube) {
    QuadOrder O = QuadOrder::make(BigInt(31));
    auto S = gamma_set(O, 5, 1, 7);
    QuadInt eps = fundamental_unit(31);
    QuadInt e3 = eps.pow(3);
    bool found = false;
    for (const auto& g : S)
        if (g.den2 == 0 && (g.num == e3 || g.num == -e3)) found = true;
    EXPECT_TRUE(found);
    EXPECT_EQ(S.size(), 7u);  // eps^j, |j| <= 3
}

TEST(GammaSet, PrincipalityIndexFilter) {
    // kappa=5, h=3 (q=-23): P^{-ni} principal only when 3 | ni
    QuadOrder O = QuadOrder::make(BigInt(-23));
    auto S7 = gamma_set(O, 5, 0, 7);  // gcd(7,3)=1: only i=0 contributes
    ASSERT_EQ(S7.size(), 1u);
    EXPECT_EQ(S7[0].num.x, 1);
    EXPECT_EQ(S7[0].num.y, 0);
    EXPECT_EQ(S7[0].den2, 0u);
}

TEST(GammaSet, UnsupportedFieldRejected) {
    // Q(sqrt(-5)) has h = 2 but 2 is ramified with [P] principal^2... the
    // class of P generates only when ord = h; for -5 the genus theory gives
    // ord([P]) = 2 = h, but 2 ramifies: d = -5 = 3 mod 4 handled; use -15
    // (h = 2, 2 inert since -15 = 1 mod 8? -15 = 1 mod 8: splits).  Use a
    // field where 2 is inert instead: -11 = 5 mod 8, h = 1 works trivially;
    // -19: h = 1.  For -35 (h=2, -35 = 5 mod 8: inert) expect rejection.
    QuadOrder O = QuadOrder::make(BigInt(-35));
    EXPECT_THROW(gamma_set(O, 1, 0, 7), domain_error);
}

TEST(QuadRat, ResidueReduction) {
    // gamma = (11 - sqrt(-7)): mod L over l = 29 with s^2 = -7 (mod 29)
    QuadOrder O = QuadOrder::make(BigInt(-7));
    u64 l = 29;
    auto s = sqrt_mod_u64(29 - 7, l);
    ASSERT_TRUE(s.has_value());
    QuadInt g = QuadInt::from_halves(O, 22, -2);
    QuadRat r{g, 0};
    u64 v = r.residue(l, *s);
    // 11 - s mod 29
    EXPECT_EQ(v, submod(11, *s, l));
}
