#include "ppgaps/tate.hpp"

#include <gtest/gtest.h>

using namespace ppg;

namespace {
WeierstrassModel M(long a1, long a2, long a3, long a4, long a6) {
    return WeierstrassModel{a1, a2, a3, a4, a6, ""};
}
}  // namespace

TEST(Tate, KnownConductors) {
    struct Case {
        WeierstrassModel e;
        long N;
    };
    std::vector<Case> cases{
        {M(0, -1, 1, -10, -20), 11},    // 11a1
        {M(1, 1, 1, -10, -10), 15},     // 15a1
        {M(1, -1, 1, -1, -14), 17},     // 17a1
        {M(1, 0, 1, 4, -6), 14},        // 14a1
        {M(1, -1, 0, -10, -12), 46},    // 46a1
        {M(1, -1, 1, -1, 1), 62},       // 62a1
        {M(1, -1, 1, 0, -1), 94},       // 94a1
        {M(1, -1, 0, -1, -3), 142},     // 142c1
        {M(1, 1, 1, 1, 1), 158},        // 158e1
        {M(1, -1, 1, -3, 3), 26},       // 26b1
        {M(0, 0, 0, -1, 0), 32},        // y^2 = x^3 - x
        {M(0, 0, 0, 0, 1), 36},         // y^2 = x^3 + 1
        {M(0, 0, 1, -1, 0), 37},        // 37a1
        {M(0, 1, 1, -2, 0), 389},       // 389a1
        {M(0, 0, 1, 0, 0), 27},         // 27a3: y^2 + y = x^3
        {M(0, 0, 0, 0, -16), 432},      // its -1 twist, type II* at 2
        {M(0, 0, 0, 4, 0), 32},         // y^2 = x^3 + 4x
        {M(0, 0, 0, -4, 0), 64},        // y^2 = x^3 - 4x (64a4)
    };
    for (auto& c : cases) {
        EXPECT_EQ(conductor(c.e), BigInt(c.N)) << "[" << c.e.a1.get_str() << "," << c.e.a2.get_str() << ","
                                               << c.e.a3.get_str() << "," << c.e.a4.get_str() << ","
                                               << c.e.a6.get_str() << "]";
    }
}

TEST(Tate, NonMinimalModelsRescaled) {
    // u = 2 blow-up of 11a1 must give the same conductor
    WeierstrassModel e = M(0, -1, 1, -10, -20);
    WeierstrassModel blown = transform_model(e, BigInt(1), 0, 0, 0);
    // inverse direction: scale up by hand (x -> x/4, y -> y/8 image model)
    WeierstrassModel big{e.a1 * 2, e.a2 * 4, e.a3 * 8, e.a4 * 16, e.a6 * 64, ""};
    EXPECT_EQ(conductor(big), BigInt(11));
    EXPECT_EQ(conductor(blown), BigInt(11));
}

TEST(Tate, PaperFreyCurveConductors) {
    // kappa = 1 Frey curves of the exceptional identities; conductor 2q with
    // multiplicative reduction everywhere (the paper's Table ells rows)
    EXPECT_EQ(conductor(M(0, 52, 0, 512, 0)), BigInt(82));       // 13^2 - 41 = 2^7
    EXPECT_EQ(conductor(M(0, -364, 0, 32768, 0)), BigInt(178));  // 91^2 - 89 = 2^13, x = -91
    EXPECT_EQ(conductor(M(0, -60, 0, 512, 0)), BigInt(194));     // 15^2 - 97 = 2^7, x = -15
    // and their minimal discriminant at 2 drops to the predicted valuation
    LocalData d = local_data(M(0, 52, 0, 512, 0), 2);
    EXPECT_EQ(d.f, 1);
    EXPECT_EQ(d.ord_disc_min, 2);  // Delta_min = -2^2 * 41
}

TEST(Tate, LocalDataShapes) {
    // 14a1: multiplicative at both 2 and 7 (semistable), v2(D)=6, v7(D)=3
    WeierstrassModel e = M(1, 0, 1, 4, -6);
    LocalData d2 = local_data(e, 2);
    EXPECT_EQ(d2.f, 1);
    EXPECT_EQ(d2.ord_disc_min, 6);
    EXPECT_EQ(d2.kodaira, "I6");
    LocalData d7 = local_data(e, 7);
    EXPECT_EQ(d7.f, 1);
    EXPECT_EQ(d7.ord_disc_min, 3);
    LocalData d5 = local_data(e, 5);
    EXPECT_EQ(d5.f, 0);
}
