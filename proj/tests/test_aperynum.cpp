#include <gtest/gtest.h>

#include <cmath>

#include "zetaforge/aperynum.hpp"
#include "zetaforge/errors.hpp"

using namespace zetaforge::aperynum;
using zetaforge::exact::make_rat;

TEST(Apery, InitialValues) {
    EXPECT_EQ(apery2(0), 1);
    EXPECT_EQ(apery2(1), 3);
    EXPECT_EQ(apery2(2), 19);
    EXPECT_EQ(apery3(1), 5);
    EXPECT_EQ(apery3(2), 73);
    EXPECT_EQ(apery2_b(1), Rat(5));
    EXPECT_EQ(apery3_b(1), Rat(6));
}

TEST(Apery, RecurrenceMatchesClosedForm) {
    for (unsigned n = 0; n <= 60; ++n) {
        EXPECT_EQ(apery2(n), apery2_closed(n)) << n;
        EXPECT_EQ(apery3(n), apery3_closed(n)) << n;
    }
}

TEST(Apery, RatioApproachesZeta2Monotonically) {
    const double z2 = M_PI * M_PI / 6;
    // Only the first ~25 terms are representable above double rounding.
    double prev = std::abs(zetaforge::exact::to_double(apery2_b(4) / Rat(apery2(4))) - z2);
    for (unsigned n = 5; n <= 30; ++n) {
        double err = std::abs(zetaforge::exact::to_double(apery2_b(n) / Rat(apery2(n))) - z2);
        if (prev < 1e-15) break;
        EXPECT_LT(err, prev) << n;
        prev = err;
    }
}

TEST(AperyLike, Examples) {
    EXPECT_EQ(aperylike_J(1, 1), ZetaCombo(Basis::ONE, make_rat(2, 3)));
    EXPECT_EQ(aperylike_J(2, 0), ZetaCombo(Basis::HZ2, 1));
    EXPECT_EQ(aperylike_J(2, 1), ZetaCombo(Basis::HZ2, make_rat(3, 4)));
    EXPECT_TRUE(aperylike_J(0, 5).is_zero());
    EXPECT_EQ(aperylike_tJ(2, 0), Rat(1));
    EXPECT_EQ(aperylike_tJ(2, 1), make_rat(3, 4));
    EXPECT_THROW(aperylike_tJ(kMaxTJ + 1, 2), zetaforge::UnsupportedIndex);
}

TEST(AperyLike, ClosedFormSatisfiesRecurrence) {
    for (unsigned k = 2; k <= 4; ++k) {
        for (unsigned n = 1; n <= 40; ++n) {
            ZetaCombo lhs = Rat(4 * n * n) * aperylike_J(k, n) -
                            Rat(8 * n * n - 8 * n + 3) * aperylike_J(k, n - 1);
            if (n >= 2) lhs += Rat(4 * (n - 1) * (n - 1)) * aperylike_J(k, n - 2);
            EXPECT_EQ(lhs, Rat(4) * aperylike_J(k - 2, n - 1)) << k << " " << n;
        }
    }
}

TEST(AperyLike, NormalizedRecurrence) {
    for (unsigned k = 2; k <= kMaxTJ; ++k) {
        for (unsigned n = 1; n <= 30; ++n) {
            Rat lhs = Rat(4 * n * n) * aperylike_tJ(k, n) - Rat(8 * n * n - 8 * n + 3) * aperylike_tJ(k, n - 1);
            if (n >= 2) lhs += Rat(4 * (n - 1) * (n - 1)) * aperylike_tJ(k, n - 2);
            EXPECT_EQ(lhs, 4 * aperylike_tJ(k - 2, n - 1)) << k << " " << n;
        }
    }
}

TEST(AperyLike, RelationsBetweenJAndTJ) {
    for (unsigned n = 0; n <= 30; ++n) {
        EXPECT_EQ(aperylike_J(2, n), aperylike_tJ(2, n) * aperylike_J(2, 0));
        ZetaCombo d = aperylike_J(3, n) - aperylike_tJ(2, n) * aperylike_J(3, 0);
        EXPECT_EQ(d, ZetaCombo(Basis::ONE, aperylike_tJ(3, n)));
        ZetaCombo j4 = aperylike_tJ(2, n) * aperylike_J(4, 0) + aperylike_tJ(4, n) * aperylike_J(2, 0);
        EXPECT_EQ(aperylike_J(4, n), j4);
    }
}

TEST(AperyLike, J3BaseCase) {
    // 4 J3(1) - 3 J3(0) = 4 J1(0) fixes the scale of J1.
    ZetaCombo lhs = Rat(4) * aperylike_J(3, 1) - Rat(3) * aperylike_J(3, 0);
    EXPECT_EQ(lhs, Rat(4) * aperylike_J(1, 0));
    EXPECT_EQ(aperylike_J(3, 0), ZetaCombo(Basis::HZ3, 2));
}

TEST(AperyLike, TJ2DenominatorsArePowersOfTwo) {
    for (unsigned n = 0; n <= 60; ++n) {
        zetaforge::exact::BigInt d = aperylike_tJ(2, n).get_den();
        while (d % 2 == 0) d /= 2;
        EXPECT_EQ(d, 1) << n;
    }
}

TEST(Congruence, PAryProduct) {
    auto r = congruence_pary_product("A2", 5, 7);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.modulus, 5);
    EXPECT_TRUE(congruence_pary_product("A2", 7, 3).ok);
    EXPECT_TRUE(congruence_pary_product("TJ2", 7, 10).ok);
    for (unsigned long p : {3ul, 5ul, 7ul})
        for (unsigned long n = 0; n < 80; ++n) {
            EXPECT_TRUE(congruence_pary_product("A3", p, n).ok);
            EXPECT_TRUE(congruence_pary_product("TJ2", p, n).ok);
        }
}

TEST(Congruence, Super) {
    auto r = supercongruence_check("A3", 5, 1, 1);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.modulus, 125);
    EXPECT_EQ(r.rhs_residue, 1);
    EXPECT_TRUE(supercongruence_check("A2", 7, 1, 1).ok);
    auto r3 = supercongruence_check("A3", 3, 1, 1);
    EXPECT_EQ(r3.modulus, 3);
    EXPECT_TRUE(r3.ok);
    EXPECT_THROW(supercongruence_check("A3", 9, 1, 1), zetaforge::InvalidArgument);
}

TEST(Congruence, TJSuper) {
    EXPECT_TRUE(tj_supercongruence_check(0, 5, 1, 1).ok);
    EXPECT_TRUE(tj_supercongruence_check(0, 7, 2, 1).ok);
    EXPECT_TRUE(tj_supercongruence_check(1, 5, 1, 1).ok);
    EXPECT_THROW(tj_supercongruence_check(0, 5, 3, 1), zetaforge::InvalidArgument);
}

TEST(Congruence, LongOsburnSwisher) {
    // residues frozen from an independent Fraction-based computation
    auto r3 = los_square_sum_check(3);
    EXPECT_TRUE(r3.ok);
    EXPECT_EQ(r3.lhs_residue, 26);
    EXPECT_EQ(los_square_sum_check(5).lhs_residue, 1);
    EXPECT_EQ(los_square_sum_check(7).lhs_residue, 342);
    EXPECT_EQ(los_square_sum_check(11).lhs_residue, 1330);
    EXPECT_TRUE(los_square_sum_check(13).ok);
}

TEST(Congruence, EtaCoefficients) {
    EXPECT_EQ(lambda_coefficient(3), 0);
    EXPECT_EQ(lambda_coefficient(5), -6);
    EXPECT_EQ(lambda_coefficient(7), 0);
    EXPECT_EQ(lambda_coefficient(13), 10);
    EXPECT_EQ(gamma_coefficient(3), -4);
    EXPECT_EQ(gamma_coefficient(5), -2);
    EXPECT_EQ(gamma_coefficient(7), 24);
    EXPECT_EQ(gamma_coefficient(11), -44);
    EXPECT_EQ(gamma_coefficient(13), 22);
}

TEST(Congruence, ASD) {
    EXPECT_TRUE(asd_congruence_check("A2", 5, 1, 2).ok);
    EXPECT_TRUE(asd_congruence_check("A3", 7, 1, 2).ok);
    for (unsigned long p : {3ul, 5ul, 7ul, 11ul})
        for (unsigned long m : {1ul, 3ul}) {
            EXPECT_TRUE(asd_congruence_check("A2", p, m, 2).ok) << p << " " << m;
            EXPECT_TRUE(asd_congruence_check("A3", p, m, 2).ok) << p << " " << m;
        }
    EXPECT_THROW(asd_congruence_check("A2", 5, 2, 2), zetaforge::IndexNotIntegral);
}
