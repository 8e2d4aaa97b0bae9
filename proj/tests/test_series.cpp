#include <gtest/gtest.h>

#include <random>

#include "zetaforge/aperynum.hpp"
#include "zetaforge/errors.hpp"
#include "zetaforge/series.hpp"

using namespace zetaforge::series;
using zetaforge::exact::make_rat;

namespace {

PowerSeries tj_series(unsigned k, int order) {
    PowerSeries f = PowerSeries::zero(order);
    for (int n = 0; n <= order; ++n) f[n] = zetaforge::aperynum::aperylike_tJ(k, n);
    return f;
}

}  // namespace

TEST(PowerSeries, ArithmeticTruncatesToMinOrder) {
    PowerSeries a({1, 2, 3}), b({1, 1});
    EXPECT_EQ((a * b).order(), 1);
    EXPECT_EQ((a + b).order(), 1);
    EXPECT_EQ(a.derivative(), PowerSeries({2, 6}));
}

TEST(Ladder, AnnihilatesTJ2) {
    PowerSeries img = apply_ladder_D(tj_series(2, 60));
    EXPECT_EQ(img.order(), 58);
    EXPECT_TRUE(img.is_zero());
}

TEST(Ladder, StepsDownTheNormalizedFamily) {
    for (unsigned k : {4u, 6u, 3u, 5u, 7u}) {
        PowerSeries img = apply_ladder_D(tj_series(k, 42));
        EXPECT_EQ(img, tj_series(k - 2, 40)) << k;
    }
}

TEST(Ladder, MapsJ3SeriesToJ1Series) {
    using zetaforge::aperynum::Basis;
    const int N = 40;
    PowerSeries one = PowerSeries::zero(N), hz3 = PowerSeries::zero(N), j1 = PowerSeries::zero(N - 2);
    for (int n = 0; n <= N; ++n) {
        auto j = zetaforge::aperynum::aperylike_J(3, n);
        one[n] = j.get(Basis::ONE);
        hz3[n] = j.get(Basis::HZ3);
        if (n <= N - 2) j1[n] = zetaforge::aperynum::aperylike_J(1, n).get(Basis::ONE);
    }
    EXPECT_EQ(apply_ladder_D(one), j1);
    EXPECT_TRUE(apply_ladder_D(hz3).is_zero());
}

TEST(Ladder, ConstantInput) {
    PowerSeries img = apply_ladder_D(PowerSeries::constant(5, 4));
    EXPECT_EQ(img, PowerSeries({make_rat(-15, 4), 5, 0}));
    EXPECT_THROW(apply_ladder_D(PowerSeries({1, 2})), zetaforge::OrderTooSmall);
}

TEST(PicardFuchs, SmallInputs) {
    EXPECT_EQ(apply_picard_fuchs_L(PowerSeries::constant(1, 3)), PowerSeries({0, 1}));
    EXPECT_EQ(apply_picard_fuchs_L(PowerSeries::variable(4)), PowerSeries({-1, 0, 4}));
}

TEST(PicardFuchs, AnnihilatesW2) {
    const int N = 60;
    PowerSeries f = PowerSeries::zero(N);
    PowerSeries h = hypergeom_2f1_series(make_rat(1, 2), make_rat(1, 2), 1, N / 2);
    for (int n = 0; 2 * n <= N; ++n) f[2 * n] = h[n];
    // independent form of the same coefficients: binom(2n,n)^2 / 16^n
    for (int n = 0; 2 * n <= N; ++n) {
        zetaforge::exact::BigInt b = zetaforge::exact::binomial(2 * n, n);
        EXPECT_EQ(f[2 * n], Rat(b * b) / Rat(zetaforge::exact::ipow(16, n)));
    }
    PowerSeries img = apply_picard_fuchs_L(f);
    EXPECT_EQ(img.order(), 58);
    EXPECT_TRUE(img.is_zero());
}

TEST(Hypergeom, Coefficients) {
    EXPECT_EQ(hypergeom_2f1_series(1, 1, make_rat(3, 2), 2), PowerSeries({1, make_rat(2, 3), make_rat(8, 15)}));
    EXPECT_EQ(hypergeom_2f1_series(3, 4, 5, 0), PowerSeries({1}));
    EXPECT_EQ(hypergeom_2f1_series(make_rat(1, 2), make_rat(1, 2), 1, 2),
              PowerSeries({1, make_rat(1, 4), make_rat(9, 64)}));
    EXPECT_THROW(hypergeom_2f1_series(1, 1, -2, 5), zetaforge::PoleInCoefficient);
}

TEST(Eta, PentagonalMatchesProduct) {
    const long M = 24 * 40;
    QSeries prod = QSeries::one(M);
    for (long n = 1; 24 * n <= M; ++n) {
        QSeries f = QSeries::one(M);
        f.set(24 * n, -1);
        prod = (prod * f).truncated(M);
    }
    EXPECT_EQ(euler_product(M).terms(), prod.terms());
    QSeries eta = eta_qseries(1, 1, M);
    EXPECT_EQ(*eta.leading_units(), 1);
    EXPECT_EQ(eta.coeff(1), Rat(1));
    EXPECT_EQ(eta.coeff(25), Rat(-1));
    EXPECT_EQ(eta.coeff(49), Rat(-1));
    EXPECT_EQ(eta.coeff(121), Rat(1));
}

TEST(Eta, ScaledAndTrivial) {
    QSeries e2 = eta_qseries(2, 1, 24 * 6);
    EXPECT_EQ(e2.coeff(2), Rat(1));
    EXPECT_EQ(e2.coeff(2 + 48), Rat(-1));
    EXPECT_EQ(e2.coeff(2 + 24), Rat(0));
    EXPECT_EQ(eta_qseries(1, 0, 100).terms(), QSeries::one(100).terms());
}

TEST(Eta, InversePowers) {
    const long M = 24 * 15;
    for (long m : {1L, 2L, 4L})
        for (long e : {1L, 3L, 8L}) {
            QSeries prod = eta_qseries(m, e, M + 300) * eta_qseries(m, -e, M + 300);
            EXPECT_GE(prod.max_units(), M);
            EXPECT_EQ(prod.truncated(M).terms(), QSeries::one(M).terms()) << m << " " << e;
        }
}

TEST(Theta, Expansions) {
    QSeries t3 = theta_qseries(3, 24 * 5), t4 = theta_qseries(4, 24 * 5), t2 = theta_qseries(2, 24 * 5);
    EXPECT_EQ(t3.coeff(12), Rat(2));
    EXPECT_EQ(t3.coeff(48), Rat(2));
    EXPECT_EQ(t3.coeff(108), Rat(2));
    EXPECT_EQ(t4.coeff(12), Rat(-2));
    EXPECT_EQ(t4.coeff(48), Rat(2));
    EXPECT_EQ(t2.coeff(3), Rat(2));
    EXPECT_EQ(t2.coeff(27), Rat(2));
    EXPECT_EQ(*t2.leading_units(), 3);
}

TEST(Theta, JacobiIdentity) {
    const long M = 24 * 30;
    QSeries lhs = theta_qseries(3, M).pow(4);
    QSeries rhs = theta_qseries(2, M).pow(4) + theta_qseries(4, M).pow(4);
    EXPECT_EQ(lhs.truncated(M).terms(), rhs.truncated(M).terms());
}

TEST(Hauptmodul, LeadingTerms) {
    QSeries z = hauptmodul_z(24 * 5);
    EXPECT_EQ(*z.leading_units(), 24);
    EXPECT_EQ(z.coeff(24), Rat(1));
    EXPECT_EQ(z.coeff(0), Rat(0));
    QSeries zt = hauptmodul_theta_form(24 * 5);
    EXPECT_EQ(*zt.leading_units(), 12);
    EXPECT_EQ(zt.coeff(12), Rat(-16));
}

TEST(Compose, Trivial) {
    QSeries q = QSeries::monomial(1, 24, 24 * 6);
    QSeries r = compose_series(PowerSeries({1, 1, 0, 0, 0, 0, 0}), q);
    EXPECT_EQ(r.coeff(0), Rat(1));
    EXPECT_EQ(r.coeff(24), Rat(1));
    EXPECT_EQ(r.terms().size(), 2u);
    QSeries z = hauptmodul_z(24 * 6);
    EXPECT_EQ(compose_series(PowerSeries::variable(8), z).terms(), z.terms());
    EXPECT_THROW(compose_series(PowerSeries::variable(3), QSeries::one(24)),
                 zetaforge::NonvanishingInnerConstant);
}

TEST(Compose, RespectsMultiplication) {
    std::mt19937 gen(3);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rat> a(7), b(7);
        for (auto& x : a) x = d(gen);
        for (auto& x : b) x = d(gen);
        QSeries h(24 * 6);
        h.set(12, 1 + trial % 3);
        h.set(24, d(gen));
        h.set(36, d(gen));
        QSeries lhs = compose_series(PowerSeries(a) * PowerSeries(b), h);
        QSeries rhs = compose_series(PowerSeries(a), h) * compose_series(PowerSeries(b), h);
        long m = std::min(lhs.max_units(), rhs.max_units());
        EXPECT_EQ(lhs.truncated(m).terms(), rhs.truncated(m).terms());
    }
}

TEST(W2, PfaffForm) { EXPECT_TRUE(verify_pfaff_form(40)); }

TEST(W2, ExactlyOneConventionMatches) {
    W2Report rep = verify_w2_identity(20);
    int n = 0;
    for (const auto& v : rep.variants) n += v.matched;
    EXPECT_EQ(n, 1);
    EXPECT_TRUE(rep.matched);
    EXPECT_EQ(rep.convention_used, "theta_2tau_plus_1");
    EXPECT_TRUE(rep.pfaff_form_ok);
}
