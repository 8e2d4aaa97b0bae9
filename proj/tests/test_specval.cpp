#include <gtest/gtest.h>

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <random>

#include "zetaforge/errors.hpp"
#include "zetaforge/specval.hpp"

using namespace zetaforge::specval;

namespace {
const double kPi = M_PI;
Budget quick(std::uint64_t n = 400'000) { return Budget{n, 11}; }
}  // namespace

TEST(Hurwitz, RiemannValues) {
    EXPECT_NEAR(hurwitz_zeta_num(2.0, 1.0), kPi * kPi / 6, 1e-13);
    EXPECT_NEAR(hurwitz_zeta_num(4.0, 1.0), std::pow(kPi, 4) / 90, 1e-13);
    EXPECT_NEAR(hurwitz_zeta_num(2.0, 0.5), kPi * kPi / 2, 1e-12);
    double z3 = boost::math::zeta(3.0);
    EXPECT_NEAR(hurwitz_zeta_num(3.0, 3.0), z3 - 1 - 0.125, 1e-13);
    EXPECT_THROW(hurwitz_zeta_num(1.0, 2.0), zetaforge::PoleAtOne);
    EXPECT_THROW(hurwitz_zeta_num(2.0, 0.0), zetaforge::InvalidArgument);
}

TEST(Hurwitz, HalfShiftMatchesBoost) {
    for (double s : {2.0, 3.0, 4.0, 6.0})
        EXPECT_NEAR(hurwitz_zeta_num(s, 0.5), (std::pow(2.0, s) - 1) * boost::math::zeta(s), 1e-12);
}

TEST(Hurwitz, ComplexAndContinuation) {
    // reference values from a 30-digit mpmath evaluation
    auto z = hurwitz_zeta_num({1.5, 2.0}, 0.7);
    EXPECT_NEAR(z.real(), 1.18281590621053660893, 1e-12);
    EXPECT_NEAR(z.imag(), 0.65532329601933019631, 1e-12);
    // Re s < 0: head terms grow like n^(-Re s), so absolute accuracy scales
    // with (M + tau)^(1 - Re s) * eps.
    auto w = hurwitz_zeta_num({-2.5, 1.0}, 1.3);
    EXPECT_NEAR(w.real(), -0.02851309755207018532, 1e-11);
    EXPECT_NEAR(w.imag(), -0.06611470947880993278, 1e-11);
    EXPECT_NEAR(hurwitz_zeta_num(-3.5, 2.25), -2.18746840490364238332, 5e-10);
}

TEST(Hurwitz, ShiftIdentityRandomized) {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> S(1.2, 9.5), T(0.25, 4.0);
    for (int i = 0; i < 50; ++i) {
        double s = S(gen), tau = T(gen);
        EXPECT_NEAR(hurwitz_zeta_num(s, tau), hurwitz_zeta_num(s, tau + 1) + std::pow(tau, -s), 1e-12);
    }
}

TEST(Hyp2f1, QuarterThreeQuarter) {
    EXPECT_NEAR(hyp2f1(0.25, 0.75, 1, -2), 0.80558773350325192898, 1e-14);
    EXPECT_NEAR(hyp2f1(0.25, 0.75, 1, -0.25), 0.95860691932883952532, 1e-14);
    EXPECT_NEAR(hyp2f1(0.25, 0.75, 1, -0.7), 0.90309647909271846528, 1e-14);
    EXPECT_EQ(hyp2f1(0.25, 0.75, 1, 0), 1.0);
}

TEST(RSeries, Values) {
    EXPECT_NEAR(r_k1_series(2, 0, 5).value, kPi * kPi / 2, 1e-13);
    EXPECT_NEAR(r_k1_series(3, 0, 5).value, 14 * boost::math::zeta(3.0), 1e-12);
    double f = hyp2f1(0.25, 0.75, 1, -0.25);
    EXPECT_NEAR(r_k1_series(2, 0.5, 80).value, kPi * kPi / 2 * f * f, 1e-8);
    EXPECT_THROW(r_k1_series(2, 1.0, 5), zetaforge::SeriesRegimeViolated);
}

TEST(RQuadrature, R21AtZero) {
    auto r = r_kj_quadrature(2, 1, 0, Method::MONTE_CARLO, quick());
    EXPECT_GT(r.std_error, 0);
    EXPECT_NEAR(r.value, kPi * kPi / 2, 3 * r.std_error);
    EXPECT_EQ(r.nodes, 400'000u);
}

TEST(RQuadrature, R21MatchesSeries) {
    auto r = r_kj_quadrature(2, 1, 0.5, Method::MONTE_CARLO, quick());
    EXPECT_NEAR(r.value, r_k1_series(2, 0.5, 80).value, 3 * r.std_error);
}

TEST(RQuadrature, R42AtZero) {
    auto r = r_kj_quadrature(4, 2, 0, Method::MONTE_CARLO, quick());
    EXPECT_NEAR(r.value, std::pow(kPi, 4) / 6, 3 * r.std_error);
}

TEST(RQuadrature, HigherIntegralsCarryFactorKOverTwo) {
    // The printed integrals equal (k/2) times the binom(-1/2,n) J_k(n) series.
    auto r3 = r_kj_quadrature(3, 1, std::sqrt(0.5), Method::MONTE_CARLO, quick());
    EXPECT_NEAR(r3.value, 1.5 * r_k1_series(3, std::sqrt(0.5), 120).value, 3 * r3.std_error);
    auto r4 = r_kj_quadrature(4, 1, 0.5, Method::MONTE_CARLO, quick());
    EXPECT_NEAR(r4.value, 2.0 * r_k1_series(4, 0.5, 120).value, 3 * r4.std_error);
}

TEST(RQuadrature, MonotoneInKappa) {
    double prev = 1e300, prev_err = 0;
    for (double kappa : {0.0, 0.2, 0.4, 0.6, 0.8}) {
        auto r = r_kj_quadrature(2, 1, kappa, Method::MONTE_CARLO, quick(200'000));
        EXPECT_LT(r.value, prev + 3 * (r.std_error + prev_err));
        prev = r.value;
        prev_err = r.std_error;
    }
}

TEST(RQuadrature, MethodsAgree) {
    auto mc = r_kj_quadrature(2, 1, 0.5, Method::MONTE_CARLO, quick());
    auto qmc = r_kj_quadrature(2, 1, 0.5, Method::QMC, quick());
    auto tg = r_kj_quadrature(2, 1, 0.5, Method::TENSOR_GAUSS, quick());
    double exact = r_k1_series(2, 0.5, 80).value;
    EXPECT_NEAR(qmc.value, exact, std::max(3 * qmc.std_error, 1e-4));
    EXPECT_EQ(tg.std_error, 0);
    EXPECT_NEAR(tg.value, exact, 1e-3);
    EXPECT_EQ(tg.nodes, 900u);
    EXPECT_EQ(mc.method, Method::MONTE_CARLO);
}

TEST(RQuadrature, Deterministic) {
    auto a = r_kj_quadrature(3, 1, 0.3, Method::MONTE_CARLO, quick(100'000));
    auto b = r_kj_quadrature(3, 1, 0.3, Method::MONTE_CARLO, quick(100'000));
    EXPECT_EQ(a.value, b.value);
    auto c = r_kj_quadrature(3, 1, 0.3, Method::MONTE_CARLO, Budget{100'000, 12});
    EXPECT_NE(a.value, c.value);
}

TEST(RQuadrature, UnsupportedPair) {
    EXPECT_THROW(r_kj_quadrature(3, 2, 0.1, Method::MONTE_CARLO, quick()), zetaforge::UnsupportedIndexPair);
}

TEST(ZetaQ, SymmetricCase) {
    NchoParams p(std::sqrt(2.0), std::sqrt(2.0));
    EXPECT_NEAR(zetaQ2_closed(p), kPi * kPi, 1e-12);
    auto z = zetaQ_special(2, p, Method::MONTE_CARLO, quick());
    EXPECT_NEAR(z.value, kPi * kPi, 1e-12);
    EXPECT_EQ(z.std_error, 0);
    NchoParams q(1.7, 1.7);
    EXPECT_NEAR(zetaQ2_closed(q), kPi * kPi / (1.7 * 1.7 - 1), 1e-12);
}

TEST(ZetaQ, AssembledMatchesClosedForm) {
    std::mt19937 gen(8);
    std::uniform_real_distribution<double> A(0.6, 3.0);
    for (int i = 0; i < 5; ++i) {
        double a = A(gen), b = A(gen);
        if (a * b <= 1.2) b = 1.5 / a;
        NchoParams p(a, b);
        auto z = zetaQ_special(2, p, Method::MONTE_CARLO, quick());
        EXPECT_NEAR(z.value, zetaQ2_closed(p), std::max(1e-6, 3 * z.std_error)) << a << " " << b;
    }
}

TEST(ZetaQ, SwapSymmetry) {
    NchoParams p(2.5, 0.6), q(0.6, 2.5);
    EXPECT_DOUBLE_EQ(zetaQ2_closed(p), zetaQ2_closed(q));
    auto a = zetaQ_special(3, p, Method::MONTE_CARLO, quick(200'000));
    auto b = zetaQ_special(3, q, Method::MONTE_CARLO, quick(200'000));
    EXPECT_EQ(a.value, b.value);
}

TEST(ZetaQ, InvalidParams) { EXPECT_THROW(NchoParams(1.0, 0.5), zetaforge::InvalidArgument); }

TEST(AppendixB, LowOrderValues) {
    for (auto [w, n, k] : {std::tuple{AppendixB::A, 0u, 0u}, std::tuple{AppendixB::A, 1u, 1u},
                           std::tuple{AppendixB::B, 1u, 0u}, std::tuple{AppendixB::A, 1u, 0u}}) {
        auto r = appendixB_integral(w, n, k, Method::MONTE_CARLO, quick(1'000'000));
        EXPECT_NEAR(r.value, appendixB_exact(w, n, k), 3 * r.std_error) << n << k;
    }
    double sum = appendixB_exact(AppendixB::B, 1, 0) + appendixB_exact(AppendixB::B, 1, 1);
    EXPECT_NEAR(sum, appendixB_exact(AppendixB::A, 1, 0), 1e-14);
}

TEST(AppendixB, R42Series) {
    EXPECT_NEAR(r42_series(0, 1), std::pow(kPi, 4) / 6, 1e-12);
    EXPECT_THROW(r42_series(0.1, 2), zetaforge::TableExhausted);
    // order of contact: the difference is O(t^2) in t = kappa^2
    std::vector<double> diffs;
    for (double kappa : {0.2, 0.1}) {
        auto q = r_kj_quadrature(4, 2, kappa, Method::QMC, Budget{4'000'000, 3});
        diffs.push_back(std::abs(q.value - r42_series(kappa * kappa, 1)));
    }
    EXPECT_LT(diffs[1], diffs[0]);
}
