#include <gtest/gtest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>

#include "zetaforge/errors.hpp"
#include "zetaforge/resum.hpp"
#include "zetaforge/specval.hpp"

using namespace zetaforge;
using namespace zetaforge::resum;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST(ANj, ClosedFormValues) {
    EXPECT_DOUBLE_EQ(a_nj_closed(2, 1, 3.0), 1 / 9.0);
    EXPECT_DOUBLE_EQ(a_nj_closed(3, 0, 2.0), 1 / 8.0);
    EXPECT_NEAR(a_nj_closed(2, 2, 1.0), 2.0, 1e-14);
    EXPECT_THROW(a_nj_closed(1, 1, 1.0), InvalidArgument);
}

TEST(ANj, NestedIntegralsMatchClosedForm) {
    for (auto [n, j] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}})
        for (double tau : {0.7, 2.0})
            EXPECT_NEAR(a_nj_nested(n, j, tau), a_nj_closed(n, j, tau), 1e-8) << n << "," << j;
}

TEST(ANj, TelescopesToHurwitzPartialSums) {
    for (unsigned n : {2u, 3u, 5u}) {
        double lhs = 0, rhs = 0;
        for (unsigned k = 0; k <= 50; ++k) {
            lhs += a_nj_closed(n, 1, k + 0.3);
            rhs += std::pow(k + 0.3, -double(n));
        }
        EXPECT_NEAR(lhs, rhs, 1e-13 * rhs);
    }
}

TEST(FpsHurwitz, LeadingTermApproachAndDivergence) {
    auto tr = fps_hurwitz(2, 10, 300);
    EXPECT_DOUBLE_EQ(tr.rows[0].term, 1 / 10.0);
    const double oracle = specval::hurwitz_zeta_num(2.0, 10.0);
    std::size_t best = tr.smallest_term();
    EXPECT_GT(best, 20u);
    EXPECT_NEAR(tr.rows[best].partial_sum, oracle, 1e-15);
    EXPECT_GT(std::abs(tr.rows.back().term), 1e3);  // diverged
    auto t3 = fps_hurwitz(4, 2.5, 0);
    EXPECT_DOUBLE_EQ(t3.rows[0].term, 1 / (3 * std::pow(2.5, 3)));
}

TEST(FpsHurwitz, AsymptoticErrorOrder) {
    // S_K error ~ tau^-(K+n) for fixed K; K = 2 means the next nonzero term is k = 4
    const unsigned n = 2, K = 2;
    std::vector<double> le, lt;
    for (double tau : {5.0, 10.0, 20.0, 40.0}) {
        auto tr = fps_hurwitz(n, tau, K);
        le.push_back(std::log(std::abs(tr.rows.back().partial_sum - specval::hurwitz_zeta_num(2.0, tau))));
        lt.push_back(std::log(tau));
    }
    for (std::size_t i = 0; i + 1 < le.size(); ++i) {
        double slope = (le[i + 1] - le[i]) / (lt[i + 1] - lt[i]);
        EXPECT_LT(slope, -(double(K) + n) + 0.1);
    }
}

TEST(BorelTransform, SeamAndSpecialValues) {
    for (unsigned n : {2u, 3u, 4u, 6u}) {
        double a = borel_transform_hurwitz(n, 0.5, BorelBranch::BERNOULLI_SERIES);
        double b = borel_transform_hurwitz(n, 0.5, BorelBranch::EXPONENTIAL_SUM);
        EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(a))) << n;
    }
    EXPECT_DOUBLE_EQ(borel_transform_hurwitz(2, 0.0), 1.0);
    EXPECT_NEAR(borel_transform_hurwitz(2, 1e-9), 1.0, 1e-9);
    EXPECT_NEAR(borel_transform_hurwitz(2, 1.0), 1 / (1 - std::exp(-1.0)), 1e-15);
    // n = 3: (1/2) d/dt [t^2/(1-e^-t)] = t/(1-e^-t) - t^2 e^-t / (2 (1-e^-t)^2)
    auto d3 = [](double t) {
        double q = 1 - std::exp(-t);
        return t / q - t * t * std::exp(-t) / (2 * q * q);
    };
    for (double t : {0.1, 1.0, 4.0}) EXPECT_NEAR(borel_transform_hurwitz(3, t), d3(t), 1e-13);
}

TEST(BorelSum, MatchesHurwitz) {
    for (unsigned n : {2u, 3u, 4u})
        for (double z : {1.0, 0.5, 1.0 / 3, 0.2}) {
            auto r = borel_sum_hurwitz(n, z);
            EXPECT_TRUE(r.agreement) << n << " " << z << " " << r.borel_sum - r.reference_value;
            EXPECT_NEAR(r.borel_sum, r.reference_value, 1e-8);
        }
    auto r = borel_sum_hurwitz(2, 1.0 / 3);
    EXPECT_NEAR(r.borel_sum, 3 * (kPi * kPi / 6 - 1.25), 1e-10);
    EXPECT_NEAR(r.borel_sum, 1.184803, 1e-6);
    EXPECT_NEAR(borel_sum_hurwitz(3, 1).borel_sum, boost::math::zeta(3.0), 1e-10);
    // leading term of the series: the n = 2 sum tends to 1 as z -> 0, error ~ z/2
    for (double z : {0.1, 0.05}) EXPECT_NEAR(borel_sum_hurwitz(2, z).borel_sum, 1 + z / 2, z * z);
}

TEST(BorelFractional, SeamAndIntegerLimit) {
    for (double s : {1.2, 1.5, 1.9}) {
        // series and Euler integral agree where both converge
        std::complex<double> a = borel_transform_fractional(s, 3.0);
        std::complex<double> b = borel_transform_fractional(s, 3.0 + 1e-12);
        EXPECT_NEAR(std::abs(a - b), 0, 1e-9) << s;
    }
    std::complex<double> sc(1.5, 0.3);
    EXPECT_NEAR(std::abs(borel_transform_fractional(sc, 3.0) - borel_transform_fractional(sc, 3.0 + 1e-12)),
                0, 1e-9);
    // s -> 2 tends to the n = 2 transform
    EXPECT_NEAR(borel_transform_fractional(1.999999, 1.0).real(), borel_transform_hurwitz(2, 1.0), 1e-5);
}

TEST(BorelComplex, TwoRoutesAgree) {
    auto r = borel_sum_complex_s(1.5, 0.2);
    EXPECT_TRUE(r.agreement) << r.route_difference;
    EXPECT_LT(r.route_difference, 1e-6);
    EXPECT_EQ(r.x_route.imag(), 0);
    EXPECT_EQ(r.laplace_route.imag(), 0);
    auto c = borel_sum_complex_s({1.4, 0.5}, 0.3);
    EXPECT_LT(c.route_difference, 1e-6);
    EXPECT_THROW(borel_sum_complex_s(2.0, 0.2), OutOfStrip);
    EXPECT_THROW(borel_sum_complex_s(1.0, 0.2), OutOfStrip);
}

TEST(BorelComplex, HurwitzDiagnosticIsRecorded) {
    auto r = borel_sum_complex_s(1.5, 0.2);
    EXPECT_TRUE(std::isfinite(r.hurwitz_value.real()));
    // s -> 1: (s - 1) * sum stays bounded
    auto a = borel_sum_complex_s(1.05, 0.2), b = borel_sum_complex_s(1.02, 0.2);
    EXPECT_LT(std::abs(0.05 * a.x_route), 2.0);
    EXPECT_LT(std::abs(0.02 * b.x_route), 2.0);
}

TEST(FpsQrm, LeadingTermAndBernoulliReduction) {
    auto tr = fps_qrm(3, 4.0, {1.0});
    EXPECT_DOUBLE_EQ(tr.rows[0].term, 2 / (2 * 16.0));
    // g = Delta = 0: the spectrum n +/- 0 doubled, so 2x the Hurwitz series
    std::vector<double> rb;
    for (unsigned k = 0; k <= 8; ++k) rb.push_back(exact::to_double(exact::bernoulli_number(k)) * (k == 1 ? -1 : 1));
    // (RB)_k(0, 0, 0) = B_k(0) with B_1(0) = -1/2
    rb[1] = -0.5;
    auto q = fps_qrm(2, 7.0, rb);
    auto h = fps_hurwitz(2, 7.0, 8);
    for (unsigned k = 0; k <= 8; ++k) EXPECT_NEAR(q.rows[k].term, 2 * h.rows[k].term, 1e-15) << k;
}

TEST(FpsQrm, TruncationErrorAgainstSpectrum) {
    spectra::QrmParams p(0.3, 0.5);
    auto h = spectra::heat_trace_from_spectrum(spectra::qrm_eigs(p, 512, 0));
    std::vector<double> rb;
    for (unsigned k = 0; k <= 2; ++k) rb.push_back(spectra::rabi_bernoulli_exact(k).evaluate(0, 0.3, 0.5));
    std::vector<double> lr, lt;
    for (double tau : {10.0, 20.0, 40.0}) {
        double z = spectra::spectral_zeta_mellin(h, 2, tau);
        double s = fps_qrm(2, tau, rb).rows.back().partial_sum;
        lr.push_back(std::log(std::abs(s / z - 1)));
        lt.push_back(std::log(tau));
    }
    for (int i = 0; i < 2; ++i) EXPECT_LT((lr[i + 1] - lr[i]) / (lt[i + 1] - lt[i]), -2.8);
}

TEST(FpsNcho, LeadingTermAndSpectralZeta) {
    specval::NchoParams p(2, 1);
    auto spec = spectra::ncho_eigs(p, 1024, 0);
    auto Z = [&](double t) { return spectra::partition_from_spectrum(spec, t, spectra::Tail::QHO_BOUND).value; };
    auto fit = spectra::heat_trace_fit(Z, spectra::linear_grid(0.1, 1, 19), 3);
    auto tr = fps_ncho(2, 20, fit);
    EXPECT_TRUE(tr.conjecture_support);
    EXPECT_DOUBLE_EQ(tr.rows[0].term, fit.c_minus1 / 20);
    double z = spectra::spectral_zeta_mellin(spectra::heat_trace_from_spectrum(spec), 2, 20);
    EXPECT_NEAR(tr.rows[1].partial_sum / z, 1, 1e-2);

    // alpha = beta = sqrt(2): twice the oscillator, C_1 = 2 * (-1/24)
    specval::NchoParams q(std::sqrt(2.0), std::sqrt(2.0));
    auto sq = spectra::ncho_eigs(q, 1024, 0);
    auto Zq = [&](double t) { return spectra::partition_from_spectrum(sq, t, spectra::Tail::QHO_BOUND).value; };
    auto fq = spectra::heat_trace_fit(Zq, spectra::linear_grid(0.1, 1, 19), 3);
    EXPECT_NEAR(fq.c_minus1, 2, 1e-6);
    EXPECT_NEAR(fq.odd_coeffs[0], -1.0 / 12, 1e-5);
}
