#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "zetaforge/errors.hpp"
#include "zetaforge/exact.hpp"
#include "zetaforge/spectra.hpp"

using namespace zetaforge;
using namespace zetaforge::spectra;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

TEST(NchoMatrix, SymmetricWithHermiteOffsetsZeroAndTwo) {
    auto m = ncho_truncated_matrix(NchoParams(2, 1), 16);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) {
            EXPECT_EQ(m.at(i, j), m.at(j, i));
            if (m.at(i, j) == 0) continue;
            long dn = std::labs(long(i / 2) - long(j / 2));
            EXPECT_TRUE(dn == 0 || dn == 2) << i << "," << j;
        }
}

TEST(NchoEigs, ChainSolverMatchesBandedSolver) {
    NchoParams p(2.5, 0.6);
    auto banded = banded_eigenvalues(ncho_truncated_matrix(p, 128));
    auto spec = ncho_eigs(p, 128, 0, 1e300);  // keep all 128
    ASSERT_EQ(spec.eigenvalues.size(), 128u);
    for (std::size_t i = 0; i < 128; ++i) EXPECT_NEAR(spec.eigenvalues[i], banded[i], 1e-9);
}

TEST(NchoEigs, EqualParametersGiveDoubledOscillator) {
    auto spec = ncho_eigs(NchoParams(kSqrt2, kSqrt2), 512, 20);
    ASSERT_EQ(spec.eigenvalues.size(), 20u);
    for (unsigned i = 0; i < 20; ++i) EXPECT_NEAR(spec.eigenvalues[i], i / 2 + 0.5, 1e-8);
    // alpha = beta = 3: sqrt(8) (n + 1/2), doubled
    auto s3 = ncho_eigs(NchoParams(3, 3), 512, 10);
    for (unsigned i = 0; i < 10; ++i) EXPECT_NEAR(s3.eigenvalues[i], std::sqrt(8.0) * (i / 2 + 0.5), 1e-8);
}

TEST(NchoEigs, LowestEigenvaluesAtTwoOne) {
    auto spec = ncho_eigs(NchoParams(2, 1), 1024, 6);
    EXPECT_NEAR(spec.eigenvalues[0], 0.36691786, 1e-7);
    EXPECT_NEAR(spec.eigenvalues[1], 0.64607806, 1e-7);
    EXPECT_NEAR(spec.eigenvalues[2], 1.1571203, 1e-6);
    EXPECT_GE(spec.eigenvalues[0], 0.5 * std::sqrt(0.5));
}

TEST(NchoEigs, BoundsMultiplicityAndWeylSlope) {
    for (auto [a, b] : {std::pair{kSqrt2, kSqrt2}, {2.0, 1.0}, {2.5, 0.6}, {1.2, 4.0}}) {
        NchoParams p(a, b);
        auto spec = ncho_eigs(p, 1024, 0);
        ASSERT_GT(spec.eigenvalues.size(), 200u);
        EXPECT_EQ(ncho_bounds_violation(spec), -1) << a << "," << b;
        for (std::size_t i = 0; i + 2 < spec.eigenvalues.size(); ++i)
            EXPECT_FALSE(spec.eigenvalues[i + 2] - spec.eigenvalues[i] < 1e-9) << "triple at " << i;
        std::size_t j = spec.eigenvalues.size() / 2;
        double slope = spec.eigenvalues[2 * j - 1] / (j - 0.5);
        EXPECT_GE(slope, 0.95 * p.slope_min());
        EXPECT_LE(slope, 1.05 * p.slope_max());
    }
}

TEST(NchoEigs, VariationalMonotonicity) {
    NchoParams p(2, 1);
    auto small = ncho_eigs(p, 64, 0, 1e300);
    auto big = ncho_eigs(p, 128, 0, 1e300);
    for (std::size_t i = 0; i < small.eigenvalues.size(); ++i)
        EXPECT_LE(big.eigenvalues[i], small.eigenvalues[i] + 1e-12);
}

TEST(NchoEigs, NotConvergedWhenTruncationTooSmall) {
    EXPECT_THROW(ncho_eigs(NchoParams(2, 1), 16, 16, 1e-10), NotConverged);
    EXPECT_THROW(ncho_truncated_matrix(NchoParams(2, 1), 3), InvalidArgument);
}

TEST(QrmEigs, DecoupledLimits) {
    auto s0 = qrm_eigs(QrmParams(0, 0), 64, 10);
    for (unsigned i = 0; i < 10; ++i) EXPECT_NEAR(s0.eigenvalues[i], i / 2, 1e-12);
    auto s1 = qrm_eigs(QrmParams(0, 0.5), 64, 10);
    // n - 1/2 and n + 1/2 interleave: -0.5, 0.5, 0.5, 1.5, 1.5, ...
    EXPECT_NEAR(s1.eigenvalues[0], -0.5, 1e-12);
    for (unsigned i = 1; i < 10; ++i) EXPECT_NEAR(s1.eigenvalues[i], (i + 1) / 2 - 0.5, 1e-12);
}

TEST(QrmEigs, DisplacedOscillatorAtZeroDelta) {
    auto s = qrm_eigs(QrmParams(0.7, 0), 256, 20);
    for (unsigned i = 0; i < 20; ++i) EXPECT_NEAR(s.eigenvalues[i], i / 2 - 0.49, 1e-9);
}

TEST(QrmEigs, GroundStateBoundAndWeylBracket) {
    for (double eps : {0.0, 0.3}) {
        QrmParams p(0.7, 0.5, eps);
        auto s = qrm_eigs(p, 512, 0);
        EXPECT_GE(s.eigenvalues[0], -0.49 - p.spin_norm());
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
            double n = static_cast<double>(i / 2) - 0.49;
            EXPECT_LE(std::abs(s.eigenvalues[i] - n), p.spin_norm() + 1e-9) << i;
        }
    }
}

TEST(Partition, QhoClosedFormAndNchoDoubled) {
    auto q = partition_from_spectrum(qho_spectrum(40), 1.0, Tail::QHO_BOUND);
    EXPECT_NEAR(q.value, std::exp(-0.5) / (1 - std::exp(-1.0)), 1e-14);
    auto spec = ncho_eigs(NchoParams(kSqrt2, kSqrt2), 512, 0);
    auto z = partition_from_spectrum(spec, 0.5, Tail::QHO_BOUND);
    EXPECT_NEAR(z.value, 2 * std::exp(-0.25) / (1 - std::exp(-0.5)), 1e-9);
    EXPECT_THROW(partition_from_spectrum(qho_spectrum(4), 0.0, Tail::NONE), InvalidArgument);
}

TEST(Partition, DecreasingAndInsideBracket) {
    NchoParams p(2, 1);
    auto spec = ncho_eigs(p, 1024, 0);
    double prev = INFINITY;
    for (double t = 0.1; t <= 2.0001; t += 0.1) {
        auto z = partition_from_spectrum(spec, t, Tail::QHO_BOUND);
        EXPECT_LT(z.value, prev);
        prev = z.value;
        // whole-spectrum oscillator bracket
        double lo = 2 * std::exp(-0.5 * p.slope_max() * t) / (1 - std::exp(-p.slope_max() * t));
        double hi = 2 * std::exp(-0.5 * p.slope_min() * t) / (1 - std::exp(-p.slope_min() * t));
        EXPECT_GE(z.value - z.half_width, lo);
        EXPECT_LE(z.value + z.half_width, hi);
    }
}

TEST(Partition, TailDominatesWithFewEigenvalues) {
    auto spec = ncho_eigs(NchoParams(2, 1), 64, 4);
    EXPECT_THROW(partition_from_spectrum(spec, 0.01, Tail::QHO_BOUND), TailDominates);
}

TEST(QrmSeries, ZeroDeltaIsExact) {
    QrmParams p(0.3, 0);
    auto r = qrm_partition_series(p, 1.0, 2, {100000, 1});
    auto spec = qrm_eigs(p, 256, 0);
    auto z = partition_from_spectrum(spec, 1.0, Tail::QHO_BOUND);
    EXPECT_NEAR(r.value, z.value, 1e-8);
    EXPECT_EQ(r.std_error, 0);
}

TEST(QrmSeries, ZeroCouplingResumsToCosh) {
    QrmParams p(0, 0.5);
    auto r = qrm_partition_series(p, 1.0, 6, {100000, 1});
    EXPECT_NEAR(r.value, 2 * std::cosh(0.5) / (1 - std::exp(-1.0)), 1e-8);
    auto z = partition_from_spectrum(qrm_eigs(p, 128, 0), 1.0, Tail::QHO_BOUND);
    EXPECT_NEAR(r.value, z.value, 1e-8);
    EXPECT_THROW(qrm_partition_series(QrmParams(0.3, 0.5), 1.0, 3, {}), InvalidArgument);
}

TEST(QrmSeries, MatchesSpectrumAtGeneralPoint) {
    QrmParams p(0.3, 0.5);
    auto r = qrm_partition_series(p, 1.0, 2, {1'000'000, 7});
    auto z = partition_from_spectrum(qrm_eigs(p, 512, 0), 1.0, Tail::QHO_BOUND);
    EXPECT_NEAR(z.value, 3.8784620, 1e-6);
    EXPECT_NEAR(r.value, z.value, std::max(1e-3, 3 * r.std_error));
    auto again = qrm_partition_series(p, 1.0, 2, {1'000'000, 7});
    EXPECT_EQ(r.value, again.value);
}

TEST(HeatTraceFit, QhoLaurentCoefficients) {
    auto Z = [](double t) { return std::exp(-t / 2) / (1 - std::exp(-t)); };
    auto f = heat_trace_fit(Z, linear_grid(0.1, 1.0, 19), 4);
    EXPECT_NEAR(f.c_minus1, 1, 1e-7);
    EXPECT_NEAR(f.odd_coeffs[0], -1.0 / 24, 1e-6);  // 1/(2 sinh(t/2)) = 1/t - t/24 + 7t^3/5760
    EXPECT_NEAR(f.odd_coeffs[1], 7.0 / 5760, 1e-5);
    EXPECT_TRUE(f.trusted);
    FitOptions even;
    even.include_even = true;
    auto fe = heat_trace_fit(Z, linear_grid(0.1, 1.0, 19), 4, even);
    for (double c : fe.even_coeffs) EXPECT_NEAR(c, 0, 1e-5);
    EXPECT_THROW(heat_trace_fit(Z, linear_grid(0.1, 1.0, 5), 3), InvalidArgument);
    EXPECT_THROW(heat_trace_fit(Z, std::vector<double>(12, 0.5), 3), IllConditioned);
}

TEST(HeatTraceFit, NchoResidue) {
    for (auto [a, b] : {std::pair{kSqrt2, kSqrt2}, {2.0, 1.0}, {2.5, 0.6}}) {
        NchoParams p(a, b);
        auto spec = ncho_eigs(p, 1024, 0);
        auto Z = [&](double t) { return partition_from_spectrum(spec, t, Tail::QHO_BOUND).value; };
        for (unsigned n : {2u, 3u, 4u}) {
            auto f = heat_trace_fit(Z, linear_grid(0.1, 1.0, 19), n);
            EXPECT_NEAR(f.c_minus1 / p.residue(), 1, 0.02) << a << "," << b << " n=" << n;
        }
    }
}

TEST(QuasiPartition, QhoIdentity) {
    for (double t : {0.25, 0.5, 1.0}) {
        std::vector<double> v;
        for (unsigned k = 0; k <= 30; ++k)
            v.push_back(exact::to_double(exact::hurwitz_zeta_nonpos(k, exact::make_rat(1, 2))));
        EXPECT_NEAR(quasi_partition(v, 1, t), std::exp(-t / 2) / (1 - std::exp(-t)), 1e-10);
    }
    EXPECT_DOUBLE_EQ(quasi_partition({0.25}, 3, 0.5), 0.25 + 6);
}

TEST(QuasiPartition, QrmErrorIsSecondOrder) {
    QrmParams p(0.3, 0.5);
    const double tau = 2;
    auto spec = qrm_eigs(p, 512, 0);
    std::vector<double> v{qrm_zeta_nonpositive(0, p, tau), qrm_zeta_nonpositive(1, p, tau)};
    std::vector<double> lt, le;
    for (double t : {0.2, 0.1, 0.05}) {
        double z = partition_from_spectrum(spec, t, Tail::QHO_BOUND, tau).value;
        lt.push_back(std::log(t));
        le.push_back(std::log(std::abs(quasi_partition(v, 2, t) - z)));
    }
    double slope = ((le[0] - le[1]) / (lt[0] - lt[1]) + (le[1] - le[2]) / (lt[1] - lt[2])) / 2;
    EXPECT_GE(slope, 1.9);
}

TEST(Mellin, QhoHurwitz) {
    EXPECT_NEAR(spectral_zeta_mellin(qho_heat_trace(), 2, 0), kPi * kPi / 2, 1e-8);
    auto h = heat_trace_from_spectrum(qho_spectrum(200));
    EXPECT_NEAR(spectral_zeta_mellin(h, 2, 0), kPi * kPi / 2, 1e-8);
}

TEST(Mellin, QrmMatchesDirectSum) {
    QrmParams p(0.3, 0.5);
    auto spec = qrm_eigs(p, 512, 0);
    const double s = 3, tau = 2;
    double direct = 0;
    std::size_t m = spec.eigenvalues.size() & ~std::size_t(1);
    for (std::size_t i = 0; i < m; ++i) direct += std::pow(spec.eigenvalues[i] + tau, -s);
    // pairs n >= m/2 lie within spin_norm of n - g^2: integral tail, midpoint
    double a = m / 2 - 0.09 + tau;
    double lo = 2 * (std::pow(a + 0.5, 1 - s) / (s - 1)), hi = 2 * (std::pow(a - 0.5, 1 - s) / (s - 1));
    direct += (lo + hi) / 2;
    double mel = spectral_zeta_mellin(heat_trace_from_spectrum(spec), s, tau);
    EXPECT_NEAR(mel, direct, std::max(1e-6, (hi - lo) / 2));
}

TEST(Mellin, NchoMatchesClosedForm) {
    NchoParams p(2, 1);
    double v = spectral_zeta_mellin(heat_trace_from_spectrum(ncho_eigs(p, 1024, 0)), 2, 0);
    EXPECT_NEAR(v / specval::zetaQ2_closed(p), 1, 0.01);
}

TEST(Mellin, RejectsGrowingTrace) {
    HeatTrace h;
    h.Z = [](double t, double tau) { return std::exp(t * (1 - tau)); };
    EXPECT_THROW(spectral_zeta_mellin(h, 2, 0), NonIntegrable);
    EXPECT_THROW(spectral_zeta_mellin(qho_heat_trace(), 1, 0), InvalidArgument);
}

TEST(RabiBernoulli, ExactTable) {
    EXPECT_EQ(rabi_bernoulli_exact(0).to_string(), "1");
    EXPECT_EQ(rabi_bernoulli_exact(1).to_string(), "tau - g^2 - 1/2");
    for (unsigned k = 0; k <= 2; ++k) {
        auto r = rabi_bernoulli_exact(k);
        EXPECT_TRUE(r.monic_in_tau());
        EXPECT_EQ(r.degree_tau(), k);
    }
    EXPECT_NEAR(rabi_bernoulli_exact(1).evaluate(2, 0.3, 0.5), 1.41, 1e-14);
    // Delta = 0 gives B_k(tau - g^2)
    for (const char* tau : {"3/10", "17/10"})
        for (unsigned k = 0; k <= 2; ++k) {
            exact::Rat x = exact::parse_rat(tau) - exact::make_rat(9, 25);
            EXPECT_NEAR(rabi_bernoulli_exact(k).evaluate(exact::to_double(exact::parse_rat(tau)), 0.6, 0),
                        exact::to_double(exact::bernoulli_poly(k, x)), 1e-14);
        }
    EXPECT_THROW(rabi_bernoulli_exact(3), UnsupportedIndex);
}

TEST(RabiBernoulli, NumericMatchesTable) {
    QrmParams p(0.3, 0.5);
    auto grid = linear_grid(0.05, 0.6, 24);
    for (unsigned k = 0; k <= 2; ++k) {
        auto e = rabi_bernoulli_numeric(k, p, 2, grid);
        EXPECT_NEAR(e.value, rabi_bernoulli_exact(k).evaluate(2, 0.3, 0.5), 1e-3) << k;
    }
    QrmParams d0(0.4, 0);
    auto e3 = rabi_bernoulli_numeric(3, d0, 1.5, grid);
    double x = 1.5 - 0.16;
    EXPECT_NEAR(e3.value, x * x * x - 1.5 * x * x + 0.5 * x, std::max(1e-3, 3 * e3.error));
}

TEST(DerivativeRelation, QhoAndQrm) {
    auto hz = [](double s, double tau) { return specval::hurwitz_zeta_num(s, 0.5 + tau); };
    auto r = derivative_relation_check(hz, 2, 1, 1, 1e-4);
    EXPECT_NEAR(r.lhs, -2 * specval::hurwitz_zeta_num(3.0, 1.5), 1e-6);
    EXPECT_LT(r.abs_error, 1e-6);
    auto r0 = derivative_relation_check(hz, 2, 0, 1, 1e-3);
    EXPECT_EQ(r0.lhs, r0.rhs);

    QrmParams p(0.3, 0.5);
    auto h = heat_trace_from_spectrum(qrm_eigs(p, 512, 0));
    auto zq = [&](double s, double tau) { return spectral_zeta_mellin(h, s, tau); };
    EXPECT_LT(derivative_relation_check(zq, 3, 1, 2, 1e-3).abs_error, 1e-4);
}

TEST(SpectrumCache, RoundTripsThroughDisk) {
    auto dir = std::filesystem::temp_directory_path() / "zf_cache_test";
    std::filesystem::remove_all(dir);
    setenv("ZETAFORGE_CACHE_DIR", dir.c_str(), 1);
    set_cache_enabled(true);
    auto a = qrm_eigs(QrmParams(0.3, 0.5), 64, 0);
    EXPECT_FALSE(std::filesystem::is_empty(dir));
    auto b = qrm_eigs(QrmParams(0.3, 0.5), 64, 0);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    set_cache_enabled(false);
    EXPECT_FALSE(cache_enabled());
    auto c = qrm_eigs(QrmParams(0.3, 0.5), 64, 0);
    EXPECT_EQ(a.eigenvalues, c.eigenvalues);
    unsetenv("ZETAFORGE_CACHE_DIR");
    set_cache_enabled(true);
    std::filesystem::remove_all(dir);
}
