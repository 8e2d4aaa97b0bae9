#pragma once

// Truncated-basis spectra of the NCHO and the (asymmetric) quantum Rabi
// model, partition functions with bracketed tails, the nested-integral series
// for the QRM partition function, heat-trace fits, quasi-partition functions
// and spectral zeta values through the Mellin transform.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "zetaforge/exact.hpp"
#include "zetaforge/specval.hpp"

namespace zetaforge::spectra {

using specval::Budget;
using specval::NchoParams;
using specval::QuadratureResult;

/// H = a^dag a + Delta sigma_z + g (a + a^dag) sigma_x + epsilon sigma_x.
class QrmParams {
public:
    QrmParams(double g, double delta, double epsilon = 0);
    double g() const { return g_; }
    double delta() const { return d_; }
    double epsilon() const { return e_; }
    /// sqrt(Delta^2 + epsilon^2), the norm of the two-level part.
    double spin_norm() const;

private:
    double g_, d_, e_;
};

/// The harmonic oscillator a^dag a + 1/2.
struct Qho {};

using Model = std::variant<NchoParams, QrmParams, Qho>;

std::string model_name(const Model& m);

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    Model model = Qho{};
    unsigned truncation_N = 0;
    std::vector<double> convergence;  // |lambda(N) - lambda(N/2)| per eigenvalue
};

/// Upper band storage in LAPACK layout: ab[(kd + i - j) + j*(kd+1)] = A(i,j)
/// for max(0, j-kd) <= i <= j.
struct BandedMatrix {
    std::size_t n = 0;
    std::size_t kd = 0;
    std::vector<double> ab;

    double at(std::size_t i, std::size_t j) const;
};

/// Hermite basis truncation of size 2N, index (n, c) -> 2n + c. N >= 4.
BandedMatrix ncho_truncated_matrix(const NchoParams& params, unsigned N);

/// Fock truncation of size 2N, index (n, spin) -> 2n + spin.
BandedMatrix qrm_truncated_matrix(const QrmParams& params, unsigned N);

/// All eigenvalues of a banded symmetric matrix, ascending.
std::vector<double> banded_eigenvalues(const BandedMatrix& m);

/// Lowest `count` eigenvalues; throws NotConverged if any of them moves by
/// more than `threshold` between N and N/2. count = 0 returns the longest
/// converged prefix.
SpectrumResult ncho_eigs(const NchoParams& params, unsigned N, unsigned count,
                         double threshold = 1e-8);
SpectrumResult qrm_eigs(const QrmParams& params, unsigned N, unsigned count,
                        double threshold = 1e-8);
/// Exact n + 1/2.
SpectrumResult qho_spectrum(unsigned count);

/// Pairs (lambda_{2j-1}, lambda_{2j}) inside [(j-1/2) m, (j-1/2) M] up to
/// `slack`. Returns the index of the first violation, or -1.
long ncho_bounds_violation(const SpectrumResult& spec, double slack = 1e-9);

/// The on-disk spectrum cache is used only when ZETAFORGE_CACHE_DIR is set
/// and it has not been switched off here.
void set_cache_enabled(bool on);
bool cache_enabled();

enum class Tail { NONE, QHO_BOUND };

struct PartitionValue {
    double value = 0;
    double half_width = 0;  // tail bracket half-width; 0 for NONE
};

/// sum_j exp(-t (lambda_j + tau)). QHO_BOUND completes the sum with the
/// oscillator bracket beyond the last computed pair: slopes min/max for the
/// NCHO, n - g^2 -/+ sqrt(Delta^2 + eps^2) for the QRM, exact for the QHO.
/// Throws TailDominates when the half-width exceeds 10% of the value.
PartitionValue partition_from_spectrum(const SpectrumResult& spec, double t, Tail tail,
                                       double tau = 0);

/// Nested-integral series for Z_QRM(t), symmetric model only, truncated after
/// lambda_max shells. Shell samples are split in proportion to (t Delta)^(2 lambda).
/// lambda_max <= 2, or <= 12 at g = 0 where the integrand is constant.
QuadratureResult qrm_partition_series(const QrmParams& params, double t, unsigned lambda_max,
                                      const Budget& budget);

struct HeatTraceFit {
    double c_minus1 = 0;
    std::vector<double> odd_coeffs;   // t, t^3, t^5, ...
    std::vector<double> even_coeffs;  // 1, t^2, ... when requested; should be ~0
    double residual_norm = 0;
    double max_abs_residual = 0;
    std::vector<double> t_grid;
    bool trusted = false;  // residual_norm below the caller's threshold
};

struct FitOptions {
    bool include_even = false;
    std::vector<double> weights;  // empty: uniform
    double residual_threshold = 1e-6;
};

/// Least squares Z(t) ~ c/t + sum_j C_j t^(2j-1). Needs at least
/// 2*n_odd + 2 grid points in (0, 1]. Throws IllConditioned.
HeatTraceFit heat_trace_fit(const std::function<double(double)>& Z,
                            const std::vector<double>& t_grid, unsigned n_odd,
                            const FitOptions& opts = {});

/// Evenly spaced grid on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, unsigned points);

/// residue/t + sum_{k <= K} (-1)^k values[k] t^k / k!.
double quasi_partition(const std::vector<double>& values, double residue, double t);

/// Shifted heat trace Z(t, tau) = sum exp(-t (lambda + tau)) with its residue
/// at s = 1. Below t_switch the regular part Z - residue/t is taken from
/// small_t if set.
struct HeatTrace {
    std::function<double(double t, double tau)> Z;
    double residue = 0;
    std::function<double(double t, double tau)> small_t;
    double t_switch = 0;
};

/// Heat traces built from a spectrum (QHO_BOUND tail) and from closed forms.
HeatTrace heat_trace_from_spectrum(const SpectrumResult& spec);
HeatTrace qho_heat_trace();

/// (1/Gamma(s)) int_0^inf t^(s-1) Z(t, tau) dt, split at t = 1 with the
/// residue term integrated exactly. s > 1. Throws NonIntegrable when
/// Z(t, tau) does not decay.
double spectral_zeta_mellin(const HeatTrace& h, double s, double tau);

/// Polynomial in tau, g^2, Delta^2: key (i, j, l) is tau^i g^(2j) Delta^(2l).
struct RabiBernoulli {
    unsigned k = 0;
    std::map<std::array<unsigned, 3>, exact::Rat> coeffs;

    double evaluate(double tau, double g, double delta) const;
    unsigned degree_tau() const;
    bool monic_in_tau() const;
    std::string to_string() const;
};

/// k <= 2, else UnsupportedIndex.
RabiBernoulli rabi_bernoulli_exact(unsigned k);

struct Estimate {
    double value = 0;
    double error = 0;
};

/// (RB)_k(tau) from a polynomial fit of t Z(t) e^(-tau t) / 2 on t_grid with
/// the spectral Z (N = 512, tail-completed). Error from two fit degrees.
/// Throws FitUnstable.
Estimate rabi_bernoulli_numeric(unsigned k, const QrmParams& params, double tau,
                                const std::vector<double>& t_grid);

/// zeta_QRM(-k, tau) = -2 (RB)_{k+1}(tau) / (k+1) for k <= 1.
double qrm_zeta_nonpositive(unsigned k, const QrmParams& params, double tau);

struct DerivativeReport {
    double lhs = 0;  // n-th central difference in tau
    double rhs = 0;  // (-1)^n (s)_n zeta(s+n, tau)
    double abs_error = 0;
};

DerivativeReport derivative_relation_check(const std::function<double(double, double)>& zeta,
                                           double s, unsigned n, double tau, double h);

}  // namespace zetaforge::spectra
