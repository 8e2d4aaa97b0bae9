#pragma once

// Floating-point special values: Hurwitz zeta, Gauss 2F1 on the negative
// axis, the R_{k,j} integrals, zeta_Q(k) for the NCHO, and the 4-dimensional
// integrals A_{n,k}, B_{n,j} attached to R_{4,2}.

#include <complex>
#include <cstdint>
#include <string>

namespace zetaforge::specval {

/// Parameters (alpha, beta) of the NCHO; alpha, beta > 0 and alpha*beta > 1.
class NchoParams {
public:
    NchoParams(double alpha, double beta);
    double alpha() const { return a_; }
    double beta() const { return b_; }
    /// 1/sqrt(alpha*beta - 1)
    double kappa() const;
    /// (alpha+beta)/sqrt(alpha*beta*(alpha*beta-1)), the residue at s = 1.
    double residue() const;
    /// (alpha-beta)/(alpha+beta)
    double asymmetry() const;
    /// min/max{alpha,beta} * sqrt(1 - 1/(alpha*beta)), the eigenvalue slopes.
    double slope_min() const;
    double slope_max() const;

private:
    double a_, b_;
};

enum class Method { TENSOR_GAUSS, MONTE_CARLO, QMC };
const char* method_name(Method m);

struct Budget {
    std::uint64_t samples = 10'000'000;  // MC / QMC points, or nodes per axis for tensor Gauss
    std::uint64_t seed = 0;
};

struct QuadratureResult {
    double value = 0;
    double std_error = 0;
    std::uint64_t nodes = 0;
    Method method = Method::MONTE_CARLO;
    std::uint64_t seed = 0;
};

/// Hurwitz zeta by Euler-Maclaurin. Throws PoleAtOne at s = 1, InvalidArgument
/// for tau <= 0. About 1e-13 absolute for 1 < Re s <= 10, tau >= 1/4; for
/// Re s < 0 the head sum cancels and the error grows like (20+tau)^(1-Re s) eps.
std::complex<double> hurwitz_zeta_num(std::complex<double> s, double tau);
double hurwitz_zeta_num(double s, double tau);

/// 2F1(a, b; c; x) by its power series for |x| < 1; for x < -1/2 the Pfaff
/// transform is used first.
double hyp2f1(double a, double b, double c, double x);

struct SeriesValue {
    double value;
    double last_term;  // magnitude of the last included term
};

/// sum_{n <= n_max} binom(-1/2, n) J_k(n) kappa^(2n); k in 2..4, kappa < 1.
SeriesValue r_k1_series(unsigned k, double kappa, unsigned n_max);

/// The k-dimensional integral R_{k,j}(kappa) for
/// (k,j) in {(2,1), (3,1), (4,1), (4,2)}.
QuadratureResult r_kj_quadrature(unsigned k, unsigned j, double kappa, Method method,
                                 const Budget& budget);

/// zeta_Q(k) assembled from zeta(k, 1/2) and the R_{k,j} integrals.
QuadratureResult zetaQ_special(unsigned k, const NchoParams& params, Method method,
                               const Budget& budget);

/// Closed form of zeta_Q(2) through 2F1(1/4, 3/4; 1; -kappa^2).
double zetaQ2_closed(const NchoParams& params);

enum class AppendixB { A, B };

/// A_{n,k} or B_{n,j} as a 4-dimensional integral.
QuadratureResult appendixB_integral(AppendixB which, unsigned n, unsigned k_or_j, Method method,
                                    const Budget& budget);

/// Known values of A_{n,k} for n <= 1.
double appendixB_exact(AppendixB which, unsigned n, unsigned k_or_j);

/// 16 sum_{n <= n_max} binom(-1/2,n) sum_k binom(n,k) A_{n,k} t^{n+k}.
/// Throws TableExhausted for n_max > 1.
double r42_series(double t, unsigned n_max);

}  // namespace zetaforge::specval
