#pragma once

// Formal power series in 1/tau for zeta(n, tau) and its spectral analogues,
// and their Borel resummation.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "zetaforge/spectra.hpp"

namespace zetaforge::resum {

/// (j+n-2)!/(n-1)! * tau^-(j+n-1); n >= 2, j >= 0, tau > 0.
double a_nj_closed(unsigned n, unsigned j, double tau);

/// The same quantity as n-1 nested half-line integrals of w^(j-1) e^(-tau w).
/// n in 2..4, j >= 1.
double a_nj_nested(unsigned n, unsigned j, double tau);

struct TraceRow {
    unsigned k;
    double term;
    double partial_sum;
};

struct DivergenceTrace {
    std::string label;
    std::vector<TraceRow> rows;
    bool conjecture_support = false;  // built on fitted, not proven, coefficients

    /// Row with the smallest nonzero |term| (optimal truncation point).
    std::size_t smallest_term() const;
};

/// sum_k (-1)^k B_k/k! (k+n-2)!/(n-1)! tau^-(k+n-1), rows k = 0..K.
DivergenceTrace fps_hurwitz(unsigned n, double tau, unsigned K);

/// 2 sum_k (-1)^k (RB)_k/k! (k+n-2)!/(n-1)! tau^-(k+n-1) with (RB)_k taken at
/// tau = 0, rows k = 0..rb_values.size()-1.
DivergenceTrace fps_qrm(unsigned n, double tau, const std::vector<double>& rb_values);

/// c/((n-1) tau^(n-1)) + sum_m C_m (2m+n-2)!/(n-1)! tau^-(2m+n-1) from a heat
/// trace fit; row k = 0 is the residue term, row k = 2m carries C_m.
DivergenceTrace fps_ncho(unsigned n, double tau, const spectra::HeatTraceFit& fit);

enum class BorelBranch { AUTO, EXPONENTIAL_SUM, BERNOULLI_SERIES };

/// (1/(n-1)!) d^(n-2)/dt^(n-2) [t^(n-1) / (1 - e^-t)]. AUTO switches from the
/// Bernoulli series to the exponential sum at t = 1/2.
double borel_transform_hurwitz(unsigned n, double t, BorelBranch branch = BorelBranch::AUTO);

struct BorelReport {
    double z = 0;
    double borel_sum = 0;
    double quadrature_error = 0;
    double reference_value = 0;
    bool agreement = false;
};

/// (1/z) int_0^inf e^(-t/z) B(t) dt against z^(1-n) zeta(n, 1/z).
/// agreement: |sum - reference| <= max(tol, 3 quadrature_error).
BorelReport borel_sum_hurwitz(unsigned n, double z, double tol = 1e-8);

/// Borel transform of the order-s series: Bernoulli series for t <= 3, the
/// Euler-type integral beyond. 1 < Re s < 2.
std::complex<double> borel_transform_fractional(std::complex<double> s, double t);

struct ComplexBorelReport {
    std::complex<double> s;
    double z = 0;
    std::complex<double> x_route;        // Euler-type x-integral of zeta(2, 1/(xz))
    std::complex<double> laplace_route;  // Laplace integral of the fractional transform
    double quadrature_error = 0;
    double route_difference = 0;
    std::complex<double> hurwitz_value;  // z^(1-s) zeta(s, 1/z), diagnostic only
    bool agreement = false;              // the two routes agree
};

/// Throws OutOfStrip unless 1 < Re s < 2.
ComplexBorelReport borel_sum_complex_s(std::complex<double> s, double z, double tol = 1e-6);

}  // namespace zetaforge::resum
