#pragma once

// Fixed-precision p-adic numbers for odd p, the Teichmuller character, the
// Volkenborn integral of polynomials and the p-adic Hurwitz zeta function.
//
// A nonzero Padic is p^v * u with u a unit known mod p^N (relative precision
// N, absolute precision v + N). Zero carries only an absolute precision.
// Sums keep the smaller absolute precision, products the smaller relative
// precision; cancellation therefore shows up as lost digits, and a nonzero
// result with fewer than 4 digits left throws PrecisionExhausted.

#include <string>
#include <vector>

#include "zetaforge/exact.hpp"

namespace zetaforge::padic {

using exact::BigInt;
using exact::Rat;

class Padic {
public:
    /// x as an element of Q_p with N digits of relative precision.
    static Padic from_rational(const Rat& x, unsigned long p, long N);
    /// Zero known mod p^abs_prec.
    static Padic zero(unsigned long p, long abs_prec);

    unsigned long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    /// v_p; for zero this is the absolute precision.
    long valuation() const { return zero_ ? abs_ : v_; }
    /// Relative precision (digits of the unit); 0 for zero.
    long precision() const { return zero_ ? 0 : n_; }
    long abs_precision() const { return zero_ ? abs_ : v_ + n_; }
    /// The unit part mod p^precision().
    const BigInt& unit() const { return u_; }
    /// Base-p digits of the unit, least significant first.
    std::vector<unsigned long> digits() const;

    /// Caps the absolute precision at a.
    Padic truncated(long a) const;

    Padic operator-() const;
    friend Padic operator+(const Padic& a, const Padic& b);
    friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }
    friend Padic operator*(const Padic& a, const Padic& b);
    friend Padic operator/(const Padic& a, const Padic& b) { return a * b.inverse(); }
    Padic inverse() const;
    Padic pow(long e) const;

    /// x mod p^k as an integer in [0, p^k); needs v >= 0 (or zero) and k <= abs_precision().
    BigInt residue(long k) const;
    /// a == b mod p^k, known at that precision.
    friend bool congruent(const Padic& a, const Padic& b, long k);

    /// "3 + 4*5 + 2*5^2 + O(5^6)"
    std::string to_string() const;

private:
    Padic() = default;
    static Padic make(unsigned long p, long v, BigInt u, long n);
    void check_prime(const Padic& o) const;

    unsigned long p_ = 0;
    bool zero_ = true;
    long v_ = 0;
    long n_ = 0;
    long abs_ = 0;
    BigInt u_ = 0;
};

/// Immutable after construction: the Teichmuller lifts of 1..p-1 mod p^N.
class PadicContext {
public:
    PadicContext(unsigned long p, long N);
    unsigned long prime() const { return p_; }
    long precision() const { return n_; }
    Padic from_rational(const Rat& x) const { return Padic::from_rational(x, p_, n_); }
    /// The lift of residue r in 1..p-1.
    const BigInt& lift(unsigned long r) const { return table_.at(r); }

private:
    unsigned long p_;
    long n_;
    std::vector<BigInt> table_;
};

/// The (p-1)-st root of unity congruent to u mod p. Throws NotAUnit.
Padic teichmuller(const PadicContext& ctx, const Padic& u);

/// p^v * omega(unit part), so that tau = omega_v(tau) * <tau>.
Padic omega_v(const PadicContext& ctx, const Padic& tau);

/// <tau> = tau / omega_v(tau), a principal unit; v(tau) may be nonzero.
/// Throws NotAUnit for zero.
Padic angle_bracket(const PadicContext& ctx, const Padic& tau);

struct VolkenbornResult {
    std::vector<Padic> approximants;     // level r = 1..r_max
    std::vector<long> diff_valuations;   // v(I_{r+1} - I_r)
};

/// (1/p^r) sum_{k < p^r} f(k) for f = sum coeffs[i] x^i, r = 1..r_max.
VolkenbornResult volkenborn_poly(const std::vector<Rat>& coeffs, const PadicContext& ctx,
                                 unsigned r_max);

struct PadicZetaResult {
    Padic value;
    long certified_precision;  // absolute
    unsigned terms;
};

/// <tau>^(1-s)/(s-1) sum_{k <= K} binom(1-s,k) B_k tau^-k for integer s != 1
/// and v(tau) < 0. Throws SAtOne, TauInZp.
PadicZetaResult padic_hurwitz_zeta(long s, const Rat& tau, unsigned K, const PadicContext& ctx);

/// <tau>^(1-s)/(s-1) sum_k binom(1-s,k) B_k(x) tau^-k; needs v(tau) < 0 and
/// v(tau) < v(x). Throws DomainViolated.
PadicZetaResult padic_hurwitz_shifted(long s, const Rat& tau, const Rat& x, unsigned K,
                                      const PadicContext& ctx);

struct DivergenceRow {
    unsigned k;
    long term_valuation;  // v_p of the k-th term; LONG_MAX for a zero term
    Padic partial_sum;
};

struct PadicDivergenceReport {
    unsigned n;
    Rat tau;
    std::vector<DivergenceRow> rows;
    /// Smallest k after which partial sums no longer change mod p^4; -1 if
    /// they still change at the last row.
    long stable_from_mod_p4 = -1;
    /// omega_v(tau)^(1-n): series sum = factor * zeta_p(n, tau).
    Padic normalization;
    Padic zeta_p;
};

/// Term valuations and partial sums of sum_k (-1)^k B_k/k! (k+n-2)!/(n-1)!
/// tau^-(k+n-1) in Q_p. Throws TauInZp.
PadicDivergenceReport padic_divergence_report(unsigned n, const Rat& tau, unsigned K,
                                              const PadicContext& ctx);

}  // namespace zetaforge::padic
