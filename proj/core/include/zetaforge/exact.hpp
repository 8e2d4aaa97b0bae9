#pragma once

// Exact integer/rational arithmetic and Bernoulli-family combinatorics.
//
// Rat is GMP's mpq_class. Every arithmetic result from GMP is canonical; the
// only way to build a non-canonical value is the (num, den) constructor, so
// use make_rat() for that.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace zetaforge::exact {

using BigInt = mpz_class;
using Rat = mpq_class;

/// Canonical num/den. Throws InvalidArgument on a zero denominator.
Rat make_rat(const BigInt& num, const BigInt& den);
Rat make_rat(long num, long den = 1);

/// Parse "a", "a/b" or "-a/b".
Rat parse_rat(const std::string& s);

/// Always "num/den", including integers ("3/1"); keeps the JSON schema uniform.
std::string to_string(const Rat& x);

/// GMP truncates toward zero, so this is within one ulp.
double to_double(const Rat& x);

BigInt ipow(const BigInt& base, unsigned long e);
BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

/// B_k with B_1 = -1/2 (generating function t/(e^t - 1)).
Rat bernoulli_number(unsigned k);

/// B_0..B_kmax from the shared cache.
std::vector<Rat> bernoulli_numbers(unsigned kmax);

/// B_k(x) = sum_j binom(k, j) B_j x^(k-j).
Rat bernoulli_poly(unsigned k, const Rat& x);

/// zeta(-k, tau) = -B_{k+1}(tau)/(k+1).
Rat hurwitz_zeta_nonpos(unsigned k, const Rat& tau);

/// a(a-1)...(a-k+1)/k!
Rat binom_general(const Rat& a, unsigned k);

/// (a)_n = a(a+1)...(a+n-1).
Rat pochhammer(const Rat& a, unsigned n);

/// x mod p^e in [0, p^e). Throws DenominatorNotInvertible when p | den(x).
BigInt rational_mod_prime_power(const Rat& x, unsigned long p, unsigned e);

/// Same, with an arbitrary positive modulus (den must be coprime to it).
BigInt rational_mod(const Rat& x, const BigInt& modulus);

/// v_p(x) for nonzero x; p need not be odd here.
long valuation(const BigInt& x, unsigned long p);
long valuation(const Rat& x, unsigned long p);

}  // namespace zetaforge::exact
