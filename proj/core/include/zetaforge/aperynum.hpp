#pragma once

// Apery numbers for zeta(2) and zeta(3), the Apery-like numbers J_k(n) of the
// non-commutative harmonic oscillator, and congruence checks for all of them.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zetaforge/exact.hpp"

namespace zetaforge::aperynum {

using exact::BigInt;
using exact::Rat;

/// HZk stands for zeta(k, 1/2).
enum class Basis { ONE, HZ2, HZ3, HZ4 };

const char* basis_name(Basis b);

/// Q-linear combination of 1, zeta(2,1/2), zeta(3,1/2), zeta(4,1/2).
class ZetaCombo {
public:
    ZetaCombo() = default;
    ZetaCombo(Basis b, const Rat& c) { add(b, c); }

    void add(Basis b, const Rat& c);
    Rat get(Basis b) const;
    const std::map<Basis, Rat>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    ZetaCombo& operator+=(const ZetaCombo& o);
    friend ZetaCombo operator+(ZetaCombo a, const ZetaCombo& b) { return a += b; }
    friend ZetaCombo operator-(ZetaCombo a, const ZetaCombo& b) { return a += Rat(-1) * b; }
    friend ZetaCombo operator*(const Rat& s, const ZetaCombo& a);
    friend bool operator==(const ZetaCombo& a, const ZetaCombo& b) { return a.c_ == b.c_; }

    /// Numeric value given zeta(k, 1/2) for k = 2, 3, 4.
    double evaluate(double hz2, double hz3, double hz4) const;
    std::string to_string() const;

private:
    std::map<Basis, Rat> c_;
};

BigInt apery2(unsigned n);
Rat apery2_b(unsigned n);
BigInt apery2_closed(unsigned n);
BigInt apery3(unsigned n);
Rat apery3_b(unsigned n);
BigInt apery3_closed(unsigned n);

/// J_k(n) for k in 0..4 from the closed binomial sums; J_0 = 0.
ZetaCombo aperylike_J(unsigned k, unsigned n);

/// Normalized tJ_k(n), k in 0..8. tJ_0 = 0, tJ_1 = J_1.
Rat aperylike_tJ(unsigned k, unsigned n);

/// Largest k accepted by aperylike_tJ.
constexpr unsigned kMaxTJ = 8;

struct CongruenceReport {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> params;
    BigInt lhs_residue;
    BigInt rhs_residue;
    BigInt modulus;
    bool ok = false;
};

/// kind in {"A2", "A3", "TJ2"}: A(n) = prod A(n_j) mod p over base-p digits.
CongruenceReport congruence_pary_product(const std::string& kind, unsigned long p, unsigned long n);

/// A(m p^r - 1) = A(m p^(r-1) - 1) mod p^(3r); for p = 3 the modulus is p^r.
CongruenceReport supercongruence_check(const std::string& kind, unsigned long p, unsigned long m,
                                       unsigned r);

/// p^(2sn) tJ_{2s+2}(m p^n) = p^(2s(n-1)) tJ_{2s+2}(m p^(n-1)) mod p^n.
CongruenceReport tj_supercongruence_check(unsigned s, unsigned long p, unsigned long m, unsigned n);

/// sum_{n<p} tJ_2(n)^2 = (-1)^((p-1)/2) mod p^3.
CongruenceReport los_square_sum_check(unsigned long p);

/// Three-term congruence mod p^r with the eta-product coefficients.
CongruenceReport asd_congruence_check(const std::string& kind, unsigned long p, unsigned long m,
                                      unsigned r);

/// Coefficient of q^n in eta(4t)^6.
BigInt lambda_coefficient(unsigned long n);
/// Coefficient of q^n in eta(2t)^4 eta(4t)^4.
BigInt gamma_coefficient(unsigned long n);

}  // namespace zetaforge::aperynum
