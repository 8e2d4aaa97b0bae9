#pragma once

// Truncated power series over Q, second-order differential operators with
// polynomial coefficients, and q-expansions on a 1/24 exponent grid.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zetaforge/exact.hpp"

namespace zetaforge::series {

using exact::BigInt;
using exact::Rat;

/// c_0 + c_1 z + ... + c_N z^N, known exactly through z^N.
class PowerSeries {
public:
    PowerSeries() : c_(1) {}
    explicit PowerSeries(std::vector<Rat> coeffs);
    static PowerSeries zero(int order);
    static PowerSeries constant(const Rat& c, int order);
    /// z as a series of the given order.
    static PowerSeries variable(int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    Rat& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<Rat>& coeffs() const { return c_; }

    PowerSeries truncated(int order) const;
    /// Order drops by one.
    PowerSeries derivative() const;
    bool is_zero() const;
    /// Lowest index with a nonzero coefficient, if any.
    std::optional<int> first_nonzero() const;

    PowerSeries operator-() const;
    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const Rat& s, const PowerSeries& a);
    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

    /// 1/f; requires f[0] != 0.
    PowerSeries inverse() const;

private:
    std::vector<Rat> c_;
};

/// outer(inner(z)) for power series; inner[0] must vanish.
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner);

/// Polynomials in z stored low degree first.
using Poly = std::vector<Rat>;

/// c2(z) d^2/dz^2 + c1(z) d/dz + c0(z).
struct LinearDiffOp {
    Poly c2, c1, c0;

    /// Image of f, exact through order f.order() - 2.
    PowerSeries apply(const PowerSeries& f) const;
};

/// z(1-z)^2 D^2 + (1-3z)(1-z) D + z - 3/4
const LinearDiffOp& ladder_D();
/// T(T^2-1) D^2 + (3T^2-1) D + T
const LinearDiffOp& picard_fuchs_L();

PowerSeries apply_ladder_D(const PowerSeries& f);
PowerSeries apply_picard_fuchs_L(const PowerSeries& f);

/// (a)_n (b)_n / ((c)_n n!) for n <= order.
PowerSeries hypergeom_2f1_series(const Rat& a, const Rat& b, const Rat& c, int order);

/// q-series with exponents in (1/24)Z. Internally exponents are stored in
/// grid units (multiples of 1/24). Coefficients above max_units() are
/// unknown, not zero.
class QSeries {
public:
    static constexpr long kGrid = 24;

    explicit QSeries(long max_units) : max_(max_units) {}
    static QSeries one(long max_units);
    static QSeries monomial(const Rat& c, long exp_units, long max_units);

    long max_units() const { return max_; }
    Rat max_exponent() const { return exact::make_rat(max_, kGrid); }
    const std::map<long, Rat>& terms() const { return c_; }

    void set(long exp_units, const Rat& c);
    Rat coeff(long exp_units) const;
    std::optional<long> leading_units() const;

    QSeries truncated(long max_units) const;
    QSeries operator-() const;
    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const Rat& s, const QSeries& a);

    /// Throws NonInvertibleLeadingTerm for the zero series.
    QSeries inverse() const;
    QSeries pow(long e) const;
    /// q -> q^k.
    QSeries substitute(long k) const;
    /// tau -> 2 tau + 1. Defined when every exponent is half-integral, where it
    /// sends c q^e to (-1)^(2e) c q^(2e).
    QSeries twist() const;

private:
    long max_;
    std::map<long, Rat> c_;
};

/// eta(m tau)^e, exact through max_units.
QSeries eta_qseries(long m, long e, long max_units);

/// Euler product prod_{n>=1} (1 - q^n) without the q^(1/24) prefactor.
QSeries euler_product(long max_units);

/// theta_j with the q^(n^2/2) convention, j in {2, 3, 4}.
QSeries theta_qseries(int j, long max_units);

/// eta(tau)^8 eta(4 tau)^16 / eta(2 tau)^24.
QSeries hauptmodul_z(long max_units);
/// -theta_2^4 / theta_4^4.
QSeries hauptmodul_theta_form(long max_units);

/// outer(inner(q)); inner must have a strictly positive leading exponent.
QSeries compose_series(const PowerSeries& outer, const QSeries& inner);

struct W2Variant {
    std::string name;
    std::string description;
    bool matched = false;
    std::optional<Rat> first_mismatch;
};

struct W2Report {
    bool matched = false;  // at least one variant matched
    std::optional<Rat> first_mismatch;  // for the first variant tried
    std::string convention_used;  // empty when nothing matched
    std::vector<W2Variant> variants;
    bool pfaff_form_ok = false;
};

/// Compares sum tJ_2(n) z^n against eta(2t)^22/(eta(t)^12 eta(4t)^8) for each
/// candidate convention of z.
W2Report verify_w2_identity(long max_exponent);

/// (1/(1-z)) 2F1(1/2,1/2;1;z/(z-1)) == sum tJ_2(n) z^n through `order`.
bool verify_pfaff_form(int order);

}  // namespace zetaforge::series
