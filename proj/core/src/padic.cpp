#include "zetaforge/padic.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "zetaforge/errors.hpp"

namespace zetaforge::padic {

using exact::ipow;
using exact::make_rat;

namespace {

constexpr long kMinDigits = 4;

BigInt mod_pos(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt pw(unsigned long p, long e) { return ipow(BigInt(p), static_cast<unsigned long>(std::max(0L, e))); }

void require_odd_prime(unsigned long p) {
    if (p < 3 || mpz_probab_prime_p(BigInt(p).get_mpz_t(), 30) == 0)
        throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
}

}  // namespace

Padic Padic::make(unsigned long p, long v, BigInt u, long n) {
    Padic r;
    r.p_ = p;
    if (n <= 0) {
        r.abs_ = v + n;
        return r;
    }
    u = mod_pos(u, pw(p, n));
    if (u == 0) {
        r.abs_ = v + n;
        return r;
    }
    long w = 0;
    while (mpz_divisible_ui_p(u.get_mpz_t(), p)) {
        mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), p);
        ++w;
    }
    r.zero_ = false;
    r.v_ = v + w;
    r.n_ = n - w;
    r.u_ = mod_pos(u, pw(p, r.n_));
    return r;
}

Padic Padic::from_rational(const Rat& x, unsigned long p, long N) {
    require_odd_prime(p);
    if (N < 1) throw InvalidArgument("precision must be positive");
    if (x == 0) return zero(p, N);
    long v = exact::valuation(x, p);
    Rat unit = x;
    if (v > 0) unit /= Rat(pw(p, v));
    if (v < 0) unit *= Rat(pw(p, -v));
    return make(p, v, exact::rational_mod(unit, pw(p, N)), N);
}

Padic Padic::zero(unsigned long p, long abs_prec) {
    Padic r;
    r.p_ = p;
    r.abs_ = abs_prec;
    return r;
}

void Padic::check_prime(const Padic& o) const {
    if (p_ != o.p_) throw InvalidArgument("mixed primes in p-adic arithmetic");
}

std::vector<unsigned long> Padic::digits() const {
    std::vector<unsigned long> d;
    BigInt u = u_;
    for (long i = 0; i < precision(); ++i) {
        d.push_back(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p_));
    }
    return d;
}

Padic Padic::truncated(long a) const {
    if (zero_) return zero(p_, std::min(abs_, a));
    if (a >= v_ + n_) return *this;
    return make(p_, v_, u_, a - v_);
}

Padic Padic::operator-() const {
    if (zero_) return *this;
    return make(p_, v_, -u_, n_);
}

Padic operator+(const Padic& a, const Padic& b) {
    a.check_prime(b);
    long A = std::min(a.abs_precision(), b.abs_precision());
    if (a.zero_) return b.truncated(A);
    if (b.zero_) return a.truncated(A);
    long vm = std::min(a.v_, b.v_);
    if (A <= vm) return Padic::zero(a.p_, A);
    BigInt x = a.u_ * pw(a.p_, a.v_ - vm) + b.u_ * pw(a.p_, b.v_ - vm);
    Padic r = Padic::make(a.p_, vm, x, A - vm);
    if (!r.zero_ && r.n_ < kMinDigits)
        throw PrecisionExhausted("cancellation left " + std::to_string(r.n_) + " p-adic digits");
    return r;
}

Padic operator*(const Padic& a, const Padic& b) {
    a.check_prime(b);
    if (a.zero_ || b.zero_) {
        long abs = a.zero_ && b.zero_ ? a.abs_ + b.abs_ : a.zero_ ? a.abs_ + b.v_ : b.abs_ + a.v_;
        return Padic::zero(a.p_, abs);
    }
    return Padic::make(a.p_, a.v_ + b.v_, a.u_ * b.u_, std::min(a.n_, b.n_));
}

Padic Padic::inverse() const {
    if (zero_) throw DenominatorNotInvertible("p-adic zero has no inverse");
    BigInt m = pw(p_, n_), inv;
    mpz_invert(inv.get_mpz_t(), u_.get_mpz_t(), m.get_mpz_t());
    return make(p_, -v_, inv, n_);
}

Padic Padic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    if (zero_) {
        if (e == 0) throw InvalidArgument("0^0");
        return zero(p_, abs_ * e);
    }
    BigInt m = pw(p_, n_), r;
    mpz_powm_ui(r.get_mpz_t(), u_.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
    return make(p_, v_ * e, r, n_);
}

BigInt Padic::residue(long k) const {
    if (k > abs_precision())
        throw PrecisionExhausted("residue mod p^" + std::to_string(k) + " needs more digits than known");
    if (zero_ || k <= v_) return 0;
    if (v_ < 0) throw DenominatorNotInvertible("negative valuation has no residue");
    return mod_pos(u_ * pw(p_, v_), pw(p_, k));
}

bool congruent(const Padic& a, const Padic& b, long k) {
    a.check_prime(b);
    if (k > a.abs_precision() || k > b.abs_precision())
        throw PrecisionExhausted("congruence mod p^" + std::to_string(k) + " beyond known digits");
    long lo = 0;
    if (!a.zero_) lo = std::min(lo, a.v_);
    if (!b.zero_) lo = std::min(lo, b.v_);
    auto scaled = [&](const Padic& x) {
        return x.zero_ ? BigInt(0) : BigInt(x.u_ * pw(x.p_, x.v_ - lo));
    };
    BigInt m = pw(a.p_, k - lo);
    return mod_pos(scaled(a) - scaled(b), m) == 0;
}

std::string Padic::to_string() const {
    std::ostringstream os;
    auto power = [&](long e) {
        if (e == 0) return std::string();
        if (e == 1) return "*" + std::to_string(p_);
        return "*" + std::to_string(p_) + "^" + std::to_string(e);
    };
    auto d = digits();
    bool first = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) continue;
        if (!first) os << " + ";
        os << d[i] << power(v_ + static_cast<long>(i));
        first = false;
    }
    if (!first) os << " + ";
    os << "O(" << p_;
    if (abs_precision() != 1) os << "^" << abs_precision();
    os << ")";
    return os.str();
}

PadicContext::PadicContext(unsigned long p, long N) : p_(p), n_(N) {
    require_odd_prime(p);
    if (N < kMinDigits) throw InvalidArgument("context precision must be at least 4");
    BigInt m = pw(p, N);
    table_.resize(p);
    for (unsigned long r = 1; r < p; ++r) {
        BigInt x = r, y;
        for (;;) {
            mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), p, m.get_mpz_t());
            if (y == x) break;
            x = y;
        }
        table_[r] = x;
    }
}

Padic teichmuller(const PadicContext& ctx, const Padic& u) {
    if (u.prime() != ctx.prime()) throw InvalidArgument("prime mismatch");
    if (u.is_zero() || u.valuation() != 0) throw NotAUnit("Teichmuller character needs a unit");
    unsigned long r = mpz_fdiv_ui(u.unit().get_mpz_t(), ctx.prime());
    return Padic::from_rational(Rat(ctx.lift(r)), ctx.prime(), ctx.precision());
}

Padic omega_v(const PadicContext& ctx, const Padic& tau) {
    if (tau.is_zero()) throw NotAUnit("omega_v of zero");
    unsigned long r = mpz_fdiv_ui(tau.unit().get_mpz_t(), ctx.prime());
    Rat scale = tau.valuation() >= 0 ? Rat(pw(ctx.prime(), tau.valuation()))
                                     : Rat(make_rat(BigInt(1), pw(ctx.prime(), -tau.valuation())));
    return Padic::from_rational(Rat(ctx.lift(r)) * scale, ctx.prime(), ctx.precision());
}

Padic angle_bracket(const PadicContext& ctx, const Padic& tau) {
    if (tau.is_zero()) throw NotAUnit("angle bracket of zero");
    return tau / omega_v(ctx, tau);
}

VolkenbornResult volkenborn_poly(const std::vector<Rat>& coeffs, const PadicContext& ctx, unsigned r_max) {
    if (r_max < 2) throw InvalidArgument("volkenborn_poly needs r_max >= 2");
    const unsigned long p = ctx.prime();
    BigInt M = pw(p, r_max);
    if (M > 4'000'000) throw InvalidArgument("p^r_max too large for direct summation");

    BigInt D = 1;
    for (const Rat& c : coeffs) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<BigInt> F;
    for (const Rat& c : coeffs) F.push_back(BigInt(c.get_num() * (D / c.get_den())));

    std::vector<Rat> exact_levels;
    BigInt sum = 0, val, next = p;
    const unsigned long top = M.get_ui();
    for (unsigned long k = 0; k < top; ++k) {
        val = 0;
        for (auto it = F.rbegin(); it != F.rend(); ++it) val = val * k + *it;
        sum += val;
        if (k + 1 == next) {
            exact_levels.push_back(make_rat(sum, D * next));
            next *= p;
        }
    }

    VolkenbornResult res;
    for (const Rat& x : exact_levels) res.approximants.push_back(ctx.from_rational(x));
    for (std::size_t i = 0; i + 1 < exact_levels.size(); ++i) {
        Rat d = exact_levels[i + 1] - exact_levels[i];
        res.diff_valuations.push_back(d == 0 ? LONG_MAX : exact::valuation(d, p));
    }
    return res;
}

namespace {

// Shared series: <tau>^(1-s)/(s-1) sum_{k<=K} binom(1-s,k) b(k) tau^-k, with
// the tail certified from v(term_k) >= k*rate - 1 when the sum is infinite.
template <class Coef>
PadicZetaResult hurwitz_series(long s, const Rat& tau, unsigned K, long rate, Coef b, const PadicContext& ctx) {
    const unsigned long p = ctx.prime();
    const long N = ctx.precision();
    const Rat a = 1 - s;
    const bool finite = s <= 0 && K >= static_cast<unsigned long>(1 - s);
    const unsigned last = finite ? static_cast<unsigned>(1 - s) : K;

    Padic S = Padic::zero(p, N);
    Rat tau_inv_k = 1, tau_inv = 1 / tau;
    for (unsigned k = 0; k <= last; ++k) {
        Rat term = exact::binom_general(a, k) * b(k) * tau_inv_k;
        if (term != 0) S = S + ctx.from_rational(term);
        tau_inv_k *= tau_inv;
    }
    if (!finite) S = S.truncated((static_cast<long>(K) + 1) * rate - 1);

    Padic tp = ctx.from_rational(tau);
    Padic val = S * angle_bracket(ctx, tp).pow(1 - s) * ctx.from_rational(make_rat(1, s - 1));
    return {val, val.abs_precision(), last + 1};
}

}  // namespace

PadicZetaResult padic_hurwitz_zeta(long s, const Rat& tau, unsigned K, const PadicContext& ctx) {
    if (s == 1) throw SAtOne("p-adic Hurwitz zeta has a pole at s = 1");
    if (tau == 0 || exact::valuation(tau, ctx.prime()) >= 0)
        throw TauInZp("tau must satisfy |tau|_p > 1");
    const long rate = -exact::valuation(tau, ctx.prime());
    auto B = exact::bernoulli_numbers(K + 2);
    return hurwitz_series(s, tau, K, rate, [&](unsigned k) { return B[k]; }, ctx);
}

PadicZetaResult padic_hurwitz_shifted(long s, const Rat& tau, const Rat& x, unsigned K, const PadicContext& ctx) {
    if (x == 0) return padic_hurwitz_zeta(s, tau, K, ctx);
    if (s == 1) throw SAtOne("p-adic Hurwitz zeta has a pole at s = 1");
    const unsigned long p = ctx.prime();
    if (tau == 0 || exact::valuation(tau, p) >= 0) throw TauInZp("tau must satisfy |tau|_p > 1");
    const long vt = exact::valuation(tau, p), vx = exact::valuation(x, p);
    if (vt >= vx) throw DomainViolated("shifted series needs tau/x outside Z_p");
    const long rate = -vt + std::min(0L, vx);
    return hurwitz_series(s, tau, K, rate, [&](unsigned k) { return exact::bernoulli_poly(k, x); }, ctx);
}

PadicDivergenceReport padic_divergence_report(unsigned n, const Rat& tau, unsigned K, const PadicContext& ctx) {
    if (n < 2) throw InvalidArgument("divergence report needs n >= 2");
    const unsigned long p = ctx.prime();
    if (tau == 0 || exact::valuation(tau, p) >= 0) throw TauInZp("tau must satisfy |tau|_p > 1");

    PadicDivergenceReport rep{n, tau, {}, -1, Padic::zero(p, ctx.precision()), Padic::zero(p, ctx.precision())};
    auto B = exact::bernoulli_numbers(K + 1);
    const Rat tau_inv = 1 / tau;
    Rat tpow = 1;
    for (unsigned i = 0; i + 1 < n; ++i) tpow *= tau_inv;
    const BigInt nm1_fact = exact::factorial(n - 1);

    Padic S = Padic::zero(p, ctx.precision());
    for (unsigned k = 0; k <= K; ++k) {
        Rat term = B[k] * make_rat(exact::factorial(k + n - 2), exact::factorial(k) * nm1_fact) * tpow;
        if (k % 2 == 1) term = -term;
        if (term != 0) S = S + ctx.from_rational(term);
        rep.rows.push_back({k, term == 0 ? LONG_MAX : exact::valuation(term, p), S});
        tpow *= tau_inv;
    }

    const long mod = 4;
    long stable = static_cast<long>(K);
    while (stable > 0 && congruent(rep.rows[stable - 1].partial_sum, rep.rows.back().partial_sum, mod)) --stable;
    rep.stable_from_mod_p4 = (stable == static_cast<long>(K) && K > 0) ? -1 : stable;

    rep.normalization = omega_v(ctx, ctx.from_rational(tau)).pow(1 - static_cast<long>(n));
    rep.zeta_p = padic_hurwitz_zeta(n, tau, K, ctx).value;
    return rep;
}

}  // namespace zetaforge::padic
