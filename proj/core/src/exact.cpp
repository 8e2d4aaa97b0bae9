#include "zetaforge/exact.hpp"

#include "zetaforge/errors.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace zetaforge::exact {

Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat make_rat(long num, long den) { return make_rat(BigInt(num), BigInt(den)); }

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        return make_rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("not a rational: '" + s + "'");
    }
}

std::string to_string(const Rat& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

double to_double(const Rat& x) { return x.get_d(); }

BigInt ipow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace {

// Akiyama-Tanigawa; produces B_1 = +1/2, flipped afterwards.
std::vector<Rat> akiyama_tanigawa(std::size_t count) {
    std::vector<Rat> out(count);
    std::vector<Rat> a(count);
    for (std::size_t m = 0; m < count; ++m) {
        a[m] = Rat(1, m + 1);
        for (std::size_t j = m; j >= 1; --j) {
            a[j - 1] = Rat(static_cast<unsigned long>(j)) * (a[j - 1] - a[j]);
        }
        out[m] = a[0];
    }
    if (count > 1) out[1] = Rat(-1, 2);
    return out;
}

class BernoulliCache {
public:
    std::shared_ptr<const std::vector<Rat>> snapshot(unsigned kmax) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!table_ || table_->size() <= kmax) {
            std::size_t n = std::max<std::size_t>(
                {std::size_t(kmax) + 1, 64, table_ ? 2 * table_->size() : 0});
            table_ = std::make_shared<const std::vector<Rat>>(akiyama_tanigawa(n));
        }
        return table_;
    }

private:
    std::mutex mu_;
    std::shared_ptr<const std::vector<Rat>> table_;
};

BernoulliCache& cache() {
    static BernoulliCache c;
    return c;
}

}  // namespace

Rat bernoulli_number(unsigned k) { return (*cache().snapshot(k))[k]; }

std::vector<Rat> bernoulli_numbers(unsigned kmax) {
    auto snap = cache().snapshot(kmax);
    return std::vector<Rat>(snap->begin(), snap->begin() + kmax + 1);
}

Rat bernoulli_poly(unsigned k, const Rat& x) {
    auto snap = cache().snapshot(k);
    // Horner in x over the coefficients binom(k, j) B_j of x^(k-j).
    Rat acc = 0;
    for (unsigned j = 0; j <= k; ++j) {
        acc = acc * x + Rat(binomial(k, j)) * (*snap)[j];
    }
    return acc;
}

Rat hurwitz_zeta_nonpos(unsigned k, const Rat& tau) {
    return -bernoulli_poly(k + 1, tau) / Rat(static_cast<unsigned long>(k + 1));
}

Rat binom_general(const Rat& a, unsigned k) {
    Rat r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (a - Rat(static_cast<unsigned long>(i))) / Rat(static_cast<unsigned long>(i + 1));
    }
    return r;
}

Rat pochhammer(const Rat& a, unsigned n) {
    Rat r = 1;
    for (unsigned i = 0; i < n; ++i) r *= a + Rat(static_cast<unsigned long>(i));
    return r;
}

BigInt rational_mod(const Rat& x, const BigInt& modulus) {
    if (modulus <= 0) throw InvalidArgument("modulus must be positive");
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
        if (modulus == 1) return 0;
        throw DenominatorNotInvertible("denominator " + x.get_den().get_str() +
                                       " not invertible mod " + modulus.get_str());
    }
    BigInt r = (x.get_num() * inv) % modulus;
    if (r < 0) r += modulus;
    return r;
}

BigInt rational_mod_prime_power(const Rat& x, unsigned long p, unsigned e) {
    if (e == 0) throw InvalidArgument("exponent must be positive");
    return rational_mod(x, ipow(BigInt(p), e));
}

long valuation(const BigInt& x, unsigned long p) {
    if (x == 0) throw InvalidArgument("valuation of zero");
    BigInt pp(p);
    BigInt rest;
    return static_cast<long>(
        mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

long valuation(const Rat& x, unsigned long p) {
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

}  // namespace zetaforge::exact
