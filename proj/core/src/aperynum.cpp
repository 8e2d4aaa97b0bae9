#include "zetaforge/aperynum.hpp"

#include <mutex>
#include <sstream>

#include "zetaforge/errors.hpp"
#include "zetaforge/series.hpp"

namespace zetaforge::aperynum {

using exact::binomial;
using exact::make_rat;

const char* basis_name(Basis b) {
    switch (b) {
        case Basis::ONE: return "1";
        case Basis::HZ2: return "zeta(2,1/2)";
        case Basis::HZ3: return "zeta(3,1/2)";
        case Basis::HZ4: return "zeta(4,1/2)";
    }
    return "?";
}

void ZetaCombo::add(Basis b, const Rat& c) {
    Rat v = get(b) + c;
    if (sgn(v) == 0)
        c_.erase(b);
    else
        c_[b] = v;
}

Rat ZetaCombo::get(Basis b) const {
    auto it = c_.find(b);
    return it == c_.end() ? Rat(0) : it->second;
}

ZetaCombo& ZetaCombo::operator+=(const ZetaCombo& o) {
    for (const auto& [b, c] : o.c_) add(b, c);
    return *this;
}

ZetaCombo operator*(const Rat& s, const ZetaCombo& a) {
    ZetaCombo r;
    for (const auto& [b, c] : a.c_) r.add(b, s * c);
    return r;
}

double ZetaCombo::evaluate(double hz2, double hz3, double hz4) const {
    double v = 0;
    for (const auto& [b, c] : c_) {
        double x = exact::to_double(c);
        switch (b) {
            case Basis::ONE: v += x; break;
            case Basis::HZ2: v += x * hz2; break;
            case Basis::HZ3: v += x * hz3; break;
            case Basis::HZ4: v += x * hz4; break;
        }
    }
    return v;
}

std::string ZetaCombo::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, c] : c_) {
        if (!first) os << " + ";
        first = false;
        os << exact::to_string(c);
        if (b != Basis::ONE) os << "*" << basis_name(b);
    }
    return os.str();
}

// --------------------------------------------------------- Apery sequences

namespace {

// Prefix table grown on demand under a lock; values are copied out.
template <class T, class Step>
class Table {
public:
    Table(std::vector<T> init, Step step) : v_(std::move(init)), step_(step) {}
    T at(std::size_t n) {
        std::lock_guard<std::mutex> lock(m_);
        while (v_.size() <= n) v_.push_back(step_(v_));
        return v_[n];
    }

private:
    std::mutex m_;
    std::vector<T> v_;
    Step step_;
};

template <class T, class Step>
Table<T, Step> make_table(std::vector<T> init, Step step) {
    return Table<T, Step>(std::move(init), step);
}

// n^2 u(n) = (11n^2 - 11n + 3) u(n-1) + (n-1)^2 u(n-2)
template <class T>
T step2(const std::vector<T>& u) {
    long n = static_cast<long>(u.size());
    T num = T(11 * n * n - 11 * n + 3) * u[n - 1] + T((n - 1) * (n - 1)) * u[n - 2];
    return num / T(n * n);
}

// n^3 u(n) = (34n^3 - 51n^2 + 27n - 5) u(n-1) - (n-1)^3 u(n-2)
template <class T>
T step3(const std::vector<T>& u) {
    long n = static_cast<long>(u.size());
    T num = T(34 * n * n * n - 51 * n * n + 27 * n - 5) * u[n - 1] -
            T((n - 1) * (n - 1) * (n - 1)) * u[n - 2];
    return num / T(n * n * n);
}

BigInt checked_int_step2(const std::vector<BigInt>& u) {
    long n = static_cast<long>(u.size());
    BigInt num = BigInt(11 * n * n - 11 * n + 3) * u[n - 1] + BigInt((n - 1) * (n - 1)) * u[n - 2];
    if (num % (n * n) != 0) throw InvalidArgument("A2 recurrence left Z");
    return num / (n * n);
}

BigInt checked_int_step3(const std::vector<BigInt>& u) {
    long n = static_cast<long>(u.size());
    BigInt num = BigInt(34 * n * n * n - 51 * n * n + 27 * n - 5) * u[n - 1] -
                 BigInt((n - 1) * (n - 1) * (n - 1)) * u[n - 2];
    if (num % (n * n * n) != 0) throw InvalidArgument("A3 recurrence left Z");
    return num / (n * n * n);
}

auto& a2_table() {
    static auto t = make_table<BigInt>({1, 3}, checked_int_step2);
    return t;
}
auto& a3_table() {
    static auto t = make_table<BigInt>({1, 5}, checked_int_step3);
    return t;
}
auto& b2_table() {
    static auto t = make_table<Rat>({0, 5}, step2<Rat>);
    return t;
}
auto& b3_table() {
    static auto t = make_table<Rat>({0, 6}, step3<Rat>);
    return t;
}

}  // namespace

BigInt apery2(unsigned n) { return a2_table().at(n); }
Rat apery2_b(unsigned n) { return b2_table().at(n); }
BigInt apery3(unsigned n) { return a3_table().at(n); }
Rat apery3_b(unsigned n) { return b3_table().at(n); }

BigInt apery2_closed(unsigned n) {
    BigInt s = 0;
    for (unsigned k = 0; k <= n; ++k) {
        BigInt b = binomial(n, k);
        s += b * b * binomial(n + k, k);
    }
    return s;
}

BigInt apery3_closed(unsigned n) {
    BigInt s = 0;
    for (unsigned k = 0; k <= n; ++k) {
        BigInt b = binomial(n, k) * binomial(n + k, k);
        s += b * b;
    }
    return s;
}

// ------------------------------------------------------ Apery-like numbers

namespace {

// binom(-1/2, j)^2 and h_j = j + 1/2, tabulated together with the nested
// harmonic-type sums e_even(s, k), e_odd(s, k) that define Z^even, Z^odd.
struct NestedSums {
    std::mutex m;
    std::vector<Rat> bh2;  // binom(-1/2, j)^2
    std::vector<std::vector<Rat>> even;  // even[s][k], s = 0..3
    std::vector<std::vector<Rat>> odd;   // odd[s][k], s = 1..3 (odd[0] unused)

    NestedSums() : even(4), odd(4) {}

    void grow(std::size_t kmax) {
        while (bh2.size() <= kmax) {
            std::size_t j = bh2.size();
            Rat b = exact::binom_general(make_rat(-1, 2), static_cast<unsigned>(j));
            bh2.push_back(b * b);
        }
        for (std::size_t s = 0; s < 4; ++s) {
            auto& e = even[s];
            if (e.empty()) e.push_back(s == 0 ? Rat(1) : Rat(0));
            while (e.size() <= kmax) {
                std::size_t k = e.size() - 1;
                if (s == 0) {
                    e.push_back(1);
                    continue;
                }
                Rat h = make_rat(2 * static_cast<long>(k) + 1, 2);
                e.push_back(e[k] + even[s - 1][k] / (h * h));
            }
        }
        for (std::size_t s = 1; s < 4; ++s) {
            auto& o = odd[s];
            if (o.empty()) o.push_back(0);
            while (o.size() <= kmax) {
                std::size_t k = o.size() - 1;
                Rat h = make_rat(2 * static_cast<long>(k) + 1, 2);
                Rat term = (s == 1) ? Rat(1 / (h * h * h * bh2[k])) : Rat(odd[s - 1][k] / (h * h));
                o.push_back(o[k] + term);
            }
        }
    }
};

NestedSums& nested() {
    static NestedSums ns;
    return ns;
}

Rat j1(unsigned n) {
    // 2^n n! / (2n+1)!!
    Rat r = 1;
    for (unsigned i = 0; i < n; ++i) r *= make_rat(2 * (i + 1), 2 * i + 3);
    return r;
}

}  // namespace

Rat aperylike_tJ(unsigned k, unsigned n) {
    if (k > kMaxTJ) throw UnsupportedIndex("tJ_k implemented for k <= " + std::to_string(kMaxTJ));
    if (k == 0) return 0;
    if (k == 1) return j1(n);
    auto& ns = nested();
    std::vector<Rat> z(n + 1), bh2(n + 1);
    {
        std::lock_guard<std::mutex> lock(ns.m);
        ns.grow(n);
        for (unsigned j = 0; j <= n; ++j) {
            bh2[j] = ns.bh2[j];
            if (k % 2 == 0) {
                unsigned s = (k - 2) / 2;
                z[j] = (s % 2 == 0) ? ns.even[s][j] : Rat(-ns.even[s][j]);
            } else {
                unsigned s = (k - 1) / 2;
                Rat sign = (s % 2 == 0) ? make_rat(1, 2) : make_rat(-1, 2);
                z[j] = sign * ns.odd[s][j];
            }
        }
    }
    Rat sum = 0;
    BigInt c = 1;  // binom(n, j)
    for (unsigned j = 0; j <= n; ++j) {
        if (j > 0) c = c * (n - j + 1) / j;
        Rat term = bh2[j] * Rat(c) * z[j];
        if (j % 2) sum -= term;
        else sum += term;
    }
    return sum;
}

ZetaCombo aperylike_J(unsigned k, unsigned n) {
    switch (k) {
        case 0: return {};
        case 1: return ZetaCombo(Basis::ONE, j1(n));
        case 2: return ZetaCombo(Basis::HZ2, aperylike_tJ(2, n));
        case 3: {
            ZetaCombo r(Basis::ONE, aperylike_tJ(3, n));
            r.add(Basis::HZ3, 2 * aperylike_tJ(2, n));
            return r;
        }
        case 4: {
            ZetaCombo r(Basis::HZ2, aperylike_tJ(4, n));
            r.add(Basis::HZ4, 3 * aperylike_tJ(2, n));
            return r;
        }
        default: throw UnsupportedIndex("J_k closed form known for k <= 4");
    }
}

// -------------------------------------------------------------- congruences

namespace {

void require_odd_prime(unsigned long p) {
    BigInt bp(p);
    if (p < 3 || mpz_probab_prime_p(bp.get_mpz_t(), 30) == 0)
        throw InvalidArgument(std::to_string(p) + " is not an odd prime");
}

BigInt mod(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

std::pair<std::string, std::string> kv(const std::string& k, unsigned long v) {
    return {k, std::to_string(v)};
}

}  // namespace

CongruenceReport congruence_pary_product(const std::string& kind, unsigned long p, unsigned long n) {
    require_odd_prime(p);
    if (kind != "A2" && kind != "A3" && kind != "TJ2")
        throw InvalidArgument("p-ary congruence kind must be A2, A3 or TJ2");
    CongruenceReport r;
    r.kind = "pary_" + kind;
    r.params = {kv("p", p), kv("n", n)};
    r.modulus = p;
    auto value = [&](unsigned long i) -> BigInt {
        if (kind == "A2") return mod(apery2(static_cast<unsigned>(i)), r.modulus);
        if (kind == "A3") return mod(apery3(static_cast<unsigned>(i)), r.modulus);
        return exact::rational_mod(aperylike_tJ(2, static_cast<unsigned>(i)), r.modulus);
    };
    r.lhs_residue = value(n);
    BigInt prod = 1;
    unsigned long x = n;
    do {
        prod = mod(prod * value(x % p), r.modulus);
        x /= p;
    } while (x > 0);
    r.rhs_residue = prod;
    r.ok = r.lhs_residue == r.rhs_residue;
    return r;
}

CongruenceReport supercongruence_check(const std::string& kind, unsigned long p, unsigned long m,
                                       unsigned r) {
    require_odd_prime(p);
    if (kind != "A2" && kind != "A3") throw InvalidArgument("supercongruence kind must be A2 or A3");
    if (m < 1 || r < 1) throw InvalidArgument("need m, r >= 1");
    CongruenceReport rep;
    rep.kind = "super_" + kind;
    rep.params = {kv("p", p), kv("m", m), kv("r", r)};
    rep.modulus = exact::ipow(BigInt(p), p == 3 ? r : 3 * r);
    BigInt pr = exact::ipow(BigInt(p), r), pr1 = exact::ipow(BigInt(p), r - 1);
    unsigned long i0 = BigInt(m * pr - 1).get_ui(), i1 = BigInt(m * pr1 - 1).get_ui();
    auto a = [&](unsigned long i) {
        return kind == "A2" ? apery2(static_cast<unsigned>(i)) : apery3(static_cast<unsigned>(i));
    };
    rep.lhs_residue = mod(a(i0), rep.modulus);
    rep.rhs_residue = mod(a(i1), rep.modulus);
    rep.ok = rep.lhs_residue == rep.rhs_residue;
    return rep;
}

CongruenceReport tj_supercongruence_check(unsigned s, unsigned long p, unsigned long m, unsigned n) {
    require_odd_prime(p);
    if (m < 1 || 2 * m >= p) throw InvalidArgument("need 1 <= m < p/2");
    if (n < 1) throw InvalidArgument("need n >= 1");
    if (2 * s + 2 > kMaxTJ) throw UnsupportedIndex("tJ index too large");
    CongruenceReport rep;
    rep.kind = "tj_super";
    rep.params = {kv("s", s), kv("p", p), kv("m", m), kv("n", n)};
    rep.modulus = exact::ipow(BigInt(p), n);
    BigInt P(p);
    unsigned long i0 = BigInt(m * exact::ipow(P, n)).get_ui();
    unsigned long i1 = BigInt(m * exact::ipow(P, n - 1)).get_ui();
    Rat lhs = Rat(exact::ipow(P, 2 * s * n)) * aperylike_tJ(2 * s + 2, static_cast<unsigned>(i0));
    Rat rhs = Rat(exact::ipow(P, 2 * s * (n - 1))) * aperylike_tJ(2 * s + 2, static_cast<unsigned>(i1));
    rep.lhs_residue = exact::rational_mod(lhs, rep.modulus);
    rep.rhs_residue = exact::rational_mod(rhs, rep.modulus);
    rep.ok = rep.lhs_residue == rep.rhs_residue;
    return rep;
}

CongruenceReport los_square_sum_check(unsigned long p) {
    require_odd_prime(p);
    CongruenceReport rep;
    rep.kind = "los_square_sum";
    rep.params = {kv("p", p)};
    rep.modulus = exact::ipow(BigInt(p), 3);
    Rat s = 0;
    for (unsigned long n = 0; n < p; ++n) {
        Rat t = aperylike_tJ(2, static_cast<unsigned>(n));
        s += t * t;
    }
    rep.lhs_residue = exact::rational_mod(s, rep.modulus);
    rep.rhs_residue = mod(BigInt(((p - 1) / 2) % 2 == 0 ? 1 : -1), rep.modulus);
    rep.ok = rep.lhs_residue == rep.rhs_residue;
    return rep;
}

BigInt lambda_coefficient(unsigned long n) {
    long units = static_cast<long>(n) * series::QSeries::kGrid;
    return series::eta_qseries(4, 6, units).coeff(units).get_num();
}

BigInt gamma_coefficient(unsigned long n) {
    long units = static_cast<long>(n) * series::QSeries::kGrid;
    auto q = series::eta_qseries(2, 4, units) * series::eta_qseries(4, 4, units);
    return q.coeff(units).get_num();
}

CongruenceReport asd_congruence_check(const std::string& kind, unsigned long p, unsigned long m,
                                      unsigned r) {
    require_odd_prime(p);
    if (kind != "A2" && kind != "A3") throw InvalidArgument("ASD kind must be A2 or A3");
    if (r < 2) throw InvalidArgument("need r >= 2");
    BigInt P(p);
    auto index = [&](unsigned j) -> unsigned {
        BigInt v = BigInt(m) * exact::ipow(P, j) - 1;
        if (v < 0 || v % 2 != 0) throw IndexNotIntegral("(m p^j - 1)/2 is not a nonnegative integer");
        return static_cast<unsigned>(BigInt(v / 2).get_ui());
    };
    unsigned i0 = index(r), i1 = index(r - 1), i2 = index(r - 2);
    CongruenceReport rep;
    rep.kind = "asd_" + kind;
    rep.params = {kv("p", p), kv("m", m), kv("r", r)};
    rep.modulus = exact::ipow(P, r);
    BigInt v;
    if (kind == "A2") {
        BigInt sign = ((p - 1) / 2) % 2 == 0 ? 1 : -1;
        v = apery2(i0) - lambda_coefficient(p) * apery2(i1) + sign * P * P * apery2(i2);
    } else {
        v = apery3(i0) - gamma_coefficient(p) * apery3(i1) + P * P * P * apery3(i2);
    }
    rep.lhs_residue = mod(v, rep.modulus);
    rep.rhs_residue = 0;
    rep.ok = rep.lhs_residue == 0;
    return rep;
}

}  // namespace zetaforge::aperynum
