#include "zetaforge/series.hpp"

#include <algorithm>
#include <functional>

#include "zetaforge/aperynum.hpp"
#include "zetaforge/errors.hpp"

namespace zetaforge::series {

using exact::make_rat;

// ---------------------------------------------------------------- PowerSeries

PowerSeries::PowerSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw InvalidArgument("power series needs at least one coefficient");
}

PowerSeries PowerSeries::zero(int order) {
    if (order < 0) throw InvalidArgument("negative order");
    return PowerSeries(std::vector<Rat>(static_cast<std::size_t>(order) + 1));
}

PowerSeries PowerSeries::constant(const Rat& c, int order) {
    PowerSeries s = zero(order);
    s[0] = c;
    return s;
}

PowerSeries PowerSeries::variable(int order) {
    PowerSeries s = zero(order);
    if (order >= 1) s[1] = 1;
    return s;
}

PowerSeries PowerSeries::truncated(int order) const {
    if (order > this->order()) throw InvalidArgument("cannot extend a truncated series");
    return PowerSeries(std::vector<Rat>(c_.begin(), c_.begin() + order + 1));
}

PowerSeries PowerSeries::derivative() const {
    if (order() == 0) return zero(0);
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return PowerSeries(std::move(d));
}

bool PowerSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return sgn(x) == 0; });
}

std::optional<int> PowerSeries::first_nonzero() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return static_cast<int>(i);
    return std::nullopt;
}

PowerSeries PowerSeries::operator-() const {
    PowerSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.order(), b.order());
    PowerSeries r = PowerSeries::zero(n);
    for (int i = 0; i <= n; ++i) r[i] = a[i] + b[i];
    return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.order(), b.order());
    PowerSeries r = PowerSeries::zero(n);
    for (int i = 0; i <= n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

PowerSeries operator*(const Rat& s, const PowerSeries& a) {
    PowerSeries r = a;
    for (auto& x : r.c_) x *= s;
    return r;
}

PowerSeries PowerSeries::inverse() const {
    if (sgn(c_[0]) == 0) throw NonInvertibleLeadingTerm("constant term is zero");
    int n = order();
    PowerSeries r = zero(n);
    Rat inv0 = 1 / c_[0];
    r[0] = inv0;
    for (int k = 1; k <= n; ++k) {
        Rat s = 0;
        for (int j = 1; j <= k; ++j) s += c_[static_cast<std::size_t>(j)] * r[k - j];
        r[k] = -s * inv0;
    }
    return r;
}

PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner) {
    if (sgn(inner[0]) != 0) throw NonvanishingInnerConstant("inner series has a constant term");
    int n = std::min(outer.order(), inner.order());
    PowerSeries r = PowerSeries::constant(outer[outer.order()], n);
    for (int i = outer.order() - 1; i >= 0; --i) {
        r = r * inner.truncated(n);
        r[0] += outer[i];
    }
    return r;
}

// ------------------------------------------------------------- LinearDiffOp

namespace {

Rat poly_coeff(const Poly& p, int j) {
    return j < static_cast<int>(p.size()) ? p[static_cast<std::size_t>(j)] : Rat(0);
}

}  // namespace

PowerSeries LinearDiffOp::apply(const PowerSeries& f) const {
    int n = f.order();
    if (n < 2) throw OrderTooSmall("operator needs order >= 2, got " + std::to_string(n));
    PowerSeries d1 = f.derivative();
    PowerSeries d2 = d1.derivative();
    int m = n - 2;
    PowerSeries r = PowerSeries::zero(m);
    int deg = static_cast<int>(std::max({c0.size(), c1.size(), c2.size()}));
    for (int k = 0; k <= m; ++k) {
        Rat s = 0;
        for (int j = 0; j < deg && j <= k; ++j) {
            s += poly_coeff(c2, j) * d2[k - j];
            s += poly_coeff(c1, j) * d1[k - j];
            s += poly_coeff(c0, j) * f[k - j];
        }
        r[k] = s;
    }
    return r;
}

const LinearDiffOp& ladder_D() {
    // z(1-z)^2 = z - 2z^2 + z^3, (1-3z)(1-z) = 1 - 4z + 3z^2
    static const LinearDiffOp op{{0, 1, -2, 1}, {1, -4, 3}, {make_rat(-3, 4), 1}};
    return op;
}

const LinearDiffOp& picard_fuchs_L() {
    static const LinearDiffOp op{{0, -1, 0, 1}, {-1, 0, 3}, {0, 1}};
    return op;
}

PowerSeries apply_ladder_D(const PowerSeries& f) { return ladder_D().apply(f); }
PowerSeries apply_picard_fuchs_L(const PowerSeries& f) { return picard_fuchs_L().apply(f); }

PowerSeries hypergeom_2f1_series(const Rat& a, const Rat& b, const Rat& c, int order) {
    if (order < 0) throw InvalidArgument("negative order");
    PowerSeries r = PowerSeries::zero(order);
    r[0] = 1;
    for (int n = 0; n < order; ++n) {
        Rat cn = c + n;
        if (sgn(cn) == 0) throw PoleInCoefficient("(c)_n vanishes at n = " + std::to_string(n + 1));
        r[n + 1] = r[n] * (a + n) * (b + n) / (cn * (n + 1));
    }
    return r;
}

// -------------------------------------------------------------------- QSeries

namespace {

// First exponent that may carry a nonzero coefficient.
long effective_lead(const QSeries& s) {
    auto l = s.leading_units();
    return l ? *l : s.max_units() + 1;
}

}  // namespace

QSeries QSeries::one(long max_units) { return monomial(1, 0, max_units); }

QSeries QSeries::monomial(const Rat& c, long exp_units, long max_units) {
    QSeries s(max_units);
    s.set(exp_units, c);
    return s;
}

void QSeries::set(long e, const Rat& c) {
    if (e > max_) return;
    if (sgn(c) == 0)
        c_.erase(e);
    else
        c_[e] = c;
}

Rat QSeries::coeff(long e) const {
    if (e > max_) throw InvalidArgument("coefficient beyond truncation");
    auto it = c_.find(e);
    return it == c_.end() ? Rat(0) : it->second;
}

std::optional<long> QSeries::leading_units() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first;
}

QSeries QSeries::truncated(long max_units) const {
    if (max_units > max_) throw InvalidArgument("cannot extend a truncated q-series");
    QSeries r(max_units);
    for (const auto& [e, c] : c_) {
        if (e > max_units) break;
        r.c_.emplace(e, c);
    }
    return r;
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& kv : r.c_) kv.second = -kv.second;
    return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries r = a.truncated(std::min(a.max_, b.max_));
    for (const auto& [e, c] : b.c_) {
        if (e > r.max_) break;
        r.set(e, r.coeff(e) + c);
    }
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
    long m = std::min(a.max_ + effective_lead(b), b.max_ + effective_lead(a));
    QSeries r(m);
    for (const auto& [ea, ca] : a.c_) {
        for (const auto& [eb, cb] : b.c_) {
            long e = ea + eb;
            if (e > m) break;
            r.c_[e] += ca * cb;
        }
    }
    for (auto it = r.c_.begin(); it != r.c_.end();) {
        if (sgn(it->second) == 0)
            it = r.c_.erase(it);
        else
            ++it;
    }
    return r;
}

QSeries operator*(const Rat& s, const QSeries& a) {
    QSeries r(a.max_);
    if (sgn(s) == 0) return r;
    for (const auto& [e, c] : a.c_) r.c_.emplace(e, s * c);
    return r;
}

QSeries QSeries::inverse() const {
    auto lead = leading_units();
    if (!lead) throw NonInvertibleLeadingTerm("zero q-series");
    long e0 = *lead;
    Rat c0 = c_.begin()->second;
    // b = this / (c0 q^e0) = 1 + ..., known through max_ - e0.
    long mb = max_ - e0;
    std::vector<std::pair<long, Rat>> b;
    for (const auto& [e, c] : c_)
        if (e != e0) b.emplace_back(e - e0, c / c0);
    std::vector<Rat> r(static_cast<std::size_t>(mb) + 1);
    r[0] = 1;
    for (long k = 1; k <= mb; ++k) {
        Rat s = 0;
        for (const auto& [d, bd] : b) {
            if (d > k) break;
            const Rat& rk = r[static_cast<std::size_t>(k - d)];
            if (sgn(rk) != 0) s += bd * rk;
        }
        r[static_cast<std::size_t>(k)] = -s;
    }
    QSeries out(mb - e0);
    Rat inv0 = 1 / c0;
    for (long k = 0; k <= mb; ++k)
        if (sgn(r[static_cast<std::size_t>(k)]) != 0) out.set(k - e0, r[static_cast<std::size_t>(k)] * inv0);
    return out;
}

QSeries QSeries::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QSeries result = one(max_);
    QSeries base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

QSeries QSeries::substitute(long k) const {
    if (k <= 0) throw InvalidArgument("substitution q -> q^k needs k >= 1");
    QSeries r(max_ * k);
    for (const auto& [e, c] : c_) r.c_.emplace(e * k, c);
    return r;
}

QSeries QSeries::twist() const {
    const long half = kGrid / 2;
    QSeries r(2 * max_);
    for (const auto& [e, c] : c_) {
        if (e % half != 0) throw InvalidArgument("twist needs half-integral exponents");
        long two_e = e / half;
        r.c_.emplace(2 * e, (two_e % 2 == 0) ? c : Rat(-c));
    }
    return r;
}

// ---------------------------------------------------------------- eta, theta

QSeries euler_product(long max_units) {
    // Pentagonal numbers: prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}.
    QSeries r(max_units);
    for (long k = 0;; ++k) {
        bool any = false;
        for (long kk : {k, -k}) {
            if (k == 0 && kk != 0) continue;
            long e = QSeries::kGrid * (kk * (3 * kk - 1) / 2);
            if (e <= max_units) {
                r.set(e, (kk % 2 == 0) ? Rat(1) : Rat(-1));
                any = true;
            }
        }
        if (!any) break;
    }
    return r;
}

QSeries eta_qseries(long m, long e, long max_units) {
    if (m <= 0) throw InvalidArgument("eta scale must be positive");
    if (e == 0) return QSeries::one(max_units);
    long shift = m * std::abs(e);  // exponent of q^{m|e|/24}, in grid units
    if (e > 0) {
        long need = (max_units - shift) / m + 1;
        QSeries p = euler_product(std::max(need, 0L)).substitute(m).pow(e);
        QSeries r(max_units);
        for (const auto& [ex, c] : p.terms())
            if (ex + shift <= max_units) r.set(ex + shift, c);
        return r;
    }
    // inverse of eta(m tau)^|e| loses twice its leading exponent of precision
    QSeries pos = eta_qseries(m, -e, max_units + 2 * shift);
    auto lead = pos.leading_units();
    if (!lead || abs(pos.terms().begin()->second) != 1)
        throw NonInvertibleLeadingTerm("eta power leading coefficient is not +-1");
    return pos.inverse().truncated(max_units);
}

QSeries theta_qseries(int j, long max_units) {
    QSeries r(max_units);
    for (long n = 0;; ++n) {
        long e;
        if (j == 2)
            e = 3 * (2 * n + 1) * (2 * n + 1);  // (n+1/2)^2/2, both n and -n-1
        else if (j == 3 || j == 4)
            e = 12 * n * n;
        else
            throw InvalidArgument("theta index must be 2, 3 or 4");
        if (e > max_units) break;
        Rat c = (n == 0 && j != 2) ? Rat(1) : Rat(2);
        if (j == 4 && n % 2 == 1) c = -c;
        r.set(e, c);
    }
    return r;
}

QSeries hauptmodul_z(long max_units) {
    // leads: 8, 64, -48 units; 100 units of slack covers the inversion loss.
    long m = max_units + 100;
    QSeries z = eta_qseries(1, 8, m) * eta_qseries(4, 16, m) * eta_qseries(2, -24, m);
    return z.truncated(max_units);
}

QSeries hauptmodul_theta_form(long max_units) {
    QSeries t2 = theta_qseries(2, max_units).pow(4);
    QSeries t4 = theta_qseries(4, max_units).pow(4);
    return (-(t2 * t4.inverse())).truncated(max_units);
}

QSeries compose_series(const PowerSeries& outer, const QSeries& inner) {
    auto lead = inner.leading_units();
    if (!lead) return QSeries::monomial(outer[0], 0, inner.max_units());
    if (*lead <= 0) throw NonvanishingInnerConstant("inner q-series must start above q^0");
    long m = std::min(inner.max_units(), (outer.order() + 1) * *lead - 1);
    QSeries in = inner.truncated(m);
    QSeries result = QSeries::monomial(outer[0], 0, m);
    QSeries power = QSeries::one(m);
    for (int n = 1; n <= outer.order(); ++n) {
        power = (power * in).truncated(m);
        if (power.terms().empty()) break;
        if (sgn(outer[n]) != 0) result = result + outer[n] * power;
    }
    return result;
}

// ----------------------------------------------------------------- w2 check

namespace {

PowerSeries tj2_series(int order) {
    PowerSeries f = PowerSeries::zero(order);
    for (int n = 0; n <= order; ++n) f[n] = aperynum::aperylike_tJ(2, static_cast<unsigned>(n));
    return f;
}

std::optional<Rat> first_difference(const QSeries& a, const QSeries& b, long max_units) {
    for (long e = 0; e <= max_units; ++e) {
        // lower exponents are compared too; both sides start at q^0 here
        if (a.coeff(e) != b.coeff(e)) return make_rat(e, QSeries::kGrid);
    }
    for (const auto& [e, c] : a.terms())
        if (e < 0) return make_rat(e, QSeries::kGrid);
    for (const auto& [e, c] : b.terms())
        if (e < 0) return make_rat(e, QSeries::kGrid);
    return std::nullopt;
}

}  // namespace

W2Report verify_w2_identity(long max_exponent) {
    if (max_exponent < 1) throw InvalidArgument("max_exponent must be >= 1");
    const long M = max_exponent * QSeries::kGrid;

    QSeries rhs = (eta_qseries(2, 22, M + 100) * eta_qseries(1, -12, M + 100) *
                   eta_qseries(4, -8, M + 100))
                      .truncated(M);
    Rat c0 = rhs.coeff(0);
    rhs = (1 / c0) * rhs;

    struct Candidate {
        const char* name;
        const char* description;
        std::function<QSeries()> z;
    };
    const std::vector<Candidate> candidates = {
        {"eta", "z = eta(t)^8 eta(4t)^16 / eta(2t)^24 as printed",
         [&] { return hauptmodul_z(M); }},
        {"eta_2tau", "eta-quotient evaluated at 2t",
         [&] { return hauptmodul_z(M / 2 + 1).substitute(2).truncated(M); }},
        {"neg_eta", "z = -(eta-quotient)", [&] { return -hauptmodul_z(M); }},
        {"theta_half", "z = -theta2^4/theta4^4, nome q^(1/2)",
         [&] { return hauptmodul_theta_form(M); }},
        {"theta_full", "z = -theta2^4/theta4^4, nome q",
         [&] { return hauptmodul_theta_form(M / 2 + 1).substitute(2).truncated(M); }},
        {"theta_2tau_plus_1", "z = -theta2^4/theta4^4 at 2t+1",
         [&] { return hauptmodul_theta_form(M / 2 + 1).twist().truncated(M); }},
        {"neg_theta_full", "z = +theta2^4/theta4^4, nome q",
         [&] { return -hauptmodul_theta_form(M / 2 + 1).substitute(2).truncated(M); }},
    };

    W2Report rep;
    for (const auto& cand : candidates) {
        QSeries z = cand.z();
        long lead = *z.leading_units();
        int order = static_cast<int>(M / lead) + 1;
        QSeries lhs = compose_series(tj2_series(order), z);
        W2Variant v{cand.name, cand.description, false, std::nullopt};
        if (lhs.max_units() < M) throw InvalidArgument("composition lost precision");
        v.first_mismatch = first_difference(lhs.truncated(M), rhs, M);
        v.matched = !v.first_mismatch;
        if (rep.variants.empty()) rep.first_mismatch = v.first_mismatch;
        if (v.matched && !rep.matched) {
            rep.matched = true;
            rep.convention_used = v.name;
        }
        rep.variants.push_back(std::move(v));
    }
    if (rep.matched) rep.first_mismatch.reset();
    rep.pfaff_form_ok = verify_pfaff_form(40);
    return rep;
}

bool verify_pfaff_form(int order) {
    PowerSeries z = PowerSeries::variable(order);
    PowerSeries one_minus_z = PowerSeries::constant(1, order) - z;
    PowerSeries inv = one_minus_z.inverse();
    PowerSeries w = -(z * inv);  // z/(z-1)
    PowerSeries f = hypergeom_2f1_series(make_rat(1, 2), make_rat(1, 2), 1, order);
    PowerSeries lhs = inv * compose(f, w);
    return lhs == tj2_series(order);
}

}  // namespace zetaforge::series
