#include "suite.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>

#include "emit.hpp"
#include "zetaforge/aperynum.hpp"
#include "zetaforge/errors.hpp"
#include "zetaforge/padic.hpp"
#include "zetaforge/resum.hpp"
#include "zetaforge/series.hpp"
#include "zetaforge/specval.hpp"
#include "zetaforge/spectra.hpp"

namespace zetaforge::cli {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using exact::make_rat;
using exact::Rat;

struct Ctx {
    BudgetTable b;
    std::uint64_t seed;
};

Check check(std::string name, bool ok, Json detail = Json::object()) {
    return Check{std::move(name), ok, std::move(detail)};
}

Json near(double value, double reference, double tol) {
    return Json{{"value", value}, {"reference", reference}, {"abs_error", std::abs(value - reference)}, {"tol", tol}};
}

Check near_check(std::string name, double value, double reference, double tol) {
    return check(std::move(name), std::abs(value - reference) <= tol, near(value, reference, tol));
}

// ---- 1 -------------------------------------------------------------------

std::vector<Check> apery_exact(const Ctx&) {
    std::vector<Check> out;
    long bad2 = -1, bad3 = -1;
    for (unsigned n = 0; n <= 60; ++n) {
        if (bad2 < 0 && aperynum::apery2(n) != aperynum::apery2_closed(n)) bad2 = n;
        if (bad3 < 0 && aperynum::apery3(n) != aperynum::apery3_closed(n)) bad3 = n;
    }
    out.push_back(check("A2 recurrence equals closed form, n <= 60", bad2 < 0, {{"first_mismatch", bad2}}));
    out.push_back(check("A3 recurrence equals closed form, n <= 60", bad3 < 0, {{"first_mismatch", bad3}}));
    out.push_back(check("A2(2) = 19", aperynum::apery2(2) == 19, {{"value", big(aperynum::apery2(2))}}));
    out.push_back(check("A3(2) = 73", aperynum::apery3(2) == 73, {{"value", big(aperynum::apery3(2))}}));
    return out;
}

// ---- 2 -------------------------------------------------------------------

std::vector<Check> congruences(const Ctx&) {
    std::vector<Check> out;
    Json failed = Json::array();
    int total = 0;
    for (const char* kind : {"A2", "A3"})
        for (unsigned long p : {5ul, 7ul, 11ul, 13ul})
            for (unsigned long m : {1ul, 2ul})
                for (unsigned r : {1u, 2u}) {
                    auto rep = aperynum::supercongruence_check(kind, p, m, r);
                    ++total;
                    if (!rep.ok) failed.push_back(to_json(rep));
                }
    out.push_back(check("supercongruences mod p^(3r)", failed.empty(), {{"checked", total}, {"failed", failed}}));

    failed = Json::array();
    total = 0;
    for (unsigned long p : {3ul, 5ul, 7ul})
        for (unsigned long n = 0; n < p * p * p; ++n) {
            auto rep = aperynum::congruence_pary_product("TJ2", p, n);
            ++total;
            if (!rep.ok) failed.push_back(to_json(rep));
        }
    out.push_back(check("tJ2 base-p digit products, n < p^3", failed.empty(), {{"checked", total}, {"failed", failed}}));

    failed = Json::array();
    total = 0;
    for (unsigned long p : {3ul, 5ul, 7ul})
        for (unsigned long m = 1; 2 * m < p; ++m)
            for (unsigned n : {1u, 2u}) {
                auto rep = aperynum::tj_supercongruence_check(0, p, m, n);
                ++total;
                if (!rep.ok) failed.push_back(to_json(rep));
            }
    out.push_back(check("tJ2 supercongruence p^(2n) tJ2(m p^n), n <= 2", failed.empty(),
                        {{"checked", total}, {"failed", failed}}));

    for (unsigned long p : {3ul, 5ul, 7ul, 11ul}) {
        auto rep = aperynum::los_square_sum_check(p);
        out.push_back(check("square sum of tJ2 mod p^3, p = " + std::to_string(p), rep.ok, to_json(rep)));
    }
    return out;
}

// ---- 3 -------------------------------------------------------------------

std::vector<Check> series_identities(const Ctx&) {
    using series::PowerSeries;
    std::vector<Check> out;
    const int N = 60;
    PowerSeries w2 = PowerSeries::zero(N);
    for (int n = 0; n <= N; ++n) w2[n] = aperynum::aperylike_tJ(2, n);
    PowerSeries img = series::apply_ladder_D(w2);
    out.push_back(check("ladder D annihilates sum tJ2(n) z^n", img.is_zero() && img.order() == 58,
                        {{"order", img.order()},
                         {"first_nonzero", img.first_nonzero() ? Json(*img.first_nonzero()) : Json(nullptr)}}));

    using aperynum::Basis;
    PowerSeries one = PowerSeries::zero(N), hz3 = PowerSeries::zero(N), j1 = PowerSeries::zero(N - 2);
    for (int n = 0; n <= N; ++n) {
        auto j = aperynum::aperylike_J(3, n);
        one[n] = j.get(Basis::ONE);
        hz3[n] = j.get(Basis::HZ3);
        if (n <= N - 2) j1[n] = aperynum::aperylike_J(1, n).get(Basis::ONE);
    }
    bool maps = series::apply_ladder_D(one) == j1 && series::apply_ladder_D(hz3).is_zero();
    out.push_back(check("D maps the J3 series to the J1 series", maps,
                        {{"order", N - 2}, {"note", "rational part maps to J1; zeta(3,1/2) part is annihilated"}}));

    PowerSeries f = PowerSeries::zero(N);
    PowerSeries h = series::hypergeom_2f1_series(make_rat(1, 2), make_rat(1, 2), 1, N / 2);
    for (int n = 0; 2 * n <= N; ++n) f[2 * n] = h[n];
    PowerSeries pf = series::apply_picard_fuchs_L(f);
    out.push_back(check("Picard-Fuchs operator annihilates 2F1(1/2,1/2;1;T^2)", pf.is_zero() && pf.order() == 58,
                        {{"order", pf.order()}}));
    return out;
}

// ---- 4 -------------------------------------------------------------------

std::vector<Check> modular(const Ctx&) {
    std::vector<Check> out;
    auto rep = series::verify_w2_identity(20);
    int matched = 0;
    for (const auto& v : rep.variants) matched += v.matched;
    Json d = to_json(rep);
    d["matched_count"] = matched;
    out.push_back(check("w2 eta-quotient identity through q^20 under exactly one convention", matched == 1, d));

    const long M = series::QSeries::kGrid * 20;
    auto lhs = series::theta_qseries(3, M).pow(4);
    auto rhs = series::theta_qseries(2, M).pow(4) + series::theta_qseries(4, M).pow(4);
    out.push_back(check("theta3^4 = theta2^4 + theta4^4 through q^20",
                        lhs.truncated(M).terms() == rhs.truncated(M).terms(), {{"max_exponent", 20}}));
    return out;
}

// ---- 5 -------------------------------------------------------------------

std::vector<Check> special_values(const Ctx& c) {
    std::vector<Check> out;
    out.push_back(near_check("zeta(2)", specval::hurwitz_zeta_num(2.0, 1.0), kPi * kPi / 6, 1e-12));
    out.push_back(near_check("zeta(4)", specval::hurwitz_zeta_num(4.0, 1.0), std::pow(kPi, 4) / 90, 1e-12));
    out.push_back(near_check("zeta(2,1/2)", specval::hurwitz_zeta_num(2.0, 0.5), kPi * kPi / 2, 1e-12));

    specval::Budget bud{c.b.mc_samples, c.seed};
    auto mc = [&](const std::string& name, const std::string& op, Params params, const specval::QuadratureResult& q,
                  double ref) {
        Json d = quadrature_json(op, params, q);
        d["reference"] = ref;
        d["sigmas"] = q.std_error > 0 ? std::abs(q.value - ref) / q.std_error : 0.0;
        out.push_back(check(name, std::abs(q.value - ref) <= 3 * q.std_error, d));
    };
    mc("R21(0) = pi^2/2 within 3 sigma", "r_kj_quadrature", {{"k", 2}, {"j", 1}, {"kappa", 0.0}},
       specval::r_kj_quadrature(2, 1, 0, specval::Method::MONTE_CARLO, bud), kPi * kPi / 2);
    mc("A00 = pi^4/96 within 3 sigma", "appendixB_integral", {{"which", "A"}, {"n", 0}, {"k", 0}},
       specval::appendixB_integral(specval::AppendixB::A, 0, 0, specval::Method::MONTE_CARLO, bud),
       std::pow(kPi, 4) / 96);
    mc("A11 = pi^4/2^7 - 9 pi^2/2^8 within 3 sigma", "appendixB_integral", {{"which", "A"}, {"n", 1}, {"k", 1}},
       specval::appendixB_integral(specval::AppendixB::A, 1, 1, specval::Method::MONTE_CARLO, bud),
       std::pow(kPi, 4) / 128 - 9 * kPi * kPi / 256);
    return out;
}

// ---- 6, 7 ----------------------------------------------------------------

struct NchoCase {
    const char* label;
    specval::NchoParams p;
};

std::vector<NchoCase> ncho_cases() {
    return {{"(sqrt2,sqrt2)", specval::NchoParams(std::sqrt(2.0), std::sqrt(2.0))},
            {"(2,1)", specval::NchoParams(2, 1)},
            {"(5/2,3/5)", specval::NchoParams(2.5, 0.6)}};
}

// sum lambda^-2 over the converged pairs plus the bracketed tail
// 2 sum_{j>J} ((j-1/2) slope)^-2 for slope in [min, max].
spectra::PartitionValue spectral_zeta2(const spectra::SpectrumResult& s, const specval::NchoParams& p) {
    std::size_t m = s.eigenvalues.size() & ~std::size_t(1);
    double head = 0;
    for (std::size_t i = 0; i < m; ++i) head += 1 / (s.eigenvalues[i] * s.eigenvalues[i]);
    double z = specval::hurwitz_zeta_num(2.0, m / 2 + 0.5);
    double lo = 2 * z / (p.slope_max() * p.slope_max()), hi = 2 * z / (p.slope_min() * p.slope_min());
    return {head + (lo + hi) / 2, (hi - lo) / 2};
}

std::vector<Check> zetaQ_triangle(const Ctx& c) {
    std::vector<Check> out;
    specval::Budget bud{c.b.mc_samples, c.seed};
    for (const auto& [label, p] : ncho_cases()) {
        double closed = specval::zetaQ2_closed(p);
        auto assembled = specval::zetaQ_special(2, p, specval::Method::MONTE_CARLO, bud);
        auto spec = spectra::ncho_eigs(p, c.b.spectrum_N, 0);
        auto sp = spectral_zeta2(spec, p);
        double e1 = std::abs(assembled.value / closed - 1), e2 = std::abs(sp.value / closed - 1),
               e3 = std::abs(sp.value / assembled.value - 1);
        bool ok = std::max({e1, e2, e3}) <= 0.01;
        out.push_back(check(std::string("zeta_Q(2) triangle at ") + label, ok,
                            {{"closed", closed},
                             {"assembled", assembled.value},
                             {"assembled_std_error", assembled.std_error},
                             {"spectral", sp.value},
                             {"spectral_tail_half_width", sp.half_width},
                             {"eigenvalues_used", spec.eigenvalues.size()},
                             {"max_relative_gap", std::max({e1, e2, e3})},
                             {"tol", 0.01}}));
    }
    return out;
}

std::vector<Check> spectral_bounds(const Ctx& c) {
    std::vector<Check> out;
    auto cases = ncho_cases();
    cases.push_back({"(3,1)", specval::NchoParams(3, 1)});
    for (const auto& [label, p] : cases) {
        auto spec = spectra::ncho_eigs(p, c.b.spectrum_N, 0);
        long bad = spectra::ncho_bounds_violation(spec);
        out.push_back(check(std::string("eigenvalue pair bounds at ") + label, bad < 0,
                            {{"eigenvalues_checked", spec.eigenvalues.size()}, {"first_violation", bad}}));
        // (5/2,3/5) has slopes 0.35 and 1.44: the tail bracket at t = 0.1 is
        // too wide for a 2% fit below N = 1024, so it only gets the bound check.
        if (std::string(label) == "(5/2,3/5)") continue;
        auto Z = [&](double t) { return spectra::partition_from_spectrum(spec, t, spectra::Tail::QHO_BOUND).value; };
        auto fit = spectra::heat_trace_fit(Z, spectra::linear_grid(0.1, 1, 19), 3);
        double rel = std::abs(fit.c_minus1 / p.residue() - 1);
        out.push_back(check(std::string("heat trace residue at ") + label, rel <= 0.02,
                            {{"c_minus1", fit.c_minus1},
                             {"expected", p.residue()},
                             {"relative_error", rel},
                             {"tol", 0.02},
                             {"residual_norm", fit.residual_norm}}));
    }
    return out;
}

// ---- 8 -------------------------------------------------------------------

std::vector<Check> quasi_partition(const Ctx& c) {
    std::vector<Check> out;
    std::vector<double> v;
    for (unsigned k = 0; k <= 30; ++k) v.push_back(exact::to_double(exact::hurwitz_zeta_nonpos(k, make_rat(1, 2))));
    for (double t : {0.25, 0.5, 1.0}) {
        double ref = std::exp(-t / 2) / (1 - std::exp(-t));
        out.push_back(near_check("oscillator quasi-partition, K = 30, t = " + Json(t).dump(),
                                 spectra::quasi_partition(v, 1, t), ref, 1e-10));
    }

    spectra::QrmParams p(0.3, 0.5);
    const double tau = 2;
    auto spec = spectra::qrm_eigs(p, c.b.spectrum_N, 0);
    std::vector<double> q{spectra::qrm_zeta_nonpositive(0, p, tau), spectra::qrm_zeta_nonpositive(1, p, tau)};
    std::vector<double> lt, le;
    Json errs = Json::array();
    for (double t : {0.2, 0.1, 0.05}) {
        double z = spectra::partition_from_spectrum(spec, t, spectra::Tail::QHO_BOUND, tau).value;
        double e = std::abs(spectra::quasi_partition(q, 2, t) - z);
        errs.push_back(Json{{"t", t}, {"abs_error", e}});
        lt.push_back(std::log(t));
        le.push_back(std::log(e));
    }
    double slope = ((le[0] - le[1]) / (lt[0] - lt[1]) + (le[1] - le[2]) / (lt[1] - lt[2])) / 2;
    out.push_back(check("QRM quasi-partition error is O(t^2)", slope >= 1.9,
                        {{"g", 0.3}, {"delta", 0.5}, {"tau", tau}, {"slope", slope}, {"min_slope", 1.9}, {"errors", errs}}));
    return out;
}

// ---- 9 -------------------------------------------------------------------

std::vector<Check> qrm_triangle(const Ctx& c) {
    std::vector<Check> out;
    specval::Budget bud{c.b.qrm_series_samples, c.seed};
    auto run = [&](const std::string& name, spectra::QrmParams p, unsigned lmax, bool exact_route) {
        const double t = 1;
        auto ser = spectra::qrm_partition_series(p, t, lmax, bud);
        auto spec = spectra::qrm_eigs(p, c.b.spectrum_N, 0);
        auto z = spectra::partition_from_spectrum(spec, t, spectra::Tail::QHO_BOUND);
        double tol = exact_route ? 1e-8 : std::max(1e-3, 3 * ser.std_error);
        Json d = quadrature_json("qrm_partition_series",
                                 {{"g", p.g()}, {"delta", p.delta()}, {"t", t}, {"lambda_max", lmax}}, ser);
        d["spectral"] = z.value;
        d["spectral_tail_half_width"] = z.half_width;
        d["abs_error"] = std::abs(ser.value - z.value);
        d["tol"] = tol;
        out.push_back(check(name, std::abs(ser.value - z.value) <= tol, d));
    };
    run("series (lambda_max = 2) vs spectrum at g = 0.3, Delta = 0.5", spectra::QrmParams(0.3, 0.5), 2, false);
    run("Delta = 0 route", spectra::QrmParams(0.3, 0), 2, true);
    run("g = 0 route", spectra::QrmParams(0, 0.5), 12, true);
    return out;
}

// ---- 10 ------------------------------------------------------------------

std::vector<Check> borel(const Ctx&) {
    std::vector<Check> out;
    for (unsigned n : {2u, 3u, 4u})
        for (auto [zl, z] : {std::pair{"1", 1.0}, {"1/2", 0.5}, {"1/3", 1.0 / 3}}) {
            auto r = resum::borel_sum_hurwitz(n, z);
            bool ok = std::abs(r.borel_sum - r.reference_value) <= 1e-8;
            Json d = to_json(r);
            d["n"] = n;
            out.push_back(check("Borel sum n = " + std::to_string(n) + ", z = " + zl, ok, d));
        }
    auto r = resum::borel_sum_hurwitz(2, 1.0 / 3);
    out.push_back(near_check("n = 2, z = 1/3 equals 3(pi^2/6 - 5/4)", r.borel_sum, 3 * (kPi * kPi / 6 - 1.25), 1e-8));
    // the six-digit figure 1.184803 is one unit high in the last place (exact: 1.18480220...)
    out.push_back(near_check("n = 2, z = 1/3 agrees with 1.184803 to six decimals", r.borel_sum, 1.184803, 1e-6));
    auto cr = resum::borel_sum_complex_s(1.5, 0.2);
    out.push_back(check("complex-s routes agree at s = 1.5, z = 0.2", cr.route_difference <= 1e-6, to_json(cr)));
    return out;
}

// ---- 11 ------------------------------------------------------------------

std::vector<Check> padic_suite(const Ctx& c) {
    using namespace padic;
    std::vector<Check> out;
    const long N = c.b.padic_precision;
    for (unsigned long p : {5ul, 7ul, 11ul}) {
        PadicContext ctx(p, N);
        Json failed = Json::array();
        int total = 0;
        const long P = static_cast<long>(p);
        for (Rat tau : {make_rat(1, P), make_rat(2, P), make_rat(-3, P * P)}) {
            Padic w = omega_v(ctx, ctx.from_rational(tau));
            for (long k = 1; k <= 10; ++k) {
                auto z = padic_hurwitz_zeta(1 - k, tau, 20, ctx);
                Padic rhs = -(w.pow(-k) * ctx.from_rational(exact::bernoulli_poly(k, tau) / k));
                ++total;
                if (z.certified_precision < 20 || !congruent(z.value, rhs, 20))
                    failed.push_back(Json{{"tau", rat(tau)}, {"k", k}, {"value", z.value.to_string()},
                                          {"expected", rhs.to_string()}});
            }
        }
        out.push_back(check("zeta_p(1-k, tau) interpolates Bernoulli values mod p^20, p = " + std::to_string(p),
                            failed.empty(), {{"checked", total}, {"failed", failed}}));
    }

    for (auto [p, r_max] : {std::pair{5ul, 6u}, {7ul, 5u}}) {
        PadicContext ctx(p, N);
        auto v = volkenborn_poly({0, 0, 1}, ctx, r_max);
        Json gains = Json::array();
        bool ok = true;
        for (unsigned r = 1; r <= r_max; ++r) {
            Padic d = v.approximants[r - 1] - ctx.from_rational(make_rat(1, 6));
            long g = d.valuation();
            gains.push_back(g);
            ok = ok && g >= static_cast<long>(r) - 2;
        }
        out.push_back(check("Volkenborn x^2 -> 1/6 with v(I_r - 1/6) >= r - 2, p = " + std::to_string(p), ok,
                            {{"valuations", gains}}));
    }

    {
        PadicContext ctx(5, N);
        auto rep = padic_divergence_report(2, make_rat(1, 5), 40, ctx);
        auto real = resum::fps_hurwitz(2, 0.2, 40);
        std::size_t best = real.smallest_term();
        double growth = std::abs(real.rows.back().term) / std::abs(real.rows[best].term);
        bool stable = rep.stable_from_mod_p4 >= 0 && rep.stable_from_mod_p4 <= 12;
        Padic S = rep.rows.back().partial_sum, Z = rep.normalization * rep.zeta_p;
        long k = std::min(S.abs_precision(), Z.abs_precision()) - 1;
        Json vals = Json::array();
        for (const auto& row : rep.rows)
            vals.push_back(row.term_valuation == LONG_MAX ? Json(nullptr) : Json(row.term_valuation));
        out.push_back(check("p = 5, tau = 1/5: partial sums stable mod 5^4 by K = 12", stable,
                            {{"stable_from", rep.stable_from_mod_p4}, {"term_valuations", vals}}));
        out.push_back(check("series sum equals omega_v(tau)^(1-n) zeta_p(n, tau)", congruent(S, Z, k),
                            {{"digits_compared", k}, {"sum", S.to_string()}}));
        out.push_back(check("same series diverges at real tau = 1/5", growth > 1e10,
                            {{"smallest_term_k", real.rows[best].k},
                             {"smallest_term", real.rows[best].term},
                             {"term_at_K", real.rows.back().term},
                             {"growth", growth}}));
    }
    return out;
}

struct Entry {
    int id;
    const char* title;
    double limit;
    std::function<std::vector<Check>(const Ctx&)> fn;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {1, "Apery numbers: recurrence vs closed form", 5, apery_exact},
        {2, "supercongruences and digit congruences", 120, congruences},
        {3, "ladder and Picard-Fuchs series identities", 60, series_identities},
        {4, "modular identities", 60, modular},
        {5, "special values and 4-dimensional integrals", 600, special_values},
        {6, "zeta_Q(2): closed form, assembled, spectral", 900, zetaQ_triangle},
        {7, "NCHO eigenvalue bounds and heat-trace residue", 1200, spectral_bounds},
        {8, "quasi-partition functions", 600, quasi_partition},
        {9, "QRM partition: series vs spectrum", 1200, qrm_triangle},
        {10, "Borel resummation", 300, borel},
        {11, "p-adic Hurwitz zeta, Volkenborn integral, divergence", 300, padic_suite},
    };
    return e;
}

}  // namespace

BudgetTable budget_table(Tier t) {
    if (t == Tier::FULL) return {10'000'000, 10'000'000, 1024, 30};
    return {1'000'000, 1'000'000, 512, 30};
}

const char* tier_name(Tier t) { return t == Tier::FULL ? "full" : "quick"; }

Tier parse_tier(const std::string& s) {
    if (s == "quick") return Tier::QUICK;
    if (s == "full") return Tier::FULL;
    throw InvalidArgument("budget must be quick or full, got '" + s + "'");
}

std::vector<Criterion> run_suite(Tier tier, std::uint64_t seed, const std::vector<int>& ids) {
    Ctx ctx{budget_table(tier), seed};
    std::vector<Criterion> res;
    for (const auto& e : entries()) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), e.id) == ids.end()) continue;
        Criterion c{e.id, e.title, e.limit, true, {}};
        try {
            c.checks = e.fn(ctx);
        } catch (const std::exception& ex) {
            c.checks.push_back(check("completed without error", false, {{"error", ex.what()}}));
        }
        for (const auto& ch : c.checks) c.ok = c.ok && ch.ok;
        res.push_back(std::move(c));
    }
    return res;
}

Json to_json(const Criterion& c) {
    Json checks = Json::array();
    for (const auto& ch : c.checks) checks.push_back(Json{{"name", ch.name}, {"ok", ch.ok}, {"detail", ch.detail}});
    return Json{{"id", c.id}, {"title", c.title}, {"ok", c.ok}, {"checks", checks}};
}

}  // namespace zetaforge::cli
