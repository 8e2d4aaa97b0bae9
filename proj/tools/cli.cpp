#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <memory>
#include <optional>

#include "emit.hpp"
#include "suite.hpp"
#include "zetaforge/errors.hpp"

#ifndef ZETAFORGE_VERSION
#define ZETAFORGE_VERSION "unknown"
#endif

namespace zetaforge::cli {

namespace {

using exact::Rat;

struct Result {
    Json doc;
    std::string plain;
    bool ok = true;
};

struct Global {
    std::string format = "json";
    std::uint64_t seed = 1;
    std::string budget = "quick";
    bool no_cache = false;
    bool no_meta = false;
};

Format parse_format(const std::string& s) {
    if (s == "json") return Format::JSON;
    if (s == "csv") return Format::CSV;
    if (s == "plain") return Format::PLAIN;
    throw InvalidArgument("format must be json, csv or plain");
}

specval::Method parse_method(const std::string& s) {
    if (s == "mc") return specval::Method::MONTE_CARLO;
    if (s == "qmc") return specval::Method::QMC;
    if (s == "gauss") return specval::Method::TENSOR_GAUSS;
    throw InvalidArgument("method must be mc, qmc or gauss");
}

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// Model parameters shared by the spectral subcommands.
struct ModelOpts {
    std::string model = "qho";
    double alpha = 2, beta = 1;
    double g = 0.3, delta = 0.5, eps = 0;
    unsigned N = 0;  // 0: budget default

    void add(CLI::App* sub, bool with_model = true) {
        if (with_model) sub->add_option("--model", model, "qho, ncho or qrm")->capture_default_str();
        sub->add_option("--alpha", alpha, "NCHO alpha")->capture_default_str();
        sub->add_option("--beta", beta, "NCHO beta")->capture_default_str();
        sub->add_option("--g", g, "QRM coupling")->capture_default_str();
        sub->add_option("--delta", delta, "QRM level splitting")->capture_default_str();
        sub->add_option("--eps", eps, "QRM bias")->capture_default_str();
        sub->add_option("--N", N, "basis truncation (default from --budget)");
    }

    Json params() const {
        if (model == "ncho") return Json{{"alpha", alpha}, {"beta", beta}};
        if (model == "qrm") return Json{{"g", g}, {"delta", delta}, {"eps", eps}};
        if (model == "qho") return Json::object();
        throw InvalidArgument("model must be qho, ncho or qrm");
    }

    spectra::SpectrumResult spectrum(const BudgetTable& b) const {
        unsigned n = N ? N : b.spectrum_N;
        if (model == "ncho") return spectra::ncho_eigs(specval::NchoParams(alpha, beta), n, 0);
        if (model == "qrm") return spectra::qrm_eigs(spectra::QrmParams(g, delta, eps), n, 0);
        if (model == "qho") return spectra::qho_spectrum(2 * n);
        throw InvalidArgument("model must be qho, ncho or qrm");
    }
};

Rat parse_rational(const std::string& s) { return exact::parse_rat(s); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"zetaforge: spectral zeta functions, Apery-like numbers and their verification suites", "zetaforge"};
    app.fallthrough();
    app.require_subcommand(1);
    Global G;
    app.add_option("--format", G.format, "json, csv or plain")->capture_default_str();
    app.add_option("--seed", G.seed, "seed for Monte Carlo streams")->capture_default_str();
    app.add_option("--budget", G.budget, "quick or full")->capture_default_str();
    app.add_flag("--no-cache", G.no_cache, "do not read or write the spectrum cache");
    app.add_flag("--no-meta", G.no_meta, "omit the timestamp block from JSON output");

    // Option storage has to outlive the blocks below; callbacks run during parse.
    std::vector<std::shared_ptr<void>> arena;
    auto hold = [&arena](auto init) -> decltype(init)& {
        auto p = std::make_shared<decltype(init)>(std::move(init));
        arena.push_back(p);
        return *p;
    };
    std::function<Result()> job;
    auto on = [&](CLI::App* sub, std::function<Result()> fn) { sub->callback([&job, fn] { job = fn; }); };
    auto budget = [&] { return budget_table(parse_tier(G.budget)); };

    // bernoulli
    {
        auto* sub = app.add_subcommand("bernoulli", "Bernoulli number B_k or polynomial B_k(x)");
        auto& k = hold(0u);
        auto& x = hold(std::string());
        sub->add_option("--k", k, "index")->required();
        sub->add_option("--x", x, "rational argument of the Bernoulli polynomial");
        on(sub, [&] {
            Rat v = x.empty() ? exact::bernoulli_number(k) : exact::bernoulli_poly(k, parse_rational(x));
            Json d{{"k", k}};
            if (!x.empty()) d["x"] = rat(parse_rational(x));
            d["value"] = rat(v);
            return Result{d, exact::to_string(v)};
        });
    }

    // apery
    {
        auto* sub = app.add_subcommand("apery", "Apery numbers A2(n) or A3(n), recurrence against closed form");
        auto& kind = hold(std::string("A3"));
        auto& n = hold(0u);
        sub->add_option("--kind", kind, "A2 or A3")->capture_default_str();
        sub->add_option("--n", n, "index")->required();
        on(sub, [&] {
            exact::BigInt a, c;
            Rat b;
            if (kind == "A2") {
                a = aperynum::apery2(n), c = aperynum::apery2_closed(n), b = aperynum::apery2_b(n);
            } else if (kind == "A3") {
                a = aperynum::apery3(n), c = aperynum::apery3_closed(n), b = aperynum::apery3_b(n);
            } else {
                throw InvalidArgument("kind must be A2 or A3");
            }
            Json d{{"kind", kind}, {"n", n}, {"value", big(a)}, {"closed_form", big(c)}, {"b", rat(b)}, {"ok", a == c}};
            return Result{d, a.get_str(), a == c};
        });
    }

    // aperylike
    {
        auto* sub = app.add_subcommand("aperylike", "Apery-like numbers J_k(n) or normalized tJ_k(n)");
        auto& k = hold(2u);
        auto& n = hold(0u);
        auto& normalized = hold(false);
        sub->add_option("--k", k, "index k")->capture_default_str();
        sub->add_option("--n", n, "index n")->required();
        sub->add_flag("--normalized", normalized, "tJ_k(n) instead of J_k(n)");
        on(sub, [&] {
            Json d{{"k", k}, {"n", n}, {"normalized", normalized}};
            if (normalized) {
                Rat v = aperynum::aperylike_tJ(k, n);
                d["value"] = rat(v);
                return Result{d, exact::to_string(v)};
            }
            auto c = aperynum::aperylike_J(k, n);
            d["value"] = to_json(c);
            return Result{d, c.to_string()};
        });
    }

    // congruence
    {
        auto* sub = app.add_subcommand("congruence", "Exact congruence checks");
        auto& kind = hold(std::string());
        auto& p = hold(5ul);
        auto& m = hold(1ul);
        auto& n = hold(0ul);
        auto& r = hold(1u);
        auto& s = hold(0u);
        sub->add_option("--kind", kind,
                        "A2, A3 (supercongruence), digits-A2, digits-A3, digits-TJ2, TJ, LOS, ASD-A2, ASD-A3")
            ->required();
        sub->add_option("--p", p, "prime")->capture_default_str();
        sub->add_option("--m", m, "multiplier")->capture_default_str();
        sub->add_option("--r", r, "exponent")->capture_default_str();
        sub->add_option("--n", n, "index for the digit checks")->capture_default_str();
        sub->add_option("--s", s, "tJ_{2s+2} family for --kind TJ")->capture_default_str();
        on(sub, [&] {
            aperynum::CongruenceReport rep;
            if (kind == "A2" || kind == "A3")
                rep = aperynum::supercongruence_check(kind, p, m, r);
            else if (kind.rfind("digits-", 0) == 0)
                rep = aperynum::congruence_pary_product(kind.substr(7), p, n);
            else if (kind == "TJ")
                rep = aperynum::tj_supercongruence_check(s, p, m, r);
            else if (kind == "LOS")
                rep = aperynum::los_square_sum_check(p);
            else if (kind.rfind("ASD-", 0) == 0)
                rep = aperynum::asd_congruence_check(kind.substr(4), p, m, r);
            else
                throw InvalidArgument("unknown congruence kind '" + kind + "'");
            return Result{to_json(rep), rep.ok ? "ok" : "mismatch", rep.ok};
        });
    }

    // qseries-verify
    {
        auto* sub = app.add_subcommand("qseries-verify", "q-series identities: w2, jacobi, pfaff");
        auto& identity = hold(std::string("w2"));
        auto& order = hold(20l);
        sub->add_option("--identity", identity, "w2, jacobi or pfaff")->capture_default_str();
        sub->add_option("--order", order, "highest q exponent (power of z for pfaff)")->capture_default_str();
        on(sub, [&] {
            if (order < 1) throw InvalidArgument("order must be positive");
            if (identity == "w2") {
                auto rep = series::verify_w2_identity(order);
                Json d = to_json(rep);
                d["order"] = order;
                return Result{d, rep.matched ? "matched: " + rep.convention_used : "no variant matched", rep.matched};
            }
            if (identity == "jacobi") {
                const long M = series::QSeries::kGrid * order;
                auto lhs = series::theta_qseries(3, M).pow(4);
                auto rhs = series::theta_qseries(2, M).pow(4) + series::theta_qseries(4, M).pow(4);
                bool ok = lhs.truncated(M).terms() == rhs.truncated(M).terms();
                return Result{Json{{"identity", "jacobi"}, {"order", order}, {"ok", ok}}, ok ? "ok" : "mismatch", ok};
            }
            if (identity == "pfaff") {
                bool ok = series::verify_pfaff_form(static_cast<int>(order));
                return Result{Json{{"identity", "pfaff"}, {"order", order}, {"ok", ok}}, ok ? "ok" : "mismatch", ok};
            }
            throw InvalidArgument("identity must be w2, jacobi or pfaff");
        });
    }

    // hurwitz
    {
        auto* sub = app.add_subcommand("hurwitz", "Hurwitz zeta(s, tau) by Euler-Maclaurin");
        auto& s = hold(2.0);
        auto& s_im = hold(0.0);
        auto& tau = hold(1.0);
        sub->add_option("--s", s, "real part of s")->capture_default_str();
        sub->add_option("--s-imag", s_im, "imaginary part of s")->capture_default_str();
        sub->add_option("--tau", tau, "tau > 0")->capture_default_str();
        on(sub, [&] {
            auto v = specval::hurwitz_zeta_num(std::complex<double>(s, s_im), tau);
            Json d{{"s", complex_value({s, s_im})}, {"tau", tau}, {"value", complex_value(v)}};
            return Result{d, Json(complex_value(v)).dump()};
        });
    }

    // special-values
    {
        auto* sub = app.add_subcommand("special-values", "zeta_Q(k), R_{k,j}(kappa) and the A/B integrals");
        auto& what = hold(std::string("zetaQ"));
        auto& method = hold(std::string("mc"));
        auto& which = hold(std::string("A"));
        auto& k = hold(2u);
        auto& j = hold(1u);
        auto& n = hold(0u);
        auto& alpha = hold(2.0);
        auto& beta = hold(1.0);
        auto& kappa = hold(0.0);
        auto& samples = hold(std::uint64_t(0));
        sub->add_option("--what", what, "zetaQ, zetaQ2-closed, rkj or appendixB")->capture_default_str();
        sub->add_option("--k", k, "order k")->capture_default_str();
        sub->add_option("--j", j, "index j (rkj), or k of A_{n,k} / j of B_{n,j}")->capture_default_str();
        sub->add_option("--n", n, "n of A_{n,k} / B_{n,j}")->capture_default_str();
        sub->add_option("--which", which, "A or B")->capture_default_str();
        sub->add_option("--alpha", alpha)->capture_default_str();
        sub->add_option("--beta", beta)->capture_default_str();
        sub->add_option("--kappa", kappa)->capture_default_str();
        sub->add_option("--method", method, "mc, qmc or gauss")->capture_default_str();
        sub->add_option("--samples", samples, "sample count (default from --budget)");
        on(sub, [&] {
            specval::Budget b{samples ? samples : budget().mc_samples, G.seed};
            auto m = parse_method(method);
            if (what == "zetaQ2-closed") {
                double v = specval::zetaQ2_closed(specval::NchoParams(alpha, beta));
                return Result{Json{{"op", "zetaQ2_closed"}, {"params", {{"alpha", alpha}, {"beta", beta}}}, {"value", v}},
                              Json(v).dump()};
            }
            if (what == "zetaQ") {
                auto q = specval::zetaQ_special(k, specval::NchoParams(alpha, beta), m, b);
                return Result{quadrature_json("zetaQ_special", {{"k", k}, {"alpha", alpha}, {"beta", beta}}, q),
                              Json(q.value).dump()};
            }
            if (what == "rkj") {
                auto q = specval::r_kj_quadrature(k, j, kappa, m, b);
                return Result{quadrature_json("r_kj_quadrature", {{"k", k}, {"j", j}, {"kappa", kappa}}, q),
                              Json(q.value).dump()};
            }
            if (what == "appendixB") {
                if (which != "A" && which != "B") throw InvalidArgument("which must be A or B");
                auto w = which == "A" ? specval::AppendixB::A : specval::AppendixB::B;
                auto q = specval::appendixB_integral(w, n, j, m, b);
                Json d = quadrature_json("appendixB_integral", {{"which", which}, {"n", n}, {"k_or_j", j}}, q);
                if (n <= 1) d["exact"] = specval::appendixB_exact(w, n, j);
                return Result{d, Json(q.value).dump()};
            }
            throw InvalidArgument("what must be zetaQ, zetaQ2-closed, rkj or appendixB");
        });
    }

    // spectra
    {
        auto* sub = app.add_subcommand("ncho-spectrum", "NCHO eigenvalues from the Hermite-basis truncation");
        auto& mo = hold(ModelOpts{"ncho"});
        auto& count = hold(0u);
        auto& threshold = hold(1e-8);
        mo.add(sub, false);
        sub->add_option("--count", count, "number of eigenvalues (0: converged prefix)")->capture_default_str();
        sub->add_option("--threshold", threshold, "convergence threshold N vs N/2")->capture_default_str();
        on(sub, [&] {
            unsigned N = mo.N ? mo.N : budget().spectrum_N;
            auto s = spectra::ncho_eigs(specval::NchoParams(mo.alpha, mo.beta), N, count, threshold);
            Json d = to_json(s);
            d["params"] = mo.params();
            d["bounds_violation"] = spectra::ncho_bounds_violation(s);
            return Result{d, ""};
        });
    }
    {
        auto* sub = app.add_subcommand("qrm-spectrum", "quantum Rabi model eigenvalues from the Fock truncation");
        auto& mo = hold(ModelOpts{"qrm"});
        auto& count = hold(0u);
        auto& threshold = hold(1e-8);
        mo.add(sub, false);
        sub->add_option("--count", count, "number of eigenvalues (0: converged prefix)")->capture_default_str();
        sub->add_option("--threshold", threshold, "convergence threshold N vs N/2")->capture_default_str();
        on(sub, [&] {
            unsigned N = mo.N ? mo.N : budget().spectrum_N;
            auto s = spectra::qrm_eigs(spectra::QrmParams(mo.g, mo.delta, mo.eps), N, count, threshold);
            Json d = to_json(s);
            d["params"] = mo.params();
            return Result{d, ""};
        });
    }

    // partition
    {
        auto* sub = app.add_subcommand("partition", "partition function from the spectrum, or the QRM nested series");
        auto& mo = hold(ModelOpts{});
        auto& t = hold(1.0);
        auto& tau = hold(0.0);
        auto& use_series = hold(false);
        auto& lambda_max = hold(2u);
        auto& samples = hold(std::uint64_t(0));
        mo.add(sub);
        sub->add_option("--t", t, "inverse temperature")->capture_default_str();
        sub->add_option("--tau", tau, "spectral shift")->capture_default_str();
        sub->add_flag("--series", use_series, "QRM: nested-integral series instead of the spectrum");
        sub->add_option("--lambda-max", lambda_max, "series shells")->capture_default_str();
        sub->add_option("--samples", samples, "series samples (default from --budget)");
        on(sub, [&] {
            if (use_series) {
                if (mo.model != "qrm") throw InvalidArgument("--series needs --model qrm");
                specval::Budget b{samples ? samples : budget().qrm_series_samples, G.seed};
                auto q = spectra::qrm_partition_series(spectra::QrmParams(mo.g, mo.delta, mo.eps), t, lambda_max, b);
                return Result{quadrature_json("qrm_partition_series",
                                              {{"g", mo.g}, {"delta", mo.delta}, {"t", t}, {"lambda_max", lambda_max}}, q),
                              Json(q.value).dump()};
            }
            auto z = spectra::partition_from_spectrum(mo.spectrum(budget()), t, spectra::Tail::QHO_BOUND, tau);
            Json d{{"model", mo.model}, {"params", mo.params()}, {"t", t}, {"tau", tau},
                   {"value", z.value}, {"half_width", z.half_width}};
            return Result{d, Json(z.value).dump()};
        });
    }

    // quasi-partition
    {
        auto* sub = app.add_subcommand("quasi-partition", "partition function rebuilt from zeta values at -k");
        auto& mo = hold(ModelOpts{});
        auto& t = hold(0.5);
        auto& tau = hold(2.0);
        auto& K = hold(30u);
        mo.add(sub);
        sub->add_option("--t", t)->capture_default_str();
        sub->add_option("--tau", tau, "QRM shift")->capture_default_str();
        sub->add_option("--K", K, "highest k (oscillator)")->capture_default_str();
        on(sub, [&] {
            if (mo.model == "qho") {
                std::vector<double> v;
                for (unsigned k = 0; k <= K; ++k)
                    v.push_back(exact::to_double(exact::hurwitz_zeta_nonpos(k, exact::make_rat(1, 2))));
                double q = spectra::quasi_partition(v, 1, t), ref = std::exp(-t / 2) / (1 - std::exp(-t));
                Json d{{"model", "qho"}, {"t", t}, {"K", K}, {"value", q}, {"reference", ref}, {"abs_error", std::abs(q - ref)}};
                return Result{d, Json(q).dump()};
            }
            if (mo.model == "qrm") {
                spectra::QrmParams p(mo.g, mo.delta);
                std::vector<double> v{spectra::qrm_zeta_nonpositive(0, p, tau), spectra::qrm_zeta_nonpositive(1, p, tau)};
                double q = spectra::quasi_partition(v, 2, t);
                auto z = spectra::partition_from_spectrum(mo.spectrum(budget()), t, spectra::Tail::QHO_BOUND, tau);
                Json d{{"model", "qrm"}, {"params", mo.params()}, {"t", t}, {"tau", tau}, {"K", 1},
                       {"value", q}, {"spectral", z.value}, {"abs_error", std::abs(q - z.value)}};
                return Result{d, Json(q).dump()};
            }
            throw InvalidArgument("quasi-partition supports qho and qrm");
        });
    }

    // heat-fit
    {
        auto* sub = app.add_subcommand("heat-fit", "small-t fit Z(t) ~ c/t + sum C_j t^(2j-1)");
        auto& mo = hold(ModelOpts{"ncho"});
        auto& n_odd = hold(3u);
        auto& points = hold(19u);
        auto& t_min = hold(0.1);
        auto& t_max = hold(1.0);
        auto& even = hold(false);
        mo.add(sub);
        sub->add_option("--n-odd", n_odd, "odd coefficients")->capture_default_str();
        sub->add_option("--points", points, "grid points")->capture_default_str();
        sub->add_option("--t-min", t_min)->capture_default_str();
        sub->add_option("--t-max", t_max)->capture_default_str();
        sub->add_flag("--include-even", even, "fit even powers too (should vanish)");
        on(sub, [&] {
            auto spec = mo.spectrum(budget());
            auto Z = [&](double t) { return spectra::partition_from_spectrum(spec, t, spectra::Tail::QHO_BOUND).value; };
            spectra::FitOptions fo;
            fo.include_even = even;
            auto fit = spectra::heat_trace_fit(Z, spectra::linear_grid(t_min, t_max, points), n_odd, fo);
            Json d{{"model", mo.model}, {"params", mo.params()}};
            if (mo.model == "ncho") d["expected_c_minus1"] = specval::NchoParams(mo.alpha, mo.beta).residue();
            d["fit"] = to_json(fit);
            return Result{d, Json(fit.c_minus1).dump()};
        });
    }

    // mellin-zeta
    {
        auto* sub = app.add_subcommand("mellin-zeta", "spectral zeta(s, tau) as the Mellin transform of the heat trace");
        auto& mo = hold(ModelOpts{});
        auto& s = hold(2.0);
        auto& tau = hold(0.0);
        mo.add(sub);
        sub->add_option("--s", s, "s > 1")->capture_default_str();
        sub->add_option("--tau", tau)->capture_default_str();
        on(sub, [&] {
            auto h = mo.model == "qho" ? spectra::qho_heat_trace() : spectra::heat_trace_from_spectrum(mo.spectrum(budget()));
            double v = spectra::spectral_zeta_mellin(h, s, tau);
            Json d{{"model", mo.model}, {"params", mo.params()}, {"s", s}, {"tau", tau}, {"value", v}};
            return Result{d, Json(v).dump()};
        });
    }

    // borel
    {
        auto* sub = app.add_subcommand("borel", "Borel sum of the asymptotic series of zeta(n, 1/z)");
        auto& n = hold(2u);
        auto& s = hold(std::optional<double>());
        auto& s_im = hold(0.0);
        auto& z = hold(1.0);
        auto& tol = hold(0.0);
        sub->add_option("--n", n, "integer order n >= 2")->capture_default_str();
        sub->add_option("--s", s, "real part of a non-integer order, 1 < Re s < 2");
        sub->add_option("--s-imag", s_im)->capture_default_str();
        sub->add_option("--z", z)->capture_default_str();
        sub->add_option("--tol", tol, "agreement tolerance (default 1e-8, 1e-6 for complex s)");
        on(sub, [&] {
            if (s) {
                auto r = resum::borel_sum_complex_s({*s, s_im}, z, tol > 0 ? tol : 1e-6);
                return Result{to_json(r), Json(complex_value(r.x_route)).dump(), r.agreement};
            }
            auto r = resum::borel_sum_hurwitz(n, z, tol > 0 ? tol : 1e-8);
            Json d = to_json(r);
            d["n"] = n;
            return Result{d, Json(r.borel_sum).dump(), r.agreement};
        });
    }

    // divergence
    {
        auto* sub = app.add_subcommand("divergence", "term-by-term trace of the formal series in 1/tau");
        auto& mo = hold(ModelOpts{"hurwitz"});
        auto& n = hold(2u);
        auto& K = hold(40u);
        auto& precision = hold(30u);
        auto& tau = hold(std::string("10"));
        auto& p = hold(0ul);
        mo.add(sub, false);
        sub->add_option("--model", mo.model, "hurwitz, qrm, ncho or padic")->capture_default_str();
        sub->add_option("--n", n)->capture_default_str();
        sub->add_option("--tau", tau, "real tau; a rational with |tau|_p > 1 for padic")->capture_default_str();
        sub->add_option("--K", K, "highest k")->capture_default_str();
        sub->add_option("--p", p, "prime for --model padic");
        sub->add_option("--precision", precision, "p-adic digits")->capture_default_str();
        on(sub, [&] {
            if (mo.model == "padic") {
                if (p == 0) throw InvalidArgument("--model padic needs --p");
                padic::PadicContext ctx(p, precision);
                Rat t = parse_rational(tau);
                auto rep = padic::padic_divergence_report(n, t, K, ctx);
                Json rows = Json::array();
                for (const auto& r : rep.rows)
                    rows.push_back(Json{{"k", r.k},
                                        {"term_valuation", r.term_valuation == LONG_MAX ? Json(nullptr) : Json(r.term_valuation)},
                                        {"partial_sum", r.partial_sum.to_string()}});
                Json d{{"label", "padic"}, {"p", p}, {"n", n}, {"tau", rat(t)},
                       {"stable_from_mod_p4", rep.stable_from_mod_p4},
                       {"normalization", to_json(rep.normalization)},
                       {"zeta_p", to_json(rep.zeta_p)},
                       {"rows", rows}};
                return Result{d, ""};
            }
            double t = exact::to_double(parse_rational(tau));
            resum::DivergenceTrace tr;
            if (mo.model == "hurwitz") {
                tr = resum::fps_hurwitz(n, t, K);
            } else if (mo.model == "qrm") {
                std::vector<double> rb;
                for (unsigned k = 0; k <= 2; ++k) rb.push_back(spectra::rabi_bernoulli_exact(k).evaluate(0, mo.g, mo.delta));
                tr = resum::fps_qrm(n, t, rb);
            } else if (mo.model == "ncho") {
                auto spec = spectra::ncho_eigs(specval::NchoParams(mo.alpha, mo.beta), mo.N ? mo.N : budget().spectrum_N, 0);
                auto Z = [&](double x) { return spectra::partition_from_spectrum(spec, x, spectra::Tail::QHO_BOUND).value; };
                tr = resum::fps_ncho(n, t, spectra::heat_trace_fit(Z, spectra::linear_grid(0.1, 1, 19), 3));
            } else {
                throw InvalidArgument("model must be hurwitz, qrm, ncho or padic");
            }
            Json d = to_json(tr);
            d["n"] = n;
            d["tau"] = t;
            return Result{d, ""};
        });
    }

    // padic-zeta
    {
        auto* sub = app.add_subcommand("padic-zeta", "p-adic Hurwitz zeta at an integer s");
        auto& p = hold(5ul);
        auto& s = hold(2l);
        auto& tau = hold(std::string("1/5"));
        auto& x = hold(std::string());
        auto& K = hold(20u);
        auto& precision = hold(20u);
        sub->add_option("--p", p, "odd prime")->capture_default_str();
        sub->add_option("--s", s, "integer s != 1")->capture_default_str();
        sub->add_option("--tau", tau, "rational with |tau|_p > 1")->capture_default_str();
        sub->add_option("--x", x, "shift: evaluate at tau + x through the shifted series");
        sub->add_option("--K", K, "terms")->capture_default_str();
        sub->add_option("--precision", precision, "p-adic digits")->capture_default_str();
        on(sub, [&] {
            padic::PadicContext ctx(p, precision);
            Rat t = parse_rational(tau);
            auto r = x.empty() ? padic::padic_hurwitz_zeta(s, t, K, ctx)
                               : padic::padic_hurwitz_shifted(s, t, parse_rational(x), K, ctx);
            Json d{{"p", p}, {"s", s}, {"tau", rat(t)}};
            if (!x.empty()) d["x"] = rat(parse_rational(x));
            d["K"] = K;
            d["certified_precision"] = r.certified_precision;
            d["value"] = to_json(r.value);
            d["expansion"] = r.value.to_string();
            return Result{d, r.value.to_string()};
        });
    }

    // verify-all
    {
        auto* sub = app.add_subcommand("verify-all", "run the acceptance suite");
        auto& only = hold(std::vector<int>());
        sub->add_option("--only", only, "criterion ids to run (default: all)")->delimiter(',');
        on(sub, [&] {
            Tier tier = parse_tier(G.budget);
            auto res = run_suite(tier, G.seed, only);
            BudgetTable b = budget_table(tier);
            Json crit = Json::array(), failures = Json::array();
            bool ok = true;
            for (const auto& c : res) {
                crit.push_back(to_json(c));
                for (const auto& ch : c.checks)
                    if (!ch.ok) failures.push_back(Json{{"criterion", c.id}, {"check", ch.name}});
                ok = ok && c.ok;
            }
            Json d{{"budget", tier_name(tier)},
                   {"seed", G.seed},
                   {"sizes",
                    {{"mc_samples", b.mc_samples},
                     {"qrm_series_samples", b.qrm_series_samples},
                     {"spectrum_N", b.spectrum_N},
                     {"padic_precision", b.padic_precision}}},
                   {"ok", ok},
                   {"failures", failures},
                   {"criteria", crit}};
            std::string plain;
            for (const auto& c : res)
                plain += std::string(c.ok ? "PASS" : "FAIL") + " " + std::to_string(c.id) + " " + c.title + "\n";
            plain += ok ? "all criteria passed" : std::to_string(failures.size()) + " check(s) failed";
            return Result{d, plain, ok};
        });
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return OK;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return OK;
    } catch (const CLI::ParseError& e) {
        err << "zetaforge: " << e.what() << "\n";
        return USAGE;
    }

    try {
        Format fmt = parse_format(G.format);
        parse_tier(G.budget);
        spectra::set_cache_enabled(!G.no_cache);
        auto t0 = std::chrono::steady_clock::now();
        Result r = job();
        if (fmt == Format::JSON && !G.no_meta) {
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            r.doc["meta"] = Json{{"tool", "zetaforge"}, {"version", ZETAFORGE_VERSION}, {"timestamp", utc_now()},
                                 {"elapsed_seconds", secs}};
        }
        emit(out, r.doc, fmt, r.plain);
        return r.ok ? OK : MISMATCH;
    } catch (const Error& e) {
        err << "zetaforge: " << e.what() << "\n";
        return USAGE;
    } catch (const std::exception& e) {
        err << "zetaforge: " << e.what() << "\n";
        return USAGE;
    }
}

}  // namespace zetaforge::cli
