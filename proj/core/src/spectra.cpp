#include "zetaforge/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <nlohmann/json.hpp>

#include "integrate.hpp"
#include "zetaforge/errors.hpp"
#include "zetaforge/rng.hpp"

namespace zetaforge::spectra {

namespace {

std::string hex(double x) {
    std::ostringstream os;
    os << std::hexfloat << x;
    return os.str();
}

std::string params_key(const Model& m) {
    if (auto* p = std::get_if<NchoParams>(&m)) return hex(p->alpha()) + "," + hex(p->beta());
    if (auto* q = std::get_if<QrmParams>(&m))
        return hex(q->g()) + "," + hex(q->delta()) + "," + hex(q->epsilon());
    return "";
}

// Least squares through dgelss. Returns coefficients; throws IllConditioned.
std::vector<double> lstsq(std::vector<double> a, std::size_t rows, std::size_t cols,
                          std::vector<double> b, double max_cond = 1e13) {
    if (rows < cols) throw IllConditioned("fewer rows than unknowns");
    std::vector<double> s(cols);
    lapack_int rank = 0;
    lapack_int info = LAPACKE_dgelss(LAPACK_COL_MAJOR, static_cast<lapack_int>(rows),
                                     static_cast<lapack_int>(cols), 1, a.data(),
                                     static_cast<lapack_int>(rows), b.data(),
                                     static_cast<lapack_int>(rows), s.data(), -1.0, &rank);
    if (info != 0) throw IllConditioned("dgelss failed");
    if (rank < static_cast<lapack_int>(cols) || s.back() <= 0 || s.front() / s.back() > max_cond)
        throw IllConditioned("design matrix is rank deficient or too ill-conditioned");
    b.resize(cols);
    return b;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
    if (d.empty()) return d;
    lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(d.size()),
                                    d.data(), e.data(), nullptr, 1);
    if (info != 0) throw NotConverged("dstev failed");
    return d;
}

// All 2N eigenvalues. The matrix splits into four tridiagonal chains
// (n, c) -> (n+2, 1-c) started at n in {0, 1}, c in {0, 1}.
std::vector<double> ncho_all(const NchoParams& p, unsigned N) {
    std::vector<double> out;
    out.reserve(2 * N);
    for (unsigned n0 = 0; n0 < 2; ++n0)
        for (unsigned c0 = 0; c0 < 2; ++c0) {
            std::vector<double> d, e;
            unsigned c = c0;
            for (unsigned n = n0; n < N; n += 2, c ^= 1u) {
                d.push_back((c == 0 ? p.alpha() : p.beta()) * (n + 0.5));
                if (n + 2 < N) e.push_back(std::sqrt((n + 1.0) * (n + 2.0)) / 2);
            }
            auto w = tridiagonal_eigenvalues(std::move(d), std::move(e));
            out.insert(out.end(), w.begin(), w.end());
        }
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------------ cache

constexpr int kCacheVersion = 1;
std::atomic<bool> g_cache_on{true};

std::filesystem::path cache_file(const std::string& key) {
    const char* dir = std::getenv("ZETAFORGE_CACHE_DIR");
    std::ostringstream name;
    name << "spectrum-" << std::hex << std::setw(16) << std::setfill('0') << rng::fnv1a(key)
         << ".json";
    return std::filesystem::path(dir) / name.str();
}

bool cache_active() {
    const char* dir = std::getenv("ZETAFORGE_CACHE_DIR");
    return g_cache_on.load() && dir && *dir;
}

std::vector<double> cached_eigenvalues(const Model& m, unsigned N,
                                       const std::function<std::vector<double>()>& compute) {
    if (!cache_active()) return compute();
    const std::string key = model_name(m) + "|" + params_key(m) + "|" + std::to_string(N);
    const auto path = cache_file(key);
    try {
        std::ifstream in(path);
        if (in) {
            auto j = nlohmann::json::parse(in);
            if (j.at("version") == kCacheVersion && j.at("key") == key)
                return j.at("eigenvalues").get<std::vector<double>>();
        }
    } catch (const std::exception&) {
        // unreadable or stale record: recompute and overwrite
    }
    auto w = compute();
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        nlohmann::json j{{"version", kCacheVersion}, {"key", key}, {"eigenvalues", w}};
        out << j.dump();
    }
    std::filesystem::rename(tmp, path, ec);
    return w;
}

SpectrumResult converged(Model model, unsigned N, const std::vector<double>& full,
                         const std::vector<double>& half, unsigned count, double threshold) {
    if (count > half.size()) throw InvalidArgument("count must not exceed N");
    SpectrumResult r;
    r.model = std::move(model);
    r.truncation_N = N;
    const std::size_t limit = count ? count : half.size();
    for (std::size_t i = 0; i < limit; ++i) {
        double d = std::abs(full[i] - half[i]);
        if (!(d <= threshold)) {
            if (count)
                throw NotConverged("eigenvalue " + std::to_string(i) + " moved by " +
                                   std::to_string(d) + " between N and N/2");
            break;
        }
        r.eigenvalues.push_back(full[i]);
        r.convergence.push_back(d);
    }
    if (r.eigenvalues.empty()) throw NotConverged("no eigenvalue converged");
    return r;
}

}  // namespace

// ------------------------------------------------------------------ models

QrmParams::QrmParams(double g, double delta, double epsilon) : g_(g), d_(delta), e_(epsilon) {
    if (!(g >= 0) || !(delta >= 0) || !std::isfinite(epsilon))
        throw InvalidArgument("QRM needs g >= 0, Delta >= 0 and a finite bias");
}

double QrmParams::spin_norm() const { return std::hypot(d_, e_); }

std::string model_name(const Model& m) {
    if (std::holds_alternative<NchoParams>(m)) return "ncho";
    if (std::holds_alternative<QrmParams>(m)) return "qrm";
    return "qho";
}

double BandedMatrix::at(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    if (j >= n || j - i > kd) return 0;
    return ab[(kd + i - j) + j * (kd + 1)];
}

namespace {
void band_set(BandedMatrix& m, std::size_t i, std::size_t j, double v) {
    if (i > j) std::swap(i, j);
    m.ab[(m.kd + i - j) + j * (m.kd + 1)] = v;
}
}  // namespace

BandedMatrix ncho_truncated_matrix(const NchoParams& p, unsigned N) {
    if (N < 4) throw InvalidArgument("truncation needs N >= 4");
    BandedMatrix m;
    m.n = 2 * std::size_t(N);
    m.kd = 5;
    m.ab.assign((m.kd + 1) * m.n, 0.0);
    for (unsigned n = 0; n < N; ++n) {
        band_set(m, 2 * n, 2 * n, p.alpha() * (n + 0.5));
        band_set(m, 2 * n + 1, 2 * n + 1, p.beta() * (n + 0.5));
        if (n + 2 < N) {
            double v = std::sqrt((n + 1.0) * (n + 2.0)) / 2;
            band_set(m, 2 * n, 2 * (n + 2) + 1, -v);
            band_set(m, 2 * n + 1, 2 * (n + 2), v);
        }
    }
    return m;
}

BandedMatrix qrm_truncated_matrix(const QrmParams& p, unsigned N) {
    if (N < 4) throw InvalidArgument("truncation needs N >= 4");
    BandedMatrix m;
    m.n = 2 * std::size_t(N);
    m.kd = 3;
    m.ab.assign((m.kd + 1) * m.n, 0.0);
    for (unsigned n = 0; n < N; ++n) {
        band_set(m, 2 * n, 2 * n, n + p.delta());
        band_set(m, 2 * n + 1, 2 * n + 1, n - p.delta());
        band_set(m, 2 * n, 2 * n + 1, p.epsilon());
        if (n + 1 < N) {
            double v = p.g() * std::sqrt(n + 1.0);
            band_set(m, 2 * n, 2 * n + 3, v);
            band_set(m, 2 * n + 1, 2 * n + 2, v);
        }
    }
    return m;
}

std::vector<double> banded_eigenvalues(const BandedMatrix& m) {
    std::vector<double> ab = m.ab, w(m.n);
    double z = 0;
    lapack_int info = LAPACKE_dsbevd(LAPACK_COL_MAJOR, 'N', 'U', static_cast<lapack_int>(m.n),
                                     static_cast<lapack_int>(m.kd), ab.data(),
                                     static_cast<lapack_int>(m.kd + 1), w.data(), &z, 1);
    if (info != 0) throw NotConverged("dsbevd failed");
    return w;
}

SpectrumResult ncho_eigs(const NchoParams& p, unsigned N, unsigned count, double threshold) {
    if (N < 8) throw InvalidArgument("truncation needs N >= 8");
    Model m = p;
    auto full = cached_eigenvalues(m, N, [&] { return ncho_all(p, N); });
    auto half = cached_eigenvalues(m, N / 2, [&] { return ncho_all(p, N / 2); });
    return converged(m, N, full, half, count, threshold);
}

SpectrumResult qrm_eigs(const QrmParams& p, unsigned N, unsigned count, double threshold) {
    if (N < 8) throw InvalidArgument("truncation needs N >= 8");
    Model m = p;
    auto full = cached_eigenvalues(m, N, [&] { return banded_eigenvalues(qrm_truncated_matrix(p, N)); });
    auto half =
        cached_eigenvalues(m, N / 2, [&] { return banded_eigenvalues(qrm_truncated_matrix(p, N / 2)); });
    return converged(m, N, full, half, count, threshold);
}

SpectrumResult qho_spectrum(unsigned count) {
    SpectrumResult r;
    r.model = Qho{};
    r.truncation_N = count;
    for (unsigned n = 0; n < count; ++n) r.eigenvalues.push_back(n + 0.5);
    r.convergence.assign(count, 0.0);
    return r;
}

long ncho_bounds_violation(const SpectrumResult& spec, double slack) {
    auto* p = std::get_if<NchoParams>(&spec.model);
    if (!p) throw InvalidArgument("eigenvalue bounds apply to the NCHO only");
    const double lo = p->slope_min(), hi = p->slope_max();
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        double j = static_cast<double>(i / 2 + 1) - 0.5;
        double l = spec.eigenvalues[i];
        if (l < j * lo - slack || l > j * hi + slack) return static_cast<long>(i);
    }
    return -1;
}

void set_cache_enabled(bool on) { g_cache_on = on; }

bool cache_enabled() { return cache_active(); }

// ------------------------------------------------------------- partitions

PartitionValue partition_from_spectrum(const SpectrumResult& spec, double t, Tail tail, double tau) {
    if (!(t > 0)) throw InvalidArgument("partition function needs t > 0");
    const bool paired = !std::holds_alternative<Qho>(spec.model);
    std::size_t m = spec.eigenvalues.size();
    if (paired && tail == Tail::QHO_BOUND) m -= m % 2;

    rng::KahanSum head;
    for (std::size_t i = m; i-- > 0;) head.add(std::exp(-t * (spec.eigenvalues[i] + tau)));
    PartitionValue r{head.value(), 0};
    if (tail == Tail::NONE) return r;

    const double damp = -std::expm1(-t);
    double lo = 0, hi = 0;
    if (std::holds_alternative<Qho>(spec.model)) {
        lo = hi = std::exp(-t * (m + 0.5 + tau)) / damp;
    } else if (auto* p = std::get_if<NchoParams>(&spec.model)) {
        const double jj = static_cast<double>(m / 2);
        auto part = [&](double mu) {
            return 2 * std::exp(-t * ((jj + 0.5) * mu + tau)) / -std::expm1(-mu * t);
        };
        lo = part(p->slope_max());
        hi = part(p->slope_min());
    } else {
        const auto& q = std::get<QrmParams>(spec.model);
        const double jj = static_cast<double>(m / 2);
        const double n0 = jj - q.g() * q.g() + tau;
        lo = 2 * std::exp(-t * (n0 + q.spin_norm())) / damp;
        hi = 2 * std::exp(-t * (n0 - q.spin_norm())) / damp;
    }
    r.value += (lo + hi) / 2;
    r.half_width = (hi - lo) / 2;
    if (r.half_width > 0.1 * std::abs(r.value))
        throw TailDominates("tail bracket exceeds 10% of the partition function");
    return r;
}

QuadratureResult qrm_partition_series(const QrmParams& p, double t, unsigned lambda_max,
                                      const Budget& budget) {
    if (!(t > 0)) throw InvalidArgument("partition function needs t > 0");
    if (p.epsilon() != 0) throw InvalidArgument("the nested-integral series is for epsilon = 0");
    const double g2 = p.g() * p.g();
    if (lambda_max > (g2 == 0 ? 12u : 2u))
        throw InvalidArgument("lambda_max must be <= 2 (<= 12 at g = 0)");

    const double pref = 2 * std::exp(t * g2) / -std::expm1(-t);
    QuadratureResult out;
    out.method = specval::Method::MONTE_CARLO;
    out.seed = budget.seed;
    out.value = pref;
    if (p.delta() == 0 || lambda_max == 0) return out;

    std::vector<double> w;
    double wsum = 0;
    for (unsigned l = 1; l <= lambda_max; ++l) {
        w.push_back(std::pow(t * p.delta(), 2.0 * l));
        wsum += w.back();
    }

    const double sh = std::sinh(t);
    const double c = 4 * g2 / sh;
    const double base = -2 * g2 / std::tanh(t / 2);
    double var = 0;
    rng::KahanSum omega;
    omega.add(1);
    for (unsigned l = 1; l <= lambda_max; ++l) {
        const unsigned L = 2 * l;
        const double invfact = 1 / std::tgamma(L + 1.0);
        std::uint64_t n = std::max<std::uint64_t>(
            4096, static_cast<std::uint64_t>(budget.samples * (w[l - 1] / wsum)));
        std::ostringstream params;
        params << hex(p.g()) << "," << hex(p.delta()) << "," << hex(t) << ",L=" << L;
        auto key = rng::stream_key("qrm_partition_series", params.str(), budget.seed);
        auto st = detail::monte_carlo(key, n, [&](rng::Stream& s) {
            std::array<double, 25> mu{};
            for (unsigned i = 1; i <= L; ++i) mu[i] = s.uniform();
            std::sort(mu.begin() + 1, mu.begin() + L + 1);
            if (g2 == 0) return invfact;
            double alt = 0, sgn = 1;
            for (unsigned gm = 0; gm <= L; ++gm, sgn = -sgn) alt += sgn * std::cosh(t * mu[gm]);
            const double sL = std::sinh(t * (1 - mu[L]) / 2);
            double xi = -2 * c * sL * sL * alt;  // (-1)^L = 1
            double s2 = 0;
            for (unsigned a = 0; a < L; ++a)
                for (unsigned b = a + 1; b < L; b += 2)
                    s2 += (std::cosh(t * (mu[b + 1] - 1)) - std::cosh(t * (mu[b] - 1))) *
                          (std::cosh(t * mu[a]) - std::cosh(t * mu[a + 1]));
            xi -= c * s2;
            double ps = 0;
            sgn = 1;
            for (unsigned gm = 0; gm <= L; ++gm, sgn = -sgn) ps += sgn * std::sinh(t * (0.5 - mu[gm]));
            const double psi = c * ps * ps;
            return std::exp(base + c * std::cosh(t * (1 - mu[L])) + xi + psi) * invfact;
        });
        omega.add(w[l - 1] * st.mean);
        var += std::pow(w[l - 1] * st.std_error, 2);
        out.nodes += st.n;
    }
    out.value = pref * omega.value();
    out.std_error = pref * std::sqrt(var);
    return out;
}

// ---------------------------------------------------------------- fitting

std::vector<double> linear_grid(double lo, double hi, unsigned points) {
    if (points < 2 || !(hi > lo)) throw InvalidArgument("grid needs two points and hi > lo");
    std::vector<double> g(points);
    for (unsigned i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
    return g;
}

HeatTraceFit heat_trace_fit(const std::function<double(double)>& Z, const std::vector<double>& t_grid,
                            unsigned n_odd, const FitOptions& opts) {
    if (n_odd == 0) throw InvalidArgument("need at least one odd term");
    if (t_grid.size() < 2 * n_odd + 2) throw InvalidArgument("grid needs >= 2*n_odd + 2 points");
    for (double t : t_grid)
        if (!(t > 0 && t <= 1)) throw InvalidArgument("fit grid must lie in (0, 1]");
    if (!opts.weights.empty() && opts.weights.size() != t_grid.size())
        throw InvalidArgument("weights must match the grid");

    const std::size_t rows = t_grid.size();
    const std::size_t n_even = opts.include_even ? n_odd : 0;
    const std::size_t cols = 1 + n_odd + n_even;
    std::vector<double> a(rows * cols), b(rows), z(rows), basis(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const double t = t_grid[i];
        const double wt = opts.weights.empty() ? 1.0 : opts.weights[i];
        z[i] = Z(t);
        basis[i] = 1 / t;
        for (std::size_t j = 0; j < n_odd; ++j) basis[i + (1 + j) * rows] = std::pow(t, 2.0 * j + 1);
        for (std::size_t j = 0; j < n_even; ++j)
            basis[i + (1 + n_odd + j) * rows] = std::pow(t, 2.0 * j);
        for (std::size_t j = 0; j < cols; ++j) a[i + j * rows] = wt * basis[i + j * rows];
        b[i] = wt * z[i];
    }
    auto x = lstsq(a, rows, cols, b);

    HeatTraceFit f;
    f.c_minus1 = x[0];
    f.odd_coeffs.assign(x.begin() + 1, x.begin() + 1 + n_odd);
    f.even_coeffs.assign(x.begin() + 1 + n_odd, x.end());
    f.t_grid = t_grid;
    double ss = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        double model = 0;
        for (std::size_t j = 0; j < cols; ++j) model += x[j] * basis[i + j * rows];
        double r = z[i] - model;
        ss += r * r;
        f.max_abs_residual = std::max(f.max_abs_residual, std::abs(r));
    }
    f.residual_norm = std::sqrt(ss);
    f.trusted = f.residual_norm < opts.residual_threshold;
    return f;
}

double quasi_partition(const std::vector<double>& values, double residue, double t) {
    if (!(t > 0)) throw InvalidArgument("quasi-partition needs t > 0");
    rng::KahanSum s;
    double term = 1;  // t^k / k!
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) term *= t / static_cast<double>(k);
        s.add((k % 2 ? -1.0 : 1.0) * values[k] * term);
    }
    s.add(residue / t);
    return s.value();
}

// ------------------------------------------------------------------ Mellin

HeatTrace qho_heat_trace() {
    HeatTrace h;
    h.Z = [](double t, double tau) { return std::exp(-t * (0.5 + tau)) / -std::expm1(-t); };
    h.residue = 1;
    return h;
}

HeatTrace heat_trace_from_spectrum(const SpectrumResult& spec) {
    HeatTrace h;
    auto shared = std::make_shared<SpectrumResult>(spec);
    h.Z = [shared](double t, double tau) {
        return partition_from_spectrum(*shared, t, Tail::QHO_BOUND, tau).value;
    };
    if (std::holds_alternative<Qho>(spec.model)) {
        h.residue = 1;
    } else if (auto* q = std::get_if<QrmParams>(&spec.model)) {
        h.residue = 2;
        if (q->epsilon() == 0) {
            // t Z(t) / 2 = 1 - (RB)_1(0) t + (RB)_2(0) t^2 / 2 + O(t^3), shifted by e^{-tau t}
            const double rb1 = rabi_bernoulli_exact(1).evaluate(0, q->g(), q->delta());
            const double rb2 = rabi_bernoulli_exact(2).evaluate(0, q->g(), q->delta());
            h.small_t = [rb1, rb2](double t, double tau) {
                return 2 * std::expm1(-tau * t) / t + 2 * std::exp(-tau * t) * (-rb1 + rb2 * t / 2);
            };
            h.t_switch = 0.02;
        }
    } else {
        const auto& p = std::get<NchoParams>(spec.model);
        const double c = p.residue();
        h.residue = c;
        // Regular part c(e^{-tau t} - 1)/t + e^{-tau t} sum C_j t^(2j-1), with the
        // odd coefficients fitted on [0.1, 1] against the exact residue.
        auto grid = linear_grid(0.1, 1.0, 19);
        const unsigned n_odd = 3;
        std::vector<double> a(grid.size() * n_odd), b(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double t = grid[i];
            b[i] = h.Z(t, 0) - c / t;
            for (unsigned j = 0; j < n_odd; ++j) a[i + j * grid.size()] = std::pow(t, 2.0 * j + 1);
        }
        auto C = lstsq(a, grid.size(), n_odd, b);
        h.small_t = [c, C](double t, double tau) {
            double reg = 0;
            for (std::size_t j = 0; j < C.size(); ++j) reg += C[j] * std::pow(t, 2.0 * j + 1);
            return c * std::expm1(-tau * t) / t + std::exp(-tau * t) * reg;
        };
        h.t_switch = 0.1;
    }
    return h;
}

double spectral_zeta_mellin(const HeatTrace& h, double s, double tau) {
    if (!(s > 1)) throw InvalidArgument("Mellin representation needs s > 1");
    if (!h.Z) throw InvalidArgument("heat trace has no Z");
    {
        double z1 = h.Z(50, tau), z2 = h.Z(100, tau);
        if (!std::isfinite(z1) || !std::isfinite(z2) || (z1 > 0 && z2 >= z1))
            throw NonIntegrable("Z(t) e^{-tau t} does not decay");
    }
    boost::math::quadrature::tanh_sinh<double> ts;
    const double tol = 1e-12;
    const double c = h.residue;
    const double t0 = (h.small_t && h.t_switch > 0) ? h.t_switch : 0.0;

    double total = c / (s - 1);  // c * int_0^1 t^{s-2} dt
    if (t0 > 0)
        total += ts.integrate([&](double t) { return std::pow(t, s - 1) * h.small_t(t, tau); }, 0.0,
                              t0, tol);
    total += ts.integrate([&](double t) { return std::pow(t, s - 1) * (h.Z(t, tau) - c / t); }, t0,
                          1.0, tol);
    total += ts.integrate(
        [&](double u) {
            if (u >= 1) return 0.0;
            const double om = 1 - u;
            const double t = 1 + u / om;
            if (!std::isfinite(t)) return 0.0;
            double z = h.Z(t, tau);
            return z == 0 ? 0.0 : std::pow(t, s - 1) * z / (om * om);
        },
        0.0, 1.0, tol);
    if (!std::isfinite(total)) throw NonIntegrable("Mellin integral is not finite");
    return total / std::tgamma(s);
}

// ----------------------------------------------------------- Rabi-Bernoulli

double RabiBernoulli::evaluate(double tau, double g, double delta) const {
    double s = 0;
    for (const auto& [e, c] : coeffs)
        s += exact::to_double(c) * std::pow(tau, e[0]) * std::pow(g * g, e[1]) *
             std::pow(delta * delta, e[2]);
    return s;
}

unsigned RabiBernoulli::degree_tau() const {
    unsigned d = 0;
    for (const auto& [e, c] : coeffs)
        if (c != 0) d = std::max(d, e[0]);
    return d;
}

bool RabiBernoulli::monic_in_tau() const {
    const unsigned d = degree_tau();
    for (const auto& [e, c] : coeffs)
        if (e[0] == d && !(e[1] == 0 && e[2] == 0 && c == 1) && c != 0) return false;
    auto it = coeffs.find({d, 0, 0});
    return it != coeffs.end() && it->second == 1;
}

std::string RabiBernoulli::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        const auto& [e, c] = *it;
        if (c == 0) continue;
        exact::Rat a = abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        bool bare = e[0] + e[1] + e[2] > 0 && a == 1;
        if (!bare) os << (a.get_den() == 1 ? a.get_num().get_str() : exact::to_string(a));
        const char* names[3] = {"tau", "g^2", "Delta^2"};
        bool any = !bare;
        for (int i = 0; i < 3; ++i) {
            if (!e[i]) continue;
            os << (any ? "*" : "") << names[i];
            if (e[i] > 1) os << "^" << e[i];
            any = true;
        }
        first = false;
    }
    return first ? "0" : os.str();
}

RabiBernoulli rabi_bernoulli_exact(unsigned k) {
    using exact::Rat;
    RabiBernoulli r;
    r.k = k;
    switch (k) {
        case 0: r.coeffs[{0, 0, 0}] = 1; break;
        case 1:
            r.coeffs[{1, 0, 0}] = 1;
            r.coeffs[{0, 0, 0}] = exact::make_rat(-1, 2);
            r.coeffs[{0, 1, 0}] = -1;
            break;
        case 2:
            r.coeffs[{2, 0, 0}] = 1;
            r.coeffs[{1, 0, 0}] = -1;
            r.coeffs[{1, 1, 0}] = -2;
            r.coeffs[{0, 0, 0}] = exact::make_rat(1, 6);
            r.coeffs[{0, 1, 0}] = 1;
            r.coeffs[{0, 2, 0}] = 1;
            r.coeffs[{0, 0, 1}] = 1;
            break;
        default: throw UnsupportedIndex("exact Rabi-Bernoulli polynomials are known for k <= 2");
    }
    return r;
}

Estimate rabi_bernoulli_numeric(unsigned k, const QrmParams& params, double tau,
                                const std::vector<double>& t_grid) {
    if (k > 6) throw UnsupportedIndex("numeric Rabi-Bernoulli estimates are limited to k <= 6");
    if (t_grid.size() < 12) throw InvalidArgument("fit grid needs at least 12 points");
    auto spec = qrm_eigs(params, 512, 0);
    const double tmax = *std::max_element(t_grid.begin(), t_grid.end());
    std::vector<double> f(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        if (!(t > 0)) throw InvalidArgument("fit grid must be positive");
        f[i] = t * partition_from_spectrum(spec, t, Tail::QHO_BOUND, tau).value / 2;
    }
    auto coeff = [&](unsigned deg) {
        const std::size_t rows = t_grid.size(), cols = deg + 1;
        if (rows < cols + 2) throw FitUnstable("grid too small for the fit degree");
        std::vector<double> a(rows * cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a[i + j * rows] = std::pow(t_grid[i] / tmax, double(j));
        try {
            auto x = lstsq(a, rows, cols, f, 1e15);
            return x[k] / std::pow(tmax, double(k));
        } catch (const IllConditioned& e) {
            throw FitUnstable(e.what());
        }
    };
    const unsigned d = std::max(k + 5, 8u);
    const double a1 = coeff(d), a2 = coeff(d + 2);
    const double scale = std::tgamma(k + 1.0) * (k % 2 ? -1.0 : 1.0);
    Estimate e{scale * a2, std::abs(scale * (a2 - a1))};
    if (!std::isfinite(e.value) || e.error > std::max(0.05 * std::abs(e.value), 1e-3))
        throw FitUnstable("fit coefficient is not stable across degrees");
    return e;
}

double qrm_zeta_nonpositive(unsigned k, const QrmParams& params, double tau) {
    if (k > 1) throw UnsupportedIndex("exact values need (RB)_k with k <= 2");
    if (params.epsilon() != 0) throw InvalidArgument("exact table is for the symmetric model");
    return -2 * rabi_bernoulli_exact(k + 1).evaluate(tau, params.g(), params.delta()) / (k + 1);
}

DerivativeReport derivative_relation_check(const std::function<double(double, double)>& zeta,
                                           double s, unsigned n, double tau, double h) {
    if (!(h > 0)) throw InvalidArgument("step must be positive");
    DerivativeReport r;
    double binom = 1;
    for (unsigned i = 0; i <= n; ++i) {
        if (i) binom = binom * (n - i + 1) / i;
        r.lhs += (i % 2 ? -1.0 : 1.0) * binom * zeta(s, tau + (0.5 * n - i) * h);
    }
    r.lhs /= std::pow(h, double(n));
    double poch = 1;
    for (unsigned i = 0; i < n; ++i) poch *= s + i;
    r.rhs = (n % 2 ? -1.0 : 1.0) * poch * zeta(s + n, tau);
    r.abs_error = std::abs(r.lhs - r.rhs);
    return r;
}

}  // namespace zetaforge::spectra
