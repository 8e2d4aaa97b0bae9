#include "zetaforge/specval.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "integrate.hpp"
#include "zetaforge/aperynum.hpp"
#include "zetaforge/errors.hpp"
#include "zetaforge/exact.hpp"

namespace zetaforge::specval {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(double x) {
    std::ostringstream os;
    os << std::hexfloat << x;
    return os.str();
}

}  // namespace

NchoParams::NchoParams(double alpha, double beta) : a_(alpha), b_(beta) {
    if (!(alpha > 0) || !(beta > 0) || !(alpha * beta > 1))
        throw InvalidArgument("NCHO needs alpha, beta > 0 and alpha*beta > 1");
}

double NchoParams::kappa() const { return 1 / std::sqrt(a_ * b_ - 1); }

double NchoParams::residue() const { return (a_ + b_) / std::sqrt(a_ * b_ * (a_ * b_ - 1)); }

double NchoParams::asymmetry() const { return (a_ - b_) / (a_ + b_); }

double NchoParams::slope_min() const { return std::min(a_, b_) * std::sqrt(1 - 1 / (a_ * b_)); }

double NchoParams::slope_max() const { return std::max(a_, b_) * std::sqrt(1 - 1 / (a_ * b_)); }

const char* method_name(Method m) {
    switch (m) {
        case Method::TENSOR_GAUSS: return "TENSOR_GAUSS";
        case Method::MONTE_CARLO: return "MONTE_CARLO";
        case Method::QMC: return "QMC";
    }
    return "?";
}

// ------------------------------------------------------------- Hurwitz zeta

std::complex<double> hurwitz_zeta_num(std::complex<double> s, double tau) {
    if (s == std::complex<double>(1, 0)) throw PoleAtOne("zeta(s, tau) has a pole at s = 1");
    if (!(tau > 0)) throw InvalidArgument("Hurwitz zeta needs tau > 0");
    static const std::vector<double> b2j = [] {
        std::vector<double> v;
        exact::Rat fact = 1;
        for (unsigned j = 1; j <= 10; ++j) {
            fact *= (2 * j - 1) * (2 * j);
            v.push_back(exact::to_double(exact::bernoulli_number(2 * j) / fact));
        }
        return v;
    }();

    const int M = std::max(20, static_cast<int>(std::ceil(std::abs(s))) + 20);
    std::complex<double> head = 0, comp = 0;
    for (int n = M - 1; n >= 0; --n) {  // small terms first
        std::complex<double> t = std::pow(n + tau, -s);
        std::complex<double> y = t - comp;
        std::complex<double> z = head + y;
        comp = (z - head) - y;
        head = z;
    }
    const double x = M + tau;
    std::complex<double> xs = std::pow(x, -s);
    std::complex<double> tail = x * xs / (s - 1.0) + 0.5 * xs;
    std::complex<double> poch = s;  // (s)_{2j-1}
    double xpow = 1 / x;
    for (std::size_t j = 0; j < b2j.size(); ++j) {
        tail += b2j[j] * poch * xs * xpow;
        poch *= (s + double(2 * j + 1)) * (s + double(2 * j + 2));
        xpow /= x * x;
    }
    return head + tail;
}

double hurwitz_zeta_num(double s, double tau) { return hurwitz_zeta_num(std::complex<double>(s, 0), tau).real(); }

// ----------------------------------------------------------------------- 2F1

namespace {

double hyp2f1_series(double a, double b, double c, double x) {
    double sum = 1, term = 1;
    for (int n = 0; n < 10000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && n > 2) return sum;
    }
    throw NotConverged("2F1 series did not converge");
}

}  // namespace

double hyp2f1(double a, double b, double c, double x) {
    if (x >= 1) throw DomainViolated("2F1 series needs x < 1");
    if (x < -0.5) return std::pow(1 - x, -a) * hyp2f1_series(a, c - b, c, x / (x - 1));
    return hyp2f1_series(a, b, c, x);
}

// -------------------------------------------------------------- R_{k,1} series

SeriesValue r_k1_series(unsigned k, double kappa, unsigned n_max) {
    if (k < 2 || k > 4) throw UnsupportedIndex("R_{k,1} series for k in 2..4");
    if (!(kappa >= 0) || kappa >= 1) throw SeriesRegimeViolated("series needs 0 <= kappa < 1");
    const double hz2 = hurwitz_zeta_num(2.0, 0.5), hz3 = hurwitz_zeta_num(3.0, 0.5),
                 hz4 = hurwitz_zeta_num(4.0, 0.5);
    const double k2 = kappa * kappa;
    double sum = 0, pw = 1, last = 0;
    for (unsigned n = 0; n <= n_max; ++n) {
        auto j = aperynum::aperylike_J(k, n);
        exact::Rat bh = exact::binom_general(exact::make_rat(-1, 2), n);
        aperynum::ZetaCombo scaled = bh * j;
        double term = scaled.evaluate(hz2, hz3, hz4) * pw;
        sum += term;
        last = std::abs(term);
        pw *= k2;
        if (pw == 0) break;
    }
    return {sum, last};
}

// ------------------------------------------------------------ integrands

namespace {

// Integrands are written in w with u = 1 - w^2 on each axis, which removes
// the edge singularity at u = 1; the Jacobian prod 2 w is included. All
// "1 - product" factors go through expm1/log1p to keep relative accuracy near
// the corner.
struct Axes {
    std::array<double, 4> L{};  // log u_i
    double jac = 1;
    explicit Axes(const double* w, unsigned dim) {
        for (unsigned i = 0; i < dim; ++i) {
            L[i] = std::log1p(-w[i] * w[i]);
            jac *= 2 * w[i];
        }
    }
    // 1 - (u_i ... u_j)^p over the index range [i, j)
    double om(unsigned i, unsigned j, double p) const {
        double s = 0;
        for (unsigned t = i; t < j; ++t) s += L[t];
        return -std::expm1(p * s);
    }
};

using Integrand = double (*)(const double* w, double k2);

double r21(const double* w, double k2) {
    Axes x(w, 2);
    double a = x.om(0, 2, 2);
    return x.jac * 4 / std::sqrt(a * a + k2 * x.om(0, 1, 4) * x.om(1, 2, 4));
}

double r31(const double* w, double k2) {
    Axes x(w, 3);
    double a = x.om(0, 3, 2);
    return x.jac * 24 / std::sqrt(a * a + k2 * x.om(0, 1, 4) * x.om(1, 3, 4));
}

double r41(const double* w, double k2) {
    Axes x(w, 4);
    double a = x.om(0, 4, 2);
    double t1 = 64 / std::sqrt(a * a + k2 * x.om(0, 1, 4) * x.om(1, 4, 4));
    double t2 = 32 / std::sqrt(a * a + k2 * x.om(0, 2, 4) * x.om(2, 4, 4));
    return x.jac * (t1 + t2);
}

struct ABC {
    double a, b, c, jac;
    explicit ABC(const double* w) {
        Axes x(w, 4);
        a = x.om(0, 4, 2);
        b = x.om(0, 2, 4) * x.om(2, 4, 4);
        c = x.om(0, 1, 4) * x.om(1, 2, 4) * x.om(2, 3, 4) * x.om(3, 4, 4);
        jac = x.jac;
    }
};

double r42(const double* w, double k2) {
    ABC v(w);
    return v.jac * 16 / std::sqrt(v.a * v.a + k2 * v.b + (k2 + k2 * k2) * v.c);
}

QuadratureResult integrate(const std::string& op, const std::string& params, unsigned dim,
                           const std::function<double(const double*)>& f, Method method,
                           const Budget& budget) {
    QuadratureResult r;
    r.method = method;
    r.seed = budget.seed;
    std::uint64_t key = rng::stream_key(op, params, budget.seed);
    detail::SampleStats st;
    switch (method) {
        case Method::MONTE_CARLO: {
            st = detail::monte_carlo(key, budget.samples, [&](rng::Stream& s) {
                std::array<double, 8> w;
                for (unsigned d = 0; d < dim; ++d) w[d] = s.uniform();
                return f(w.data());
            });
            break;
        }
        case Method::QMC: st = detail::shifted_lattice(key, budget.samples, dim, f); break;
        case Method::TENSOR_GAUSS: st = detail::tensor_gauss(dim, f); break;
    }
    r.value = st.mean;
    r.std_error = st.std_error;
    r.nodes = st.n;
    return r;
}

}  // namespace

QuadratureResult r_kj_quadrature(unsigned k, unsigned j, double kappa, Method method,
                                 const Budget& budget) {
    if (!(kappa >= 0)) throw InvalidArgument("kappa must be >= 0");
    Integrand g = nullptr;
    if (k == 2 && j == 1) g = r21;
    else if (k == 3 && j == 1) g = r31;
    else if (k == 4 && j == 1) g = r41;
    else if (k == 4 && j == 2) g = r42;
    else throw UnsupportedIndexPair("R_{k,j} integrand is only known for (2,1), (3,1), (4,1), (4,2)");
    const double k2 = kappa * kappa;
    std::ostringstream params;
    params << k << "," << j << "," << fmt(kappa);
    return integrate("r_kj", params.str(), k, [g, k2](const double* w) { return g(w, k2); }, method,
                     budget);
}

QuadratureResult zetaQ_special(unsigned k, const NchoParams& p, Method method, const Budget& budget) {
    if (k < 2 || k > 4) throw UnsupportedIndexPair("zeta_Q(k) assembled for k in 2..4");
    const double pref = 2 * std::pow(p.residue() / 2, k);
    const double r2 = p.asymmetry() * p.asymmetry();
    QuadratureResult out;
    out.method = method;
    out.seed = budget.seed;
    double inner = hurwitz_zeta_num(static_cast<double>(k), 0.5);
    double var = 0;
    if (r2 > 0) {
        for (unsigned j = 1; 2 * j <= k; ++j) {
            QuadratureResult rk = r_kj_quadrature(k, j, p.kappa(), method, budget);
            double w = std::pow(r2, j);
            inner += w * rk.value;
            var += (w * rk.std_error) * (w * rk.std_error);
            out.nodes += rk.nodes;
        }
    }
    out.value = pref * inner;
    out.std_error = pref * std::sqrt(var);
    return out;
}

double zetaQ2_closed(const NchoParams& p) {
    double f = hyp2f1(0.25, 0.75, 1, -p.kappa() * p.kappa());
    double r = p.asymmetry();
    double lead = kPi * p.residue() / 2;
    return lead * lead * (1 + r * r * f * f);
}

// ------------------------------------------------------- A and B integrals

QuadratureResult appendixB_integral(AppendixB which, unsigned n, unsigned kj, Method method,
                                    const Budget& budget) {
    if (kj > n) throw InvalidArgument("need 0 <= k <= n");
    if (n > 3) throw InvalidArgument("A_{n,k}, B_{n,j} limited to n <= 3");
    std::ostringstream params;
    params << (which == AppendixB::A ? "A" : "B") << "," << n << "," << kj;
    auto f = [which, n, kj](const double* w) {
        ABC v(w);
        double num = which == AppendixB::A ? std::pow(v.b + v.c, n - kj) * std::pow(v.c, kj)
                                           : std::pow(v.b, n - kj) * std::pow(v.c, kj);
        return v.jac * num / std::pow(v.a, 2 * n + 1);
    };
    return integrate("appendixB", params.str(), 4, f, method, budget);
}

double appendixB_exact(AppendixB which, unsigned n, unsigned kj) {
    const double p2 = kPi * kPi, p4 = p2 * p2;
    if (n == 0 && kj == 0) return p4 / 96;
    if (n == 1 && kj == 1) return p4 / 128 - 9 * p2 / 256;
    if (n == 1 && kj == 0)
        return which == AppendixB::A ? p4 / 64 - p2 / 64 : p4 / 128 + 5 * p2 / 256;
    throw TableExhausted("exact A_{n,k}, B_{n,j} known only for n <= 1");
}

double r42_series(double t, unsigned n_max) {
    if (n_max > 1) throw TableExhausted("exact A_{n,k} table stops at n = 1");
    double s = appendixB_exact(AppendixB::A, 0, 0);
    if (n_max >= 1)
        s += -0.5 * (appendixB_exact(AppendixB::A, 1, 0) * t + appendixB_exact(AppendixB::A, 1, 1) * t * t);
    return 16 * s;
}

}  // namespace zetaforge::specval
