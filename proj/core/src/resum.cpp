#include "zetaforge/resum.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "zetaforge/errors.hpp"
#include "zetaforge/exact.hpp"
#include "zetaforge/specval.hpp"

namespace zetaforge::resum {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using cplx = std::complex<double>;

void require_n(unsigned n) {
    if (n < 2) throw InvalidArgument("order n must be >= 2");
}

// log|x| for a nonzero rational, safe far outside double range.
double log_abs(const exact::Rat& x) {
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
    return std::log(std::abs(mn)) - std::log(md) + (en - ed) * std::log(2.0);
}

// (-1)^k B_k / k! in double; exact enough for the t < 3 series.
const std::vector<double>& bernoulli_coeffs() {
    static const std::vector<double> a = [] {
        auto b = exact::bernoulli_numbers(160);
        std::vector<double> v;
        exact::BigInt f = 1;
        for (unsigned k = 0; k <= 160; ++k) {
            if (k) f *= k;
            double x = exact::to_double(b[k] / exact::Rat(f));
            v.push_back(k % 2 ? -x : x);
        }
        return v;
    }();
    return a;
}

struct Integral {
    double value = 0;
    double error = 0;
};

template <class F>
Integral gk(F f, double a, double b) {
    double err = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13, &err);
    if (!std::isfinite(v) || !std::isfinite(err)) throw QuadratureFailure("integral is not finite");
    return {v, err};
}

// Laplace integral (1/z) int_0^inf e^{-t/z} B(t) dt with splits at 1 and `seam`.
template <class F>
Integral laplace(F B, double z, double seam) {
    auto f = [&](double t) { return std::exp(-t / z) * B(t) / z; };
    Integral a = gk(f, 0.0, 1.0);
    Integral b = seam > 1 ? gk(f, 1.0, seam) : Integral{};
    const double t0 = std::max(1.0, seam);
    Integral c = gk(
        [&](double u) {
            const double om = 1 - u;
            const double t = t0 + u / om;
            if (!std::isfinite(t)) return 0.0;
            return f(t) / (om * om);
        },
        0.0, 1.0);
    return {a.value + b.value + c.value, a.error + b.error + c.error};
}

struct ComplexIntegral {
    cplx value;
    double error = 0;
};

template <class F>
ComplexIntegral tanh_sinh_complex(F f, double a, double b, double tol) {
    boost::math::quadrature::tanh_sinh<double> ts;
    double er = 0, ei = 0, l1 = 0;
    double re = ts.integrate([&](double x) { return f(x).real(); }, a, b, tol, &er, &l1);
    double im = ts.integrate([&](double x) { return f(x).imag(); }, a, b, tol, &ei, &l1);
    if (!std::isfinite(re) || !std::isfinite(im)) throw QuadratureFailure("integral is not finite");
    return {{re, im}, er + ei};
}

// int_0^1 (1-x)^{1-s} x^{s-2} g(x) dx. Both endpoint singularities are
// integrable but sharp, so the right half is done in u = 1 - x where tanh-sinh
// can resolve u down to the underflow threshold.
template <class G>
ComplexIntegral euler_integral(cplx s, G g, double tol) {
    auto left = tanh_sinh_complex(
        [&](double x) { return std::exp((1.0 - s) * std::log1p(-x) + (s - 2.0) * std::log(x)) * g(x); },
        0.0, 0.5, tol);
    auto right = tanh_sinh_complex(
        [&](double u) {
            return std::exp((1.0 - s) * std::log(u) + (s - 2.0) * std::log1p(-u)) * g(1 - u);
        },
        0.0, 0.5, tol);
    return {left.value + right.value, left.error + right.error};
}

cplx euler_prefactor(cplx s) { return std::sin(kPi * s) / (kPi * (1.0 - s)); }

// w zeta(2, w), tending to 1 as w grows.
double w_zeta2(double w) {
    if (w > 1e6) return 1 + 1 / (2 * w) + 1 / (6 * w * w);
    return w * specval::hurwitz_zeta_num(2.0, w);
}

}  // namespace

// ---------------------------------------------------------------- A_j^(n)

double a_nj_closed(unsigned n, unsigned j, double tau) {
    require_n(n);
    if (!(tau > 0)) throw InvalidArgument("tau must be positive");
    return std::exp(std::lgamma(j + n - 1.0) - std::lgamma(double(n)) - (j + n - 1.0) * std::log(tau));
}

double a_nj_nested(unsigned n, unsigned j, double tau) {
    require_n(n);
    if (n > 3) throw UnsupportedIndex("nested quadrature is limited to n <= 3");
    if (j < 1) throw InvalidArgument("nested form needs j >= 1");
    if (!(tau > 0)) throw InvalidArgument("tau must be positive");
    boost::math::quadrature::exp_sinh<double> es;
    const double inf = std::numeric_limits<double>::infinity();
    const double tol = 1e-12;
    std::function<double(double)> level = [&](double x) {
        return es.integrate(
            [&](double w) { return w > 745 / tau * 2 ? 0.0 : std::pow(w, j - 1.0) * std::exp(-tau * w); },
            x, inf, tol);
    };
    for (unsigned m = 2; m < n; ++m) {
        auto inner = level;
        level = [inner, &es, inf, tol](double x) {
            return es.integrate([&](double y) { return inner(y); }, x, inf, tol);
        };
    }
    return es.integrate([&](double y) { return level(y); }, 0.0, inf, tol);
}

// ------------------------------------------------------------------ traces

std::size_t DivergenceTrace::smallest_term() const {
    std::size_t best = 0;
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double a = std::abs(rows[i].term);
        if (a > 0 && a < m) {
            m = a;
            best = i;
        }
    }
    return best;
}

namespace {
void push(DivergenceTrace& tr, unsigned k, double term) {
    double prev = tr.rows.empty() ? 0.0 : tr.rows.back().partial_sum;
    tr.rows.push_back({k, term, prev + term});
}
}  // namespace

DivergenceTrace fps_hurwitz(unsigned n, double tau, unsigned K) {
    require_n(n);
    if (!(tau > 0)) throw InvalidArgument("tau must be positive");
    DivergenceTrace tr;
    tr.label = "hurwitz";
    auto b = exact::bernoulli_numbers(K);
    exact::BigInt f = 1;
    const double lt = std::log(tau), lgn = std::lgamma(double(n));
    for (unsigned k = 0; k <= K; ++k) {
        if (k) f *= k;
        if (b[k] == 0) {
            push(tr, k, 0.0);
            continue;
        }
        exact::Rat a = b[k] / exact::Rat(f);
        const double sign = ((k % 2) ? -1.0 : 1.0) * (a > 0 ? 1.0 : -1.0);
        push(tr, k, sign * std::exp(log_abs(a) + std::lgamma(k + n - 1.0) - lgn - (k + n - 1.0) * lt));
    }
    return tr;
}

DivergenceTrace fps_qrm(unsigned n, double tau, const std::vector<double>& rb) {
    require_n(n);
    if (!(tau > 0)) throw InvalidArgument("tau must be positive");
    DivergenceTrace tr;
    tr.label = "qrm";
    const double lt = std::log(tau), lgn = std::lgamma(double(n));
    for (unsigned k = 0; k < rb.size(); ++k) {
        double mag = std::exp(std::lgamma(k + n - 1.0) - lgn - std::lgamma(k + 1.0) - (k + n - 1.0) * lt);
        push(tr, k, 2 * ((k % 2) ? -1.0 : 1.0) * rb[k] * mag);
    }
    return tr;
}

DivergenceTrace fps_ncho(unsigned n, double tau, const spectra::HeatTraceFit& fit) {
    require_n(n);
    if (!(tau > 0)) throw InvalidArgument("tau must be positive");
    DivergenceTrace tr;
    tr.label = "ncho";
    tr.conjecture_support = true;
    push(tr, 0, fit.c_minus1 / ((n - 1.0) * std::pow(tau, n - 1.0)));
    const double lt = std::log(tau), lgn = std::lgamma(double(n));
    for (std::size_t m = 1; m <= fit.odd_coeffs.size(); ++m) {
        const double e = 2.0 * m + n - 1;
        push(tr, static_cast<unsigned>(2 * m),
             fit.odd_coeffs[m - 1] * std::exp(std::lgamma(e) - lgn - e * lt));
    }
    return tr;
}

// ------------------------------------------------------------------- Borel

double borel_transform_hurwitz(unsigned n, double t, BorelBranch branch) {
    require_n(n);
    if (!(t >= 0)) throw InvalidArgument("t must be >= 0");
    if (branch == BorelBranch::AUTO)
        branch = t < 0.5 ? BorelBranch::BERNOULLI_SERIES : BorelBranch::EXPONENTIAL_SUM;

    if (branch == BorelBranch::BERNOULLI_SERIES) {
        if (t > 3) throw DomainViolated("Bernoulli series branch needs t <= 3");
        const auto& a = bernoulli_coeffs();
        double sum = 0, binom = 1, tk = 1;  // binom(k+n-2, k)
        for (unsigned k = 0; k < a.size(); ++k) {
            if (k) {
                binom = binom * (k + n - 2) / k;
                tk *= t;
            }
            double term = a[k] * binom * tk;
            sum += term;
            if (k > 8 && std::abs(term) < 1e-18 * std::abs(sum) && a[k] != 0) break;
        }
        return sum / (n - 1);
    }

    if (t <= 0) throw DomainViolated("exponential sum branch needs t > 0");
    // sum_m d^{n-2}[t^{n-1} e^{-mt}] / (n-1)!
    const unsigned d = n - 2;
    std::vector<double> c(d + 1);  // binom(d,i) / (n-1-i)!
    for (unsigned i = 0; i <= d; ++i)
        c[i] = std::exp(std::lgamma(d + 1.0) - std::lgamma(i + 1.0) - std::lgamma(d - i + 1.0) -
                        std::lgamma(n - i + 0.0));
    double sum = 0;
    for (unsigned m = 0;; ++m) {
        const double e = std::exp(-double(m) * t);
        double inner = 0, bound = 0;
        for (unsigned i = 0; i <= d; ++i) {
            double v = c[i] * std::pow(t, double(n - 1 - i)) * std::pow(double(m), double(d - i));
            inner += ((d - i) % 2 ? -v : v);
            bound += v;
        }
        sum += inner * e;
        // inner can vanish at isolated m, so stop on the bound, not the term
        if (m > 2 && bound * e < 1e-19 * std::abs(sum)) break;
        if (m > 100000) throw NotConverged("exponential sum did not converge");
    }
    return sum;
}

BorelReport borel_sum_hurwitz(unsigned n, double z, double tol) {
    require_n(n);
    if (!(z > 0)) throw InvalidArgument("z must be positive");
    BorelReport r;
    r.z = z;
    auto I = laplace([n](double t) { return borel_transform_hurwitz(n, t); }, z, 0.0);
    r.borel_sum = I.value;
    r.quadrature_error = I.error;
    r.reference_value = std::pow(z, 1.0 - n) * specval::hurwitz_zeta_num(double(n), 1 / z);
    r.agreement = std::abs(r.borel_sum - r.reference_value) <= std::max(tol, 3 * r.quadrature_error);
    return r;
}

std::complex<double> borel_transform_fractional(std::complex<double> s, double t) {
    if (!(s.real() > 1 && s.real() < 2)) throw OutOfStrip("need 1 < Re s < 2");
    if (!(t >= 0)) throw InvalidArgument("t must be >= 0");
    if (t <= 3) {
        // c_k = Gamma(k+s-1) / (k! Gamma(s))
        const auto& a = bernoulli_coeffs();
        cplx sum = 0, c = 1.0 / (s - 1.0);
        double tk = 1;
        for (unsigned k = 0; k < a.size(); ++k) {
            if (k) {
                c *= (double(k) + s - 2.0) / double(k);
                tk *= t;
            }
            cplx term = a[k] * c * tk;
            sum += term;
            if (k > 8 && a[k] != 0 && std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    auto I = euler_integral(s, [t](double x) { return x / -std::expm1(-t * x); }, 1e-13);
    return euler_prefactor(s) * t * I.value;
}

ComplexBorelReport borel_sum_complex_s(std::complex<double> s, double z, double tol) {
    if (!(s.real() > 1 && s.real() < 2)) throw OutOfStrip("need 1 < Re s < 2");
    if (!(z > 0)) throw InvalidArgument("z must be positive");
    ComplexBorelReport r;
    r.s = s;
    r.z = z;

    auto X = euler_integral(s, [z](double x) { return w_zeta2(1 / (x * z)); }, 1e-12);
    r.x_route = euler_prefactor(s) * X.value;

    auto re = laplace([&](double t) { return borel_transform_fractional(s, t).real(); }, z, 3.0);
    Integral im{};
    if (s.imag() != 0)
        im = laplace([&](double t) { return borel_transform_fractional(s, t).imag(); }, z, 3.0);
    r.laplace_route = {re.value, im.value};

    r.quadrature_error = std::abs(euler_prefactor(s)) * X.error + re.error + im.error;
    r.route_difference = std::abs(r.x_route - r.laplace_route);
    r.hurwitz_value = std::pow(cplx(z), 1.0 - s) * specval::hurwitz_zeta_num(s, 1 / z);
    r.agreement = r.route_difference <= std::max(tol, 3 * r.quadrature_error);
    return r;
}

}  // namespace zetaforge::resum
