#include "mmtheta/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mmtheta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct SimpsonState {
    const std::function<double(double)>* f;
    QuadratureSpec spec;
    double err = 0;
};

double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                   double whole, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = (*st.f)(lm), frm = (*st.f)(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    double tol = std::max(st.spec.abs_tol, st.spec.rel_tol * std::abs(left + right));
    if (depth >= st.spec.max_depth || std::abs(delta) <= 15 * tol) {
        st.err += std::abs(delta) / 15;
        return left + right + delta / 15;
    }
    return simpson_rec(st, a, m, fa, flm, fm, left, depth + 1) +
           simpson_rec(st, m, b, fm, frm, fb, right, depth + 1);
}

} // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec) {
    if (spec.abs_tol <= 0 || spec.rel_tol <= 0 || spec.max_depth < 10)
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive, max_depth >= 10");
    if (a == b) return {0.0, 0.0};
    SimpsonState st{&f, spec, 0.0};
    // split once up front so the first error estimate is meaningful
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    double v = simpson_rec(st, a, b, fa, fm, fb, whole, 0);
    return {v, st.err};
}

namespace {

// power series around 0, full double accuracy for x <= 2
double k0_series(double x) {
    double x2 = 0.25 * x * x;
    double i0 = 1.0, sum = 0.0, term = 1.0, hk = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= x2 / (static_cast<double>(k) * k);
        i0 += term;
        hk += 1.0 / k;
        sum += term * hk;
        if (term * (hk + 1) < 1e-19 * (std::abs(sum) + 1)) break;
    }
    return -(std::log(0.5 * x) + kEulerGamma) * i0 + sum;
}

// Temme continued fraction (CF2), full double accuracy for x >= 2
double k0_cf2(double x) {
    const double eps = std::numeric_limits<double>::epsilon();
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 20000; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    return std::sqrt(kPi / (2 * x)) * std::exp(-x) / s;
}

// upper integration limit: beyond it e^{-x cosh T} is below target underflow
double cosh_cutoff(double x, double log_tail) {
    double c = 1.0 + log_tail / x;
    return std::acosh(std::max(c, 1.0 + 1e-12)) + 1.0;
}

} // namespace

double bessel_k0(double x) {
    if (x < 0) throw std::domain_error("bessel_k0: negative argument");
    if (x == 0) return 0.0; // convention
    if (x > 740) return 0.0; // below double underflow
    return x <= 2.0 ? k0_series(x) : k0_cf2(x);
}

double bessel_k0_integral(double x, const QuadratureSpec& spec) {
    if (x <= 0) throw std::domain_error("bessel_k0_integral: x must be positive");
    double tmax = cosh_cutoff(x, 45.0);
    QuadratureSpec s = spec;
    s.abs_tol = std::min(spec.abs_tol, 1e-14 * std::exp(-x));
    return adaptive_simpson([x](double t) { return std::exp(-x * std::cosh(t)); }, 0.0, tmax, s)
        .value;
}

double bessel_k0_incomplete(double x, double a, const QuadratureSpec& spec) {
    if (x <= 0) throw std::domain_error("bessel_k0_incomplete: x must be positive");
    if (a == 0) return 0.0;
    double lo = std::abs(a);
    double hi = std::max(lo + 1e-12, cosh_cutoff(x, 45.0 + std::max(0.0, x * std::cosh(lo) - x)));
    if (x * std::cosh(lo) > 740) return 0.0;
    QuadratureSpec s = spec;
    s.abs_tol = std::min(spec.abs_tol, 1e-14 * std::exp(-x * std::cosh(lo)) + 1e-300);
    double v = adaptive_simpson([x](double t) { return std::exp(-x * std::cosh(t)); }, lo, hi, s)
                   .value;
    return a > 0 ? v : -v;
}

double beta_kernel(std::pair<double, double> w, double t0, const QuadratureSpec& spec) {
    auto [w1, w2] = w;
    if (w1 == 0 && w2 == 0) throw std::domain_error("beta_kernel: w = 0");
    if (!(t0 > 0)) throw std::invalid_argument("beta_kernel: t0 must be positive");
    if (w1 == 0 || w2 == 0) return beta_kernel_integral(w, t0, spec); // isotropic direction
    double arg = std::log(t0 * t0 * std::abs(w2 / w1));
    if (arg == 0) return 0.0; // w_{t0}^- w_{t0}^+ = 0
    return 0.5 * bessel_k0_incomplete(2 * kPi * std::abs(w1 * w2), arg, spec);
}

double beta_kernel_integral(std::pair<double, double> w, double t0, const QuadratureSpec& spec) {
    auto [w1, w2] = w;
    if (w1 == 0 && w2 == 0) throw std::domain_error("beta_kernel_integral: w = 0");
    // exponent combined for stability: 2 pi Q0(w) + 4 pi (w_t^-)^2 = pi (w1^2/t^2 + w2^2 t^2)
    auto integrand = [w1, w2](double nu) {
        double e1 = w1 * std::exp(-nu), e2 = w2 * std::exp(nu);
        return std::exp(-kPi * (e1 * e1 + e2 * e2));
    };
    double nu0 = std::log(t0);
    double pm = (-w1 / t0 + w2 * t0) * (w1 / t0 + w2 * t0); // w_{t0}^- w_{t0}^+ times 4
    if (pm == 0) return 0.0;
    if (pm > 0) {
        // integrate upward until the integrand is negligible
        double hi = nu0 + 2;
        while (integrand(hi) > 1e-320 && hi < nu0 + 600) hi += 2;
        return adaptive_simpson(integrand, nu0, hi, spec).value;
    }
    double lo = nu0 - 2;
    while (integrand(lo) > 1e-320 && lo > nu0 - 600) lo -= 2;
    return -adaptive_simpson(integrand, lo, nu0, spec).value;
}

double beta_tilde_kernel(std::pair<double, double> w, double t0, double eps_L_value,
                         const QuadratureSpec& spec) {
    auto [w1, w2] = w;
    if (!(t0 > 0) || !(eps_L_value > 1))
        throw std::invalid_argument("beta_tilde_kernel: bad window");
    double nu0 = std::log(t0), nu1 = nu0 + std::log(eps_L_value);
    if (w1 == 0 && w2 == 0) return 0.5 * (nu1 * nu1 - nu0 * nu0);
    auto integrand = [w1, w2](double nu) {
        double e1 = w1 * std::exp(-nu), e2 = w2 * std::exp(nu);
        return std::exp(-kPi * (e1 * e1 + e2 * e2)) * nu;
    };
    return adaptive_simpson(integrand, nu0, nu1, spec).value;
}

double periodic_bernoulli_b1(double x) {
    double fr = x - std::floor(x);
    if (fr == 0) return 0.0;
    return fr - 0.5;
}

mpq_class periodic_bernoulli_b1_exact(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    mpq_class fr = x - mpq_class(fl);
    if (fr == 0) return mpq_class(0);
    return fr - mpq_class(1, 2);
}

} // namespace mmtheta
