#ifndef MMTHETA_SPECFUN_HPP
#define MMTHETA_SPECFUN_HPP

// Numerical special functions: K0 and the incomplete K0 integral, the beta
// kernels of the non-harmonic parts, the periodic Bernoulli polynomial, and
// adaptive quadrature with error estimates.

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <utility>

namespace mmtheta {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 60;
};

struct QuadResult {
    double value = 0;
    double error = 0; // accumulated error estimate
};

// Adaptive Simpson on [a, b].
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec = {});

// Modified Bessel function K0; K0(0) := 0 by convention, negative x rejected.
// Fast path: classical power series for x <= 2, Temme continued fraction for
// x > 2; both are cross-validated against the defining integral in the tests.
double bessel_k0(double x);

// Oracle path: direct quadrature of the defining integral of K0 with the
// integrand e^{-x cosh T}.
double bessel_k0_integral(double x, const QuadratureSpec& spec = {});

// Incomplete integral K0(x; a) = sgn(a) * int_{|a|}^inf e^{-x cosh T} dT.
double bessel_k0_incomplete(double x, double a, const QuadratureSpec& spec = {});

// beta_{t0}(w) for w = (w1, w2): the closed form (1/2) K0(2 pi |w1 w2|; log(t0^2 |w2/w1|)),
// 0 when w_{t0}^- w_{t0}^+ = 0, direct quadrature in the isotropic w1 w2 = 0 case.
double beta_kernel(std::pair<double, double> w, double t0, const QuadratureSpec& spec = {});

// Direct quadrature of the defining integral of beta_{t0} (oracle path).
double beta_kernel_integral(std::pair<double, double> w, double t0,
                            const QuadratureSpec& spec = {});

// beta~_{t0}(w) = e^{-2 pi Q0(w)} int_{t0}^{t0 epsL} e^{-4 pi (w_t^-)^2} log(t) dt/t.
double beta_tilde_kernel(std::pair<double, double> w, double t0, double eps_L_value,
                         const QuadratureSpec& spec = {});

// First periodic Bernoulli polynomial: frac(x) - 1/2, and 0 at integers.
double periodic_bernoulli_b1(double x);
mpq_class periodic_bernoulli_b1_exact(const mpq_class& x);

} // namespace mmtheta

#endif
