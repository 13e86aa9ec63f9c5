#ifndef MMTHETA_THETASERIES_HPP
#define MMTHETA_THETASERIES_HPP

// Evaluation of the generating series attached to a lattice coset with
// controlled truncation error: the Siegel theta kernel theta(tau, t), its
// weight-(1,1) variant, window integrals over the Grassmannian parameter,
// their unfolded Fourier forms, and the harmonic/non-harmonic split series.

#include "mmtheta/coeffs.hpp"
#include "mmtheta/lattice.hpp"
#include "mmtheta/specfun.hpp"

#include <complex>
#include <string>
#include <vector>

namespace mmtheta {

struct EvalPoint {
    double u = 0;
    double v = 1;   // tau = u + iv, v > 0
    double t = 1;   // Grassmannian parameter, t > 0
};

struct SeriesValue {
    std::complex<double> value{0, 0};
    double tail_bound = 0;  // rigorous lattice-sum truncation remainder
    double quad_error = 0;  // quadrature error estimate, when applicable
};

class WeightPolynomial {
public:
    WeightPolynomial() : coef_{1.0} {}
    explicit WeightPolynomial(std::vector<std::complex<double>> coef);

    long degree() const { return static_cast<long>(coef_.size()) - 1; }
    std::complex<double> eval(double x) const;
    WeightPolynomial derivative() const;
    static WeightPolynomial monomial(int k); // X^k

private:
    std::vector<std::complex<double>> coef_;
};

// sqrt(v) * sum_{lambda in L+h} e(Q(lambda) u) exp(-2 pi v ((l_t^+)^2 + (l_t^-)^2))
SeriesValue siegel_theta(const Coset& coset, const EvalPoint& pt, double tol = 1e-12);

// v^{3/2} * sum lambda_t^+ lambda_t^- e(Q u) exp(-2 pi v (...))
SeriesValue theta_11(const Coset& coset, const EvalPoint& pt, double tol = 1e-12);

// integral of theta(tau, t) dt/t over [t1, t2] by adaptive quadrature
SeriesValue vartheta_hat_quadrature(const Coset& coset, std::complex<double> tau, double t1,
                                    double t2, const QuadratureSpec& spec = {});

// unfolded Fourier form, valid when t2/t1 is an exact power of eps_L:
// sqrt(v) * k * [ sum_orbits e(Qu) K0(2 pi |Q| v) + log(eps_L) (zero orbit, h in L) ]
SeriesValue vartheta_fourier(const Coset& coset, std::complex<double> tau, const ScaleT& t1,
                             const ScaleT& t2, double tol = 1e-12);

// harmonic part sqrt(v) sum_lambda a_lambda(t1,t2) e(Qu) K0(2 pi |Q| v); the
// zero term is rendered as sqrt(v) log(t2/t1)
SeriesValue vartheta_hat_plus(const Coset& coset, std::complex<double> tau, const ScaleT& t1,
                              const ScaleT& t2, double tol = 1e-12);

// non-harmonic part sqrt(v) sum_lambda beta_{t0}(lambda sqrt v) e(Qu); the
// exact form of t0 decides window-boundary terms exactly
SeriesValue phi_c0(const Coset& coset, std::complex<double> tau, const ScaleT& t0,
                   double tol = 1e-12);
SeriesValue phi_c0(const Coset& coset, std::complex<double> tau, double t0, double tol = 1e-12);

// integral of theta(tau, t) log(t) dt/t over [t0, t0 eps_L]
SeriesValue vartheta_tilde(const Coset& coset, std::complex<double> tau, double t0,
                           const QuadratureSpec& spec = {});

// harmonic form sqrt(v) sum_orbits c~_{t0}(Lambda) e(Qu) K0(2 pi |Q| v), zero
// orbit rendered as sqrt(v) c~_{t0}(0)
SeriesValue vartheta_tilde_plus(const Coset& coset, std::complex<double> tau, const ScaleT& t0,
                                double tol = 1e-12);

// integral of theta(tau, e^nu) P(nu) d nu over [log t1, log t2]
SeriesValue vartheta_hat_P(const Coset& coset, std::complex<double> tau, double t1, double t2,
                           const WeightPolynomial& P, const QuadratureSpec& spec = {});

// JSON evaluation record {series, coset, tau, t, value, tail_bound, quad_error}
std::string series_value_json(const std::string& series, const Coset& coset,
                              std::complex<double> tau, const std::vector<double>& ts,
                              const SeriesValue& val);

} // namespace mmtheta

#endif
