#ifndef MMTHETA_COEFFS_HPP
#define MMTHETA_COEFFS_HPP

// Closed-form Fourier coefficients of the harmonic parts: the window
// indicators a_lambda(t1, t2) and the per-orbit coefficients c~_{t0}(Lambda),
// in exact (r log eps_L + 1/2 log mu) form, plus the exact telescoping
// identity between them.

#include "mmtheta/lattice.hpp"

#include <string>

namespace mmtheta {

// Value r*log(eps_L) + (1/2)*log(mu) + r2*(log eps_L)^2 with r, r2 rational
// and mu totally positive.  r2 only appears for the zero orbit.
struct ExactCoefficient {
    mpq_class r;
    QuadElem mu;
    mpq_class r2;
    double float_value = 0;
    bool exact = true; // false when only the float rendering is meaningful

    static ExactCoefficient make(const mpq_class& r, const QuadElem& mu, const mpq_class& r2,
                                 double log_epsL);

    bool same_value(const ExactCoefficient& o) const {
        return exact && o.exact && r == o.r && r2 == o.r2 && mu == o.mu;
    }
};

struct HarmonicCoefficient {
    mpq_class index;        // Fourier index Q(Lambda)
    ExactCoefficient value;
    OrbitRep orbit;
};

// Eq.-alam2 window form on embedded coordinates (float path).
// lambda != 0; boundary equalities resolved by double comparison.
double a_coefficient(std::pair<double, double> lambda_pair, double t1, double t2);

// Exact window form: 1 inside (t1^2, t2^2), 1/2 on the boundary, 0 outside.
mpq_class a_coefficient_exact(const QuadElem& lambda, const ScaleT& t1, const ScaleT& t2);

// a-coefficient of the zero vector: log(t2/t1).
double a_coefficient_zero(double t1, double t2);

// Evaluates both the sign form and the window form and reports agreement.
bool a_equivalence_check(std::pair<double, double> lambda_pair, double t1, double t2);

// Exact sum of a_{lambda_n}(t1, t2) over the Gamma_L-ladder of one orbit;
// only finitely many n contribute.
mpq_class orbit_a_sum(const OrbitRep& orbit, const ScaleT& t1, const ScaleT& t2,
                      const AnisotropicLattice& lat);

// c~_{t0}(Lambda) for a canonical orbit (throws when the representative is not
// in the canonical window of t0); handles the zero orbit.
ExactCoefficient c_tilde(const OrbitRep& orbit, const ScaleT& t0, const AnisotropicLattice& lat);

// all-float recomputation used to validate the float rendering
double c_tilde_float(double ratio, double t0, double log_epsL);

struct TelescopingReport {
    mpq_class a_sum;          // sum_n a_{lambda_n}(t1, t2), exact
    ExactCoefficient c1, c2;  // c~_{t1}, c~_{t2}
    bool holds_exactly = false;
    double float_residual = 0;
};

// Verifies -log(eps_L) * sum_n a_{lambda_n}(t1,t2) = c~_{t1} - c~_{t2} exactly
// in the (r, mu) representation.  Requires a nontrivial orbit and exact t_i.
TelescopingReport telescoping_check(const OrbitRep& orbit, const ScaleT& t1, const ScaleT& t2,
                                    const AnisotropicLattice& lat);

// JSON coefficient table for the orbits of a coset:
// [{index_num, index_den, r_num, r_den, mu:[...], float_value}, ...]
std::string coefficient_table_json(const Coset& coset, const ScaleT& t0,
                                   const mpq_class& norm_bound);

} // namespace mmtheta

#endif
