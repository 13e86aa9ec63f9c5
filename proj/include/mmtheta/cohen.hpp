#ifndef MMTHETA_COHEN_HPP
#define MMTHETA_COHEN_HPP

// The arithmetic side of the weight-0 Maass form phi_0: counting Pell-orbit
// classes T(n), the sigma / sigma* q-hypergeometric expansions, their
// generating identity, and the assembly of phi_0 from the lattice side.

#include "mmtheta/presets.hpp"
#include "mmtheta/qseries.hpp"
#include "mmtheta/thetaseries.hpp"

#include <string>
#include <vector>

namespace mmtheta {

struct PellCount {
    long n = 0;          // n = 1 mod 24
    long count_pm1 = 0;  // orbits with x + 3y = +-1 mod 12
    long count_pm5 = 0;  // orbits with x + 3y = +-5 mod 12
    long t_value = 0;    // T(n) = count_pm1 - count_pm5
};

// T(n) by enumerating solutions of x^2 - 6y^2 = n in a fundamental domain for
// the unit action (|xi/xi'| in [1, eps^2), signs folded together).
PellCount pell_t(long n);

// sigma(q) = 1 + q - q^2 + 2q^3 - ... from the finite-product representation;
// the alternative representation is exposed for cross-checking.
QSeries sigma_expansion(long order);
QSeries sigma_expansion_alt(long order);
QSeries sigma_star_expansion(long order);
QSeries sigma_star_expansion_alt(long order);

struct IdentityReport {
    long max_abs_n = 0;
    long checked = 0;
    long mismatches = 0;
    bool passed = false;
};

// T(n) == sigma/sigma* coefficient for all n = 1 mod 24 with |n| <= max_abs_n
IdentityReport generating_identity_check(long max_abs_n);

struct Phi0Value {
    SeriesValue via_lattice;  // vartheta_{L+1/2} - vartheta_{L+7/2} (unfolded form)
    SeriesValue via_pell;     // sqrt(v) sum T(n) e(nu/24) K0(2 pi |n| v / 24)
    double difference = 0;
};

// Both constructions of phi_0 at tau; they must agree to tol.
Phi0Value phi0_assembly(std::complex<double> tau, double tol = 1e-10);

// The reference table of nonzero window coefficients a_lambda(1, eps) for the
// cohen lattice, ideals of norm < 100: (|Nm(2 lambda)|, beta = 2 lambda,
// coset name, a).  `table1_computed` derives the same data from
// enumerate_orbits; the two must agree entry for entry.
struct WindowTableEntry {
    long norm;
    QuadElem beta;
    std::string coset;
    mpq_class a;
};
std::vector<WindowTableEntry> table1_reference();
std::vector<WindowTableEntry> table1_computed(const Preset& cohen, const mpq_class& ideal_norm_bound);

} // namespace mmtheta

#endif
