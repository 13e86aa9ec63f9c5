#ifndef MMTHETA_VERIFY_HPP
#define MMTHETA_VERIFY_HPP

// Numerical verification engine: every identity, differential relation and
// asymptotic bound the library relies on, reported as pass/fail with
// residuals.  Checks are independent and reproducible.

#include "mmtheta/presets.hpp"
#include "mmtheta/thetaseries.hpp"

#include <complex>
#include <string>
#include <vector>

namespace mmtheta {

struct CheckReport {
    std::string check_id;
    std::string inputs;   // compact JSON record of the inputs
    double residual = 0;
    double tolerance = 0;
    bool passed = false;

    std::string json_line() const;
};

CheckReport make_report(const std::string& id, const std::string& inputs, double residual,
                        double tolerance);

// modified Laplacian v^2(d_uu + d_vv) + 1/4 by central differences with one
// Richardson extrapolation, step 1e-3 * v
std::complex<double> laplacian_fd(const std::function<std::complex<double>(std::complex<double>)>& f,
                                  std::complex<double> tau);

// image of the named series under the Laplacian against its theta identity;
// series_id in {phi, vartheta_hat, vartheta_tilde}
CheckReport check_laplacian(const std::string& series_id, const Coset& coset,
                            std::complex<double> tau, double t1, double t2, double tol);

// 4 * Laplacian(theta) = (t d/dt)^2 theta
CheckReport check_kernel_pde(const Coset& coset, std::complex<double> tau, double t, double tol);

// polynomial-weight window integral under the Laplacian (all pieces evaluated
// independently; the t-derivative side uses the weight-(1,1) theta identity)
CheckReport check_tdP(const Coset& coset, std::complex<double> tau, double t1, double t2,
                      const WeightPolynomial& P, double tol);

// per-orbit kernel identity: sum_n beta~(lambda_n sqrt v) =
// -log(eps_L) sum_n beta(lambda_n sqrt v) + c~ K0(2 pi |Q| v)
CheckReport check_prop_compare(const OrbitRep& orbit, const Coset& coset, const ScaleT& t0,
                               const std::vector<double>& v_samples, double tol);

// incomplete-K0 bound and decay checks on a grid
CheckReport check_asymptotics(double tol);

// fixed evaluation points used across the suites (documented, reproducible)
const std::vector<std::complex<double>>& verify_tau_samples();

struct SuiteConfig {
    double series_tol = 1e-8;   // pointwise series identities
    double fd_tol = 1e-4;       // finite-difference operator identities
    long cohen_max_n = 2400;
    bool parallel = true;
};

std::vector<CheckReport> suite_decomposition(const Preset& preset, const SuiteConfig& cfg = {});
std::vector<CheckReport> suite_laplacian(const Preset& preset, const SuiteConfig& cfg = {});
std::vector<CheckReport> suite_compare(const Preset& preset, const SuiteConfig& cfg = {});
std::vector<CheckReport> suite_bessel(const SuiteConfig& cfg = {});
std::vector<CheckReport> suite_cohen(const SuiteConfig& cfg = {});
std::vector<CheckReport> suite_all(const SuiteConfig& cfg = {});

} // namespace mmtheta

#endif
