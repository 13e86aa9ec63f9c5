#include "mmtheta/thetaseries.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mmtheta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kTermBudget = 10000000;

struct Kahan {
    std::complex<double> sum{0, 0}, c{0, 0};
    void add(std::complex<double> x) {
        std::complex<double> y = x - c;
        std::complex<double> t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct Grid {
    double h1, h2;          // embedded coset representative
    double u11, u12;        // embedded basis vector 1 (lambda, lambda')/sqrt(AM)
    double u21, u22;
    double detmag;          // |u11 u22 - u21 u12|
    double qmin;            // minimal nonzero |Q| on L* (1/level)
    double epsv;            // eps_L as a real number
};

Grid grid_for(const Coset& coset) {
    const auto& lat = coset.lattice();
    Grid g{};
    std::tie(g.h1, g.h2) = embed(lat, coset.h());
    std::tie(g.u11, g.u12) = embed(lat, lat.basis1());
    std::tie(g.u21, g.u22) = embed(lat, lat.basis2());
    g.detmag = std::abs(g.u11 * g.u22 - g.u21 * g.u12);
    g.qmin = 1.0 / lat.level().get_d();
    g.epsv = lat.eps_L().eps_L.to_double();
    return g;
}

// Gram-Schmidt norms (a1, a2) of a Gauss-reduced basis of the lattice
// y = sqrt(pi v) (lambda1/t, lambda2 t); used for rigorous tail bounds.
std::pair<double, double> reduced_cell(const Grid& g, double v, double t) {
    double s = std::sqrt(kPi * v);
    double f1[2] = {s * g.u11 / t, s * g.u12 * t};
    double f2[2] = {s * g.u21 / t, s * g.u22 * t};
    auto dot = [](const double* a, const double* b) { return a[0] * b[0] + a[1] * b[1]; };
    for (int it = 0; it < 500; ++it) {
        if (dot(f1, f1) > dot(f2, f2)) {
            std::swap(f1[0], f2[0]);
            std::swap(f1[1], f2[1]);
        }
        double mu = std::round(dot(f1, f2) / dot(f1, f1));
        if (mu == 0) break;
        f2[0] -= mu * f1[0];
        f2[1] -= mu * f1[1];
    }
    double n1 = std::sqrt(dot(f1, f1));
    double proj = dot(f1, f2) / dot(f1, f1);
    double o2[2] = {f2[0] - proj * f1[0], f2[1] - proj * f1[1]};
    double n2 = std::sqrt(dot(o2, o2));
    return {n1, n2};
}

// bound for the sum over lattice points |y| > R = sqrt(Emax) of
// |y|^wdeg e^{-|y|^2}: split off e^{-|y|^2/2} and bound the remaining
// half-Gaussian theta value through the orthogonalized basis lengths:
//   sum <= sup_{rho > R}(rho^wdeg e^{-rho^2/2}) * prod_i (2 + sqrt(2 pi)/a_i).
double cell_tail(std::pair<double, double> cell, double Emax, int wdeg) {
    double theta_bound = (2 + std::sqrt(2 * kPi) / cell.first) *
                         (2 + std::sqrt(2 * kPi) / cell.second);
    double sup = (wdeg == 0) ? std::exp(-Emax / 2)
                             : std::pow(std::max(Emax, 2.0), wdeg / 2.0) *
                                   std::exp(-std::max(Emax, 2.0) / 2);
    return sup * theta_bound;
}

double choose_Emax(std::pair<double, double> cell, double prefactor, double tol, int wdeg) {
    double tol_eff = std::max(tol, 1e-15) * 0.5;
    double E = 40.0;
    for (int i = 0; i < 500; ++i) {
        if (prefactor * cell_tail(cell, E, wdeg) <= tol_eff) return E;
        E += 8.0;
    }
    throw std::runtime_error("theta truncation: tail bound does not converge");
}

struct Term {
    double l1, l2, q, E;
    long m, n;
};

// all coset points with E(lambda, t) = pi v (l1^2/t^2 + l2^2 t^2) <= Emax,
// enumerated row by row: for each m the admissible n form an interval
std::vector<Term> collect_terms(const Grid& g, double v, double t, double Emax) {
    double p = std::sqrt(kPi * v) / t, q = std::sqrt(kPi * v) * t;
    double b1 = p * g.u21, b2 = q * g.u22; // n-direction in y-coordinates
    double A = b1 * b1 + b2 * b2;
    auto row = [&](double m, double& B, double& C) {
        double a1 = p * (g.h1 + m * g.u11);
        double a2 = q * (g.h2 + m * g.u12);
        B = 2 * (a1 * b1 + a2 * b2);
        C = a1 * a1 + a2 * a2;
    };
    auto emin = [&](double m) {
        double B, C;
        row(m, B, C);
        return C - B * B / (4 * A);
    };
    // E_min(m) is an exact quadratic in m; recover it from three samples
    double e0 = emin(0), ep = emin(1), en = emin(-1);
    double qa = 0.5 * (ep + en) - e0, qb = 0.5 * (ep - en), qc = e0;
    if (!(qa > 0)) throw std::logic_error("theta enumeration: degenerate form");
    double disc = qb * qb - 4 * qa * (qc - Emax);
    std::vector<Term> out;
    if (disc < 0) return out;
    long mlo = static_cast<long>(std::floor((-qb - std::sqrt(disc)) / (2 * qa))) - 1;
    long mhi = static_cast<long>(std::ceil((-qb + std::sqrt(disc)) / (2 * qa))) + 1;
    if (mhi - mlo > kTermBudget)
        throw std::runtime_error("theta evaluation exceeds the term budget");
    long count = 0;
    for (long m = mlo; m <= mhi; ++m) {
        double B, C;
        row(static_cast<double>(m), B, C);
        double dn = B * B - 4 * A * (C - Emax);
        if (dn < 0) continue;
        long nlo = static_cast<long>(std::floor((-B - std::sqrt(dn)) / (2 * A)));
        long nhi = static_cast<long>(std::ceil((-B + std::sqrt(dn)) / (2 * A)));
        count += nhi - nlo + 1;
        if (count > kTermBudget)
            throw std::runtime_error("theta evaluation exceeds the term budget");
        double l1m = g.h1 + m * g.u11;
        double l2m = g.h2 + m * g.u12;
        for (long n = nlo; n <= nhi; ++n) {
            double l1 = l1m + n * g.u21;
            double l2 = l2m + n * g.u22;
            double a = l1 / t, b = l2 * t;
            double E = kPi * v * (a * a + b * b);
            if (E <= Emax) out.push_back(Term{l1, l2, l1 * l2, E, m, n});
        }
    }
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
        double qa2 = std::abs(a.q), qb2 = std::abs(b.q);
        if (qa2 != qb2) return qa2 < qb2;
        if (a.l1 != b.l1) return a.l1 < b.l1;
        return a.l2 < b.l2;
    });
    return out;
}

std::complex<double> phase(double q, double u) {
    return std::polar(1.0, 2 * kPi * q * u);
}

void validate_point(double v, double t) {
    if (!(v > 0)) throw std::invalid_argument("evaluation point: v must be positive");
    if (!(t > 0)) throw std::invalid_argument("evaluation point: t must be positive");
}

// ---- complex adaptive Simpson over an integrand returning SeriesValue ----

struct CplxIntegrand {
    std::function<SeriesValue(double)> f;
    double node_tail = 0;
    std::complex<double> eval(double x) {
        SeriesValue s = f(x);
        node_tail = std::max(node_tail, s.tail_bound);
        return s.value;
    }
};

struct CplxSimpson {
    CplxIntegrand* ig;
    QuadratureSpec spec;
    double err = 0;

    std::complex<double> rec(double a, double b, std::complex<double> fa, std::complex<double> fm,
                             std::complex<double> fb, std::complex<double> whole, int depth) {
        double m = 0.5 * (a + b);
        std::complex<double> flm = ig->eval(0.5 * (a + m));
        std::complex<double> frm = ig->eval(0.5 * (m + b));
        std::complex<double> left = (m - a) / 6 * (fa + 4.0 * flm + fm);
        std::complex<double> right = (b - m) / 6 * (fm + 4.0 * frm + fb);
        std::complex<double> delta = left + right - whole;
        double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(left + right));
        if (depth >= spec.max_depth || std::abs(delta) <= 15 * tol) {
            err += std::abs(delta) / 15;
            return left + right + delta / 15.0;
        }
        return rec(a, m, fa, flm, fm, left, depth + 1) + rec(m, b, fm, frm, fb, right, depth + 1);
    }
};

SeriesValue integrate_series(const std::function<SeriesValue(double)>& f, double a, double b,
                             const QuadratureSpec& spec) {
    SeriesValue out;
    if (a == b) return out;
    CplxIntegrand ig{f, 0};
    CplxSimpson si{&ig, spec, 0};
    double m = 0.5 * (a + b);
    std::complex<double> fa = ig.eval(a), fm = ig.eval(m), fb = ig.eval(b);
    std::complex<double> whole = (b - a) / 6 * (fa + 4.0 * fm + fb);
    out.value = si.rec(a, b, fa, fm, fb, whole, 0);
    out.quad_error = si.err;
    out.tail_bound = ig.node_tail * std::abs(b - a);
    return out;
}

// ---- Fourier-side orbit machinery ----

// K0(x) <= sqrt(pi/(2x)) e^{-x}
double k0_upper(double x) { return std::sqrt(kPi / (2 * x)) * std::exp(-x); }

// bound for sqrt(v)^{-1} * |sum over orbits with |Q| > B of e(Qu) K0(2 pi |Q| v)|
double orbit_tail_bound(const Grid& g, double v, double B) {
    auto box_count = [&](double Bv) {
        double r1 = std::sqrt(Bv) * g.epsv;
        double r2 = std::sqrt(Bv);
        double X = ((r1 + std::abs(g.h1)) * std::abs(g.u22) +
                    (r2 + std::abs(g.h2)) * std::abs(g.u21)) / g.detmag + 3;
        double Y = ((r1 + std::abs(g.h1)) * std::abs(g.u12) +
                    (r2 + std::abs(g.h2)) * std::abs(g.u11)) / g.detmag + 3;
        return (2 * X + 1) * (2 * Y + 1);
    };
    double delta = g.qmin;
    double tail = 0, prev = box_count(B);
    for (long j = 1; j <= 200000; ++j) {
        double Bj = B + j * delta;
        double cnt = box_count(Bj);
        double x = 2 * kPi * v * (Bj - delta);
        double term = (cnt - prev) * k0_upper(std::max(x, 1e-8));
        tail += term;
        prev = cnt;
        if (x > 60 && term < 1e-25 * (tail + 1e-300)) break;
    }
    return tail;
}

double choose_orbit_cut(const Grid& g, double v, double coeff_bound, double tol) {
    double tol_eff = std::max(tol, 1e-15) * 0.5;
    double B = std::max(g.qmin, 4.0 / (2 * kPi * v));
    for (int i = 0; i < 300; ++i) {
        if (coeff_bound * orbit_tail_bound(g, v, B) <= tol_eff) return B;
        B *= 1.4;
    }
    throw std::runtime_error("orbit sum: tail bound does not converge");
}

long eps_power_of_ratio(const ScaleT& t1, const ScaleT& t2, const QuadElem& epsL) {
    if (!t1.is_exact() || !t2.is_exact())
        throw std::invalid_argument("window endpoints must carry exact squares");
    QuadElem ratio2 = *t2.square / *t1.square; // (t2/t1)^2
    QuadElem x = ratio2;
    QuadElem one(1, 0, epsL.d());
    QuadElem e2 = epsL * epsL;
    for (long k = 0; k <= 64; ++k) {
        if (x == one) return k;
        x = x / e2;
    }
    throw std::invalid_argument("t2/t1 is not an exact power of eps_L");
}

double orbit_a_sum_float(const OrbitRep& orb, double t1, double t2, double epsv) {
    double r = orb.mu.to_double();
    double e2 = epsv * epsv;
    double lo = t1 * t1, hi = t2 * t2;
    while (r >= lo * e2) r /= e2;
    while (r < lo) r *= e2;
    // r is now the smallest ladder point >= lo ... except boundary subtleties
    double S = 0;
    for (int guard = 0; guard < 1000 && r <= hi; ++guard) {
        if (r == lo || r == hi) S += 0.5;
        else if (r > lo) S += 1;
        r *= e2;
    }
    return S;
}

} // namespace

WeightPolynomial::WeightPolynomial(std::vector<std::complex<double>> coef) : coef_(std::move(coef)) {
    if (coef_.empty()) coef_.push_back(0.0);
    if (coef_.size() > 9) throw std::invalid_argument("WeightPolynomial: degree too large");
}

std::complex<double> WeightPolynomial::eval(double x) const {
    std::complex<double> acc = 0;
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

WeightPolynomial WeightPolynomial::derivative() const {
    if (coef_.size() == 1) return WeightPolynomial({0.0});
    std::vector<std::complex<double>> d(coef_.size() - 1);
    for (size_t k = 1; k < coef_.size(); ++k) d[k - 1] = static_cast<double>(k) * coef_[k];
    return WeightPolynomial(std::move(d));
}

WeightPolynomial WeightPolynomial::monomial(int k) {
    std::vector<std::complex<double>> c(static_cast<size_t>(k) + 1, 0.0);
    c.back() = 1.0;
    return WeightPolynomial(std::move(c));
}

SeriesValue siegel_theta(const Coset& coset, const EvalPoint& pt, double tol) {
    validate_point(pt.v, pt.t);
    Grid g = grid_for(coset);
    auto cell = reduced_cell(g, pt.v, pt.t);
    double Emax = choose_Emax(cell, std::sqrt(pt.v), tol, 0);
    auto terms = collect_terms(g, pt.v, pt.t, Emax);
    Kahan acc;
    for (const Term& tm : terms) acc.add(std::exp(-tm.E) * phase(tm.q, pt.u));
    SeriesValue out;
    out.value = std::sqrt(pt.v) * acc.sum;
    out.tail_bound = std::sqrt(pt.v) * cell_tail(cell, Emax, 0);
    return out;
}

SeriesValue theta_11(const Coset& coset, const EvalPoint& pt, double tol) {
    validate_point(pt.v, pt.t);
    Grid g = grid_for(coset);
    auto cell = reduced_cell(g, pt.v, pt.t);
    double pref = std::pow(pt.v, 1.5) / (4 * kPi * pt.v);
    double Emax = choose_Emax(cell, pref, tol, 2);
    auto terms = collect_terms(g, pt.v, pt.t, Emax);
    Kahan acc;
    for (const Term& tm : terms) {
        double a = tm.l1 / pt.t, b = tm.l2 * pt.t;
        double w = (b * b - a * a) / 4; // lambda_t^+ lambda_t^-
        acc.add(w * std::exp(-tm.E) * phase(tm.q, pt.u));
    }
    SeriesValue out;
    out.value = std::pow(pt.v, 1.5) * acc.sum;
    out.tail_bound = pref * cell_tail(cell, Emax, 2);
    return out;
}

SeriesValue vartheta_hat_quadrature(const Coset& coset, std::complex<double> tau, double t1,
                                    double t2, const QuadratureSpec& spec) {
    if (!(t1 > 0) || t2 < t1) throw std::invalid_argument("vartheta_hat: need 0 < t1 <= t2");
    double u = tau.real(), v = tau.imag();
    validate_point(v, t1);
    auto f = [&](double nu) {
        return siegel_theta(coset, EvalPoint{u, v, std::exp(nu)}, spec.abs_tol);
    };
    return integrate_series(f, std::log(t1), std::log(t2), spec);
}

SeriesValue vartheta_fourier(const Coset& coset, std::complex<double> tau, const ScaleT& t1,
                             const ScaleT& t2, double tol) {
    double u = tau.real(), v = tau.imag();
    validate_point(v, t1.value);
    const auto& lat = coset.lattice();
    long k = eps_power_of_ratio(t1, t2, lat.eps_L().eps_L);
    if (k < 1) throw std::invalid_argument("vartheta_fourier: need t2 > t1");
    Grid g = grid_for(coset);
    double kd = static_cast<double>(k);
    double B = choose_orbit_cut(g, v, kd, tol);
    auto orbits = enumerate_orbits(coset, ScaleT::exact(lat.field().one()), mpq_class(B));
    Kahan acc;
    for (const auto& orb : orbits) {
        if (orb.is_zero) continue;
        double q = orb.q_value.get_d();
        acc.add(bessel_k0(2 * kPi * v * std::abs(q)) * phase(q, u));
    }
    SeriesValue out;
    out.value = std::sqrt(v) * kd * acc.sum;
    if (coset.is_trivial()) out.value += std::sqrt(v) * kd * lat.log_eps_L();
    out.tail_bound = std::sqrt(v) * kd * orbit_tail_bound(g, v, B);
    return out;
}

SeriesValue vartheta_hat_plus(const Coset& coset, std::complex<double> tau, const ScaleT& t1,
                              const ScaleT& t2, double tol) {
    double u = tau.real(), v = tau.imag();
    validate_point(v, t1.value);
    if (!(t2.value > t1.value)) throw std::invalid_argument("vartheta_hat_plus: need t1 < t2");
    const auto& lat = coset.lattice();
    Grid g = grid_for(coset);
    double amax = std::ceil(std::log(t2.value / t1.value) / lat.log_eps_L()) + 1;
    double B = choose_orbit_cut(g, v, amax, tol);
    auto orbits = enumerate_orbits(coset, ScaleT::exact(lat.field().one()), mpq_class(B));
    bool exact = t1.is_exact() && t2.is_exact();
    Kahan acc;
    for (const auto& orb : orbits) {
        if (orb.is_zero) continue;
        double S = exact ? orbit_a_sum(orb, t1, t2, lat).get_d()
                         : orbit_a_sum_float(orb, t1.value, t2.value, g.epsv);
        if (S == 0) continue;
        double q = orb.q_value.get_d();
        acc.add(S * bessel_k0(2 * kPi * v * std::abs(q)) * phase(q, u));
    }
    SeriesValue out;
    out.value = std::sqrt(v) * acc.sum;
    if (coset.is_trivial()) out.value += std::sqrt(v) * std::log(t2.value / t1.value);
    out.tail_bound = std::sqrt(v) * amax * orbit_tail_bound(g, v, B);
    return out;
}

SeriesValue phi_c0(const Coset& coset, std::complex<double> tau, const ScaleT& t0, double tol) {
    double u = tau.real(), v = tau.imag();
    validate_point(v, t0.value);
    const auto& lat = coset.lattice();
    Grid g = grid_for(coset);
    auto cell = reduced_cell(g, v, t0.value);
    double xmin = 2 * kPi * v * g.qmin;
    double pref = std::sqrt(v) * 0.5 * std::sqrt(kPi / (2 * xmin));
    double Emax = choose_Emax(cell, pref, tol, 0);
    auto terms = collect_terms(g, v, t0.value, Emax);
    QuadratureSpec inner;
    inner.abs_tol = std::max(tol * 1e-3 / (terms.size() + 1), 1e-16);
    double sv = std::sqrt(v);
    Kahan acc;
    for (const Term& tm : terms) {
        if (tm.l1 == 0 && tm.l2 == 0) continue; // beta(0) := 0
        double x = 2 * kPi * std::abs(tm.l1 * tm.l2) * v;
        double a_arg = std::log(t0.value * t0.value * std::abs(tm.l2 / tm.l1));
        // the kernel jumps by K0 across the window boundary, so near-boundary
        // terms take their side from the exact ratio comparison
        if (t0.is_exact() && std::abs(a_arg) < 1e-6) {
            QuadElem lam = coset.h() + mpq_class(tm.m) * lat.basis1() +
                           mpq_class(tm.n) * lat.basis2();
            int cmp = compare_ratio_with(lam, *t0.square);
            if (cmp == 0) continue; // boundary: beta = 0 by convention
            a_arg = -cmp * std::max(std::abs(a_arg), 1e-300);
        }
        if (a_arg == 0) continue;
        double b = 0.5 * bessel_k0_incomplete(x, a_arg, inner);
        if (b != 0) acc.add(b * phase(tm.q, u));
    }
    SeriesValue out;
    out.value = sv * acc.sum;
    out.tail_bound = pref * cell_tail(cell, Emax, 0);
    out.quad_error = inner.abs_tol * static_cast<double>(terms.size());
    return out;
}

SeriesValue phi_c0(const Coset& coset, std::complex<double> tau, double t0, double tol) {
    return phi_c0(coset, tau, ScaleT(t0), tol);
}

SeriesValue vartheta_tilde(const Coset& coset, std::complex<double> tau, double t0,
                           const QuadratureSpec& spec) {
    double u = tau.real(), v = tau.imag();
    validate_point(v, t0);
    double le = coset.lattice().log_eps_L();
    auto f = [&](double nu) {
        SeriesValue s = siegel_theta(coset, EvalPoint{u, v, std::exp(nu)}, spec.abs_tol);
        s.value *= nu;
        s.tail_bound *= std::abs(nu);
        return s;
    };
    double nu0 = std::log(t0);
    return integrate_series(f, nu0, nu0 + le, spec);
}

SeriesValue vartheta_tilde_plus(const Coset& coset, std::complex<double> tau, const ScaleT& t0,
                                double tol) {
    double u = tau.real(), v = tau.imag();
    validate_point(v, t0.value);
    if (!t0.is_exact()) throw std::invalid_argument("vartheta_tilde_plus: t0^2 must be exact");
    const auto& lat = coset.lattice();
    Grid g = grid_for(coset);
    double le = lat.log_eps_L();
    double cmax = 0.5 * std::abs(std::log(t0.value * t0.value) + le) + 0.5 * le;
    double B = choose_orbit_cut(g, v, cmax, tol);
    auto orbits = enumerate_orbits(coset, t0, mpq_class(B));
    Kahan acc;
    SeriesValue out;
    for (const auto& orb : orbits) {
        ExactCoefficient c = c_tilde(orb, t0, lat);
        if (orb.is_zero) {
            out.value += std::sqrt(v) * c.float_value;
            continue;
        }
        double q = orb.q_value.get_d();
        acc.add(c.float_value * bessel_k0(2 * kPi * v * std::abs(q)) * phase(q, u));
    }
    out.value += std::sqrt(v) * acc.sum;
    out.tail_bound = std::sqrt(v) * cmax * orbit_tail_bound(g, v, B);
    return out;
}

SeriesValue vartheta_hat_P(const Coset& coset, std::complex<double> tau, double t1, double t2,
                           const WeightPolynomial& P, const QuadratureSpec& spec) {
    if (!(t1 > 0) || t2 < t1) throw std::invalid_argument("vartheta_hat_P: need 0 < t1 <= t2");
    double u = tau.real(), v = tau.imag();
    validate_point(v, t1);
    auto f = [&](double nu) {
        SeriesValue s = siegel_theta(coset, EvalPoint{u, v, std::exp(nu)}, spec.abs_tol);
        std::complex<double> w = P.eval(nu);
        s.value *= w;
        s.tail_bound *= std::abs(w);
        return s;
    };
    return integrate_series(f, std::log(t1), std::log(t2), spec);
}

std::string series_value_json(const std::string& series, const Coset& coset,
                              std::complex<double> tau, const std::vector<double>& ts,
                              const SeriesValue& val) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["series"] = series;
    j["coset"] = nlohmann::json::parse(coset_to_descriptor(coset));
    j["tau"] = {tau.real(), tau.imag()};
    if (ts.size() == 1) j["t"] = ts[0];
    else j["t"] = ts;
    j["value"] = {val.value.real(), val.value.imag()};
    j["tail_bound"] = val.tail_bound;
    j["quad_error"] = val.quad_error;
    return j.dump();
}

} // namespace mmtheta
