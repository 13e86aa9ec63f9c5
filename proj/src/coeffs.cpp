#include "mmtheta/coeffs.hpp"

#include "mmtheta/specfun.hpp"

#include <json.hpp>

#include <cmath>

namespace mmtheta {

ExactCoefficient ExactCoefficient::make(const mpq_class& r, const QuadElem& mu,
                                        const mpq_class& r2, double log_epsL) {
    if (!mu.is_totally_positive())
        throw std::invalid_argument("ExactCoefficient: mu must be totally positive");
    ExactCoefficient c;
    c.r = r;
    c.mu = mu;
    c.r2 = r2;
    c.float_value = r.get_d() * log_epsL + 0.5 * std::log(mu.to_double()) +
                    r2.get_d() * log_epsL * log_epsL;
    return c;
}

double a_coefficient(std::pair<double, double> lp, double t1, double t2) {
    if (!(t2 > t1 && t1 > 0)) throw std::invalid_argument("a_coefficient: need 0 < t1 < t2");
    auto [l1, l2] = lp;
    if (l1 == 0 && l2 == 0) return std::log(t2 / t1);
    double r = std::abs(l1 / l2);
    if (r == t1 * t1 || r == t2 * t2) return 0.5;
    return (t1 * t1 < r && r < t2 * t2) ? 1.0 : 0.0;
}

mpq_class a_coefficient_exact(const QuadElem& lambda, const ScaleT& t1, const ScaleT& t2) {
    if (lambda.is_zero()) throw std::invalid_argument("a_coefficient_exact: zero vector");
    if (!t1.is_exact() || !t2.is_exact())
        throw std::invalid_argument("a_coefficient_exact: t_i^2 must be exact");
    int c1 = compare_ratio_with(lambda, *t1.square);
    int c2 = compare_ratio_with(lambda, *t2.square);
    if (c1 == 0 || c2 == 0) return mpq_class(1, 2);
    return (c1 > 0 && c2 < 0) ? mpq_class(1) : mpq_class(0);
}

double a_coefficient_zero(double t1, double t2) {
    if (!(t2 > t1 && t1 > 0)) throw std::invalid_argument("a_coefficient_zero: need 0 < t1 < t2");
    return std::log(t2 / t1);
}

bool a_equivalence_check(std::pair<double, double> lp, double t1, double t2) {
    auto [l1, l2] = lp;
    if (l1 == 0 && l2 == 0) throw std::invalid_argument("a_equivalence_check: zero vector");
    double q0 = l1 * l2;
    auto sgnd = [](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); };
    auto proj = [&](double t, int s) { return (s * l1 / t + l2 * t) / 2; };
    double sign_form;
    if (q0 < 0) {
        sign_form = 0.5 * (1 - sgnd(proj(t1, +1) * proj(t2, +1)));
    } else if (q0 > 0) {
        sign_form = 0.5 * (1 - sgnd(proj(t1, -1) * proj(t2, -1)));
    } else {
        // isotropic vectors never occur on anisotropic lattices; both forms
        // degenerate, compare them anyway
        sign_form = 0.5 * (1 - sgnd(proj(t1, +1) * proj(t2, +1)));
    }
    double window_form = a_coefficient(lp, t1, t2);
    return std::abs(sign_form - window_form) < 1e-12;
}

mpq_class orbit_a_sum(const OrbitRep& orbit, const ScaleT& t1, const ScaleT& t2,
                      const AnisotropicLattice& lat) {
    if (orbit.is_zero) throw std::invalid_argument("orbit_a_sum: nontrivial orbit required");
    if (!t1.is_exact() || !t2.is_exact())
        throw std::invalid_argument("orbit_a_sum: exact t_i required");
    const QuadElem& epsL = lat.eps_L().eps_L;
    const QuadElem e2 = epsL * epsL;
    const QuadElem lo = *t1.square;
    const QuadElem hi = *t2.square;
    // move to the smallest ladder point >= t1^2
    QuadElem mu = orbit.mu;
    for (int guard = 0; guard < 100000; ++guard) {
        if ((mu - lo).sign_real() < 0) {
            mu = mu * e2;
            continue;
        }
        QuadElem prev = mu * e2.inverse();
        if ((prev - lo).sign_real() >= 0) {
            mu = prev;
            continue;
        }
        break;
    }
    mpq_class S = 0;
    for (int guard = 0; guard < 100000; ++guard) {
        int cl = (mu - lo).sign_real();
        int ch = (mu - hi).sign_real();
        if (ch > 0) break;
        if (cl == 0 || ch == 0) S += mpq_class(1, 2);
        else if (cl > 0) S += 1;
        mu = mu * e2;
    }
    return S;
}

namespace {

// detect t_sq == eps_L^j for |j| <= 64; returns j when found
std::optional<long> unit_power_of(const QuadElem& t_sq, const QuadElem& epsL) {
    QuadElem one(1, 0, t_sq.d());
    QuadElem x = t_sq;
    for (long j = 0; j <= 64; ++j) {
        if (x == one) return j;
        x = x * epsL.conj(); // divide by eps_L
    }
    x = t_sq;
    for (long j = -1; j >= -64; --j) {
        x = x * epsL.conj().inverse();
        if (x == one) return j;
    }
    return std::nullopt;
}

} // namespace

ExactCoefficient c_tilde(const OrbitRep& orbit, const ScaleT& t0, const AnisotropicLattice& lat) {
    if (!t0.is_exact()) throw std::invalid_argument("c_tilde: t0^2 must be exact");
    const QuadElem& epsL = lat.eps_L().eps_L;
    double le = lat.log_eps_L();
    const QuadElem t_sq = *t0.square;

    if (orbit.is_zero) {
        // (1/2) log(eps_L) log(t0^2 eps_L)
        auto j = unit_power_of(t_sq, epsL);
        if (j) {
            mpq_class r2(*j + 1, 2);
            r2.canonicalize();
            return ExactCoefficient::make(0, lat.field().one(), r2, le);
        }
        ExactCoefficient c;
        c.r = 0;
        c.mu = lat.field().one();
        c.r2 = 0;
        c.exact = false;
        c.float_value = 0.5 * le * std::log(t_sq.to_double() * epsL.to_double());
        return c;
    }

    const QuadElem& mu = orbit.mu; // sigma(mu) = |lambda0/lambda0'|
    QuadElem lo = t_sq;
    QuadElem hi = t_sq * epsL * epsL;
    int cl = (mu - lo).sign_real();
    int ch = (mu - hi).sign_real();
    if (cl < 0 || ch >= 0)
        throw std::invalid_argument("c_tilde: orbit representative not canonical for t0");
    if (cl == 0) {
        // boundary: B1(0) = 0, value (1/2) log(t0^2 eps_L)
        return ExactCoefficient::make(mpq_class(1, 2), t_sq, 0, le);
    }
    // interior: value (1/2) log |lambda0/lambda0'|
    return ExactCoefficient::make(0, mu, 0, le);
}

double c_tilde_float(double ratio, double t0, double log_epsL) {
    double arg = std::log(ratio / (t0 * t0)) / (2 * log_epsL);
    return 0.5 * std::log(t0 * t0) + 0.5 * log_epsL + log_epsL * periodic_bernoulli_b1(arg);
}

TelescopingReport telescoping_check(const OrbitRep& orbit, const ScaleT& t1, const ScaleT& t2,
                                    const AnisotropicLattice& lat) {
    if (orbit.is_zero) throw std::invalid_argument("telescoping_check: nontrivial orbit required");
    if (!t1.is_exact() || !t2.is_exact())
        throw std::invalid_argument("telescoping_check: exact t_i required");
    const QuadElem& epsL = lat.eps_L().eps_L;
    const QuadElem epsL2 = epsL * epsL;

    // canonicalize at t1, then at t2 (c_tilde needs per-t0 canonical reps)
    // any element of the orbit works for reduce
    auto fake_coset_reduce = [&](const ScaleT& t) {
        QuadElem lam = orbit.lambda0;
        const QuadElem lo = *t.square;
        const QuadElem hi = lo * epsL2;
        for (int guard = 0; guard < 100000; ++guard) {
            if (compare_ratio_with(lam, lo) < 0) lam *= epsL;
            else if (compare_ratio_with(lam, hi) >= 0) lam *= epsL.conj();
            else break;
        }
        OrbitRep r;
        r.lambda0 = lam;
        r.q_value = lat.quad_form(lam);
        r.mu = (1 / abs(lam.norm())) * (lam * lam);
        r.is_zero = false;
        return r;
    };

    OrbitRep rep1 = fake_coset_reduce(t1);
    OrbitRep rep2 = fake_coset_reduce(t2);
    ExactCoefficient c1 = c_tilde(rep1, t1, lat);
    ExactCoefficient c2 = c_tilde(rep2, t2, lat);

    mpq_class S = orbit_a_sum(orbit, t1, t2, lat);

    TelescopingReport rep;
    rep.a_sum = S;
    rep.c1 = c1;
    rep.c2 = c2;
    // -log(epsL) S = (r1 - r2) log(epsL) + (1/2) log(mu1/mu2)
    //  <=>  mu1/mu2 = epsL^{-2(S + r1 - r2)}
    mpq_class e = -2 * (S + c1.r - c2.r);
    if (e.get_den() == 1 && c1.r2 == c2.r2) {
        QuadElem pw = epsL.pow(e.get_num().get_si());
        rep.holds_exactly = (c1.mu == c2.mu * pw);
    } else {
        rep.holds_exactly = false;
    }
    rep.float_residual =
        std::abs(-lat.log_eps_L() * S.get_d() - (c1.float_value - c2.float_value));
    return rep;
}

std::string coefficient_table_json(const Coset& coset, const ScaleT& t0,
                                   const mpq_class& norm_bound) {
    using nlohmann::json;
    auto orbits = enumerate_orbits(coset, t0, norm_bound);
    json arr = json::array();
    auto emit_z = [](const mpz_class& z) {
        return z.fits_slong_p() ? json(z.get_si()) : json(z.get_str());
    };
    for (const auto& orb : orbits) {
        ExactCoefficient c = c_tilde(orb, t0, coset.lattice());
        json row;
        row["index_num"] = emit_z(orb.q_value.get_num());
        row["index_den"] = emit_z(orb.q_value.get_den());
        row["r_num"] = emit_z(c.r.get_num());
        row["r_den"] = emit_z(c.r.get_den());
        row["mu"] = json::array({emit_z(c.mu.a().get_num()), emit_z(c.mu.a().get_den()),
                                 emit_z(c.mu.b().get_num()), emit_z(c.mu.b().get_den())});
        row["float_value"] = c.float_value;
        arr.push_back(row);
    }
    return arr.dump();
}

} // namespace mmtheta
