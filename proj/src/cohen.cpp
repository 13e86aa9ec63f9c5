#include "mmtheta/cohen.hpp"

#include "mmtheta/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace mmtheta {

namespace {

constexpr double kPi = std::numbers::pi;

// |xi/xi'| >= 1 for xi = x + y sqrt6: sign(x y) >= 0
bool ratio_ge_one(long x, long y) { return static_cast<long long>(x) * y >= 0; }

// |xi/xi'| < eps^2 for eps = 5 + 2 sqrt6: with u = xi * eps' = (5x-12y) + (5y-2x) sqrt6,
// |u| < |u'| <=> a_u * b_u < 0; equality (= eps^2) is excluded from the window.
bool ratio_lt_eps2(long x, long y) {
    long long au = 5LL * x - 12LL * y;
    long long bu = 5LL * y - 2LL * x;
    return au * bu < 0;
}

} // namespace

PellCount pell_t(long n) {
    long r = ((n % 24) + 24) % 24;
    if (n == 0 || r != 1) throw std::invalid_argument("pell_t: n must be nonzero and 1 mod 24");
    PellCount out;
    out.n = n;
    const double eps = 5 + 2 * std::sqrt(6.0);
    long na = std::labs(n);
    // |xi| < sqrt|n| eps and |xi'| <= sqrt|n| on the window; y = (xi - xi')/(2 sqrt 6)
    long ylim = static_cast<long>(std::sqrt(static_cast<double>(na)) * (eps + 1) / (2 * std::sqrt(6.0))) + 2;
    std::set<std::pair<long, long>> counted;
    for (long y = -ylim; y <= ylim; ++y) {
        long long x2 = static_cast<long long>(n) + 6LL * y * y;
        if (x2 <= 0) continue;
        long x = static_cast<long>(std::llround(std::sqrt(static_cast<double>(x2))));
        while (static_cast<long long>(x) * x > x2) --x;
        while (static_cast<long long>(x + 1) * (x + 1) <= x2) ++x;
        if (static_cast<long long>(x) * x != x2) continue;
        for (long xx : {x, -x}) {
            if (xx == 0) continue;
            if (!ratio_ge_one(xx, y) || !ratio_lt_eps2(xx, y)) continue;
            // (xx, y) and (-xx, -y) are one class; keep the x > 0 member
            if (xx < 0) continue;
            counted.insert({xx, y});
        }
    }
    for (auto [x, y] : counted) {
        long c = ((x + 3 * y) % 12 + 12) % 12;
        if (c == 1 || c == 11) ++out.count_pm1;
        else if (c == 5 || c == 7) ++out.count_pm5;
        else throw std::logic_error("pell_t: solution outside the +-1/+-5 classes");
    }
    out.t_value = out.count_pm1 - out.count_pm5;
    return out;
}

namespace {

// dense integer polynomial arithmetic truncated at `order`
using Poly = std::vector<mpq_class>;

Poly poly_mul(const Poly& a, const Poly& b, long order) {
    Poly r(static_cast<size_t>(order));
    for (long i = 0; i < static_cast<long>(a.size()) && i < order; ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; j < static_cast<long>(b.size()) && i + j < order; ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

QSeries from_poly(Poly p) { return QSeries{mpq_class(0), std::move(p)}; }

} // namespace

QSeries sigma_expansion(long order) {
    if (order < 1) throw std::invalid_argument("sigma_expansion: order >= 1");
    // 1 + sum_{n>=0} (-1)^n q^{n+1} (1-q)...(1-q^n)
    Poly acc(static_cast<size_t>(order));
    acc[0] = 1;
    Poly prod(static_cast<size_t>(order));
    prod[0] = 1; // empty product
    for (long n = 0; n + 1 < order; ++n) {
        if (n >= 1) {
            // multiply prod by (1 - q^n)
            for (long k = order - 1 - n; k >= 0; --k) {
                if (prod[k] != 0 && k + n < order) prod[k + n] -= prod[k];
            }
        }
        int sgn_n = (n % 2 == 0) ? 1 : -1;
        for (long k = 0; k + n + 1 < order; ++k) {
            if (prod[k] != 0) acc[k + n + 1] += sgn_n * prod[k];
        }
    }
    return from_poly(std::move(acc));
}

QSeries sigma_expansion_alt(long order) {
    // sum_{n>=0} q^{n(n+1)/2} / ((1+q)...(1+q^n))
    Poly acc(static_cast<size_t>(order));
    Poly inv(static_cast<size_t>(order)); // 1/((1+q)...(1+q^n)), updated incrementally
    inv[0] = 1;
    for (long n = 0;; ++n) {
        long e = n * (n + 1) / 2;
        if (e >= order) break;
        if (n >= 1) {
            // divide by (1 + q^n): r[k] = a[k] - r[k-n]
            Poly r(static_cast<size_t>(order));
            for (long k = 0; k < order; ++k) {
                r[k] = inv[k];
                if (k >= n) r[k] -= r[k - n];
            }
            inv = std::move(r);
        }
        for (long k = 0; k + e < order; ++k) acc[k + e] += inv[k];
    }
    return from_poly(std::move(acc));
}

QSeries sigma_star_expansion(long order) {
    // -2 sum_{n>=0} q^{n+1} (1-q^2)(1-q^4)...(1-q^{2n})
    Poly acc(static_cast<size_t>(order));
    Poly prod(static_cast<size_t>(order));
    prod[0] = 1;
    for (long n = 0; n + 1 < order; ++n) {
        if (n >= 1) {
            for (long k = order - 1 - 2 * n; k >= 0; --k) {
                if (prod[k] != 0 && k + 2 * n < order) prod[k + 2 * n] -= prod[k];
            }
        }
        for (long k = 0; k + n + 1 < order; ++k) {
            if (prod[k] != 0) acc[k + n + 1] -= 2 * prod[k];
        }
    }
    return from_poly(std::move(acc));
}

QSeries sigma_star_expansion_alt(long order) {
    // 2 sum_{n>=1} (-1)^n q^{n^2} / ((1-q)(1-q^3)...(1-q^{2n-1}))
    Poly acc(static_cast<size_t>(order));
    Poly inv(static_cast<size_t>(order));
    inv[0] = 1;
    for (long n = 1;; ++n) {
        long e = n * n;
        if (e >= order) break;
        // divide by (1 - q^{2n-1}): r[k] = a[k] + r[k-(2n-1)]
        long m = 2 * n - 1;
        Poly r(static_cast<size_t>(order));
        for (long k = 0; k < order; ++k) {
            r[k] = inv[k];
            if (k >= m) r[k] += r[k - m];
        }
        inv = std::move(r);
        int sgn_n = (n % 2 == 0) ? 1 : -1;
        for (long k = 0; k + e < order; ++k) {
            if (inv[k] != 0) acc[k + e] += 2 * sgn_n * inv[k];
        }
    }
    return from_poly(std::move(acc));
}

IdentityReport generating_identity_check(long max_abs_n) {
    if (max_abs_n < 24) throw std::invalid_argument("generating_identity_check: bound too small");
    long order = max_abs_n / 24 + 2;
    QSeries s = sigma_expansion(order);
    QSeries ss = sigma_star_expansion(order);
    IdentityReport rep;
    rep.max_abs_n = max_abs_n;
    for (long n = 1; n <= max_abs_n; n += 24) {
        ++rep.checked;
        mpq_class expected = s.coeff((n - 1) / 24);
        if (mpq_class(pell_t(n).t_value) != expected) ++rep.mismatches;
    }
    for (long n = -23; n >= -max_abs_n; n -= 24) {
        ++rep.checked;
        mpq_class expected = ss.coeff((-n + 1) / 24);
        if (mpq_class(pell_t(n).t_value) != expected) ++rep.mismatches;
    }
    rep.passed = (rep.mismatches == 0);
    return rep;
}

Phi0Value phi0_assembly(std::complex<double> tau, double tol) {
    Preset p = make_cohen_preset();
    ScaleT one = ScaleT::exact(p.lattice->field().one());
    ScaleT epsL = ScaleT::exact(p.lattice->eps_L().eps_L);
    Phi0Value out;
    SeriesValue a = vartheta_fourier(p.coset("h1"), tau, one, epsL, tol * 0.1);
    SeriesValue b = vartheta_fourier(p.coset("h2"), tau, one, epsL, tol * 0.1);
    out.via_lattice.value = a.value - b.value;
    out.via_lattice.tail_bound = a.tail_bound + b.tail_bound;

    double u = tau.real(), v = tau.imag();
    // direct series: cut |n| when K0(2 pi n v / 24) with a generous T(n) growth
    // bound drops below tol
    long cut = static_cast<long>((std::log(1.0 / std::max(tol * 1e-3, 1e-300)) + 30) * 24 /
                                 (2 * kPi * v)) + 24;
    std::complex<double> acc = 0;
    for (long n = 1; n <= cut; n += 24) {
        long t = pell_t(n).t_value;
        if (t != 0)
            acc += static_cast<double>(t) * std::polar(1.0, 2 * kPi * n * u / 24) *
                   bessel_k0(2 * kPi * n * v / 24);
    }
    for (long n = -23; n >= -cut; n -= 24) {
        long t = pell_t(n).t_value;
        if (t != 0)
            acc += static_cast<double>(t) * std::polar(1.0, 2 * kPi * n * u / 24) *
                   bessel_k0(2 * kPi * std::labs(n) * v / 24);
    }
    out.via_pell.value = std::sqrt(v) * acc;
    out.via_pell.tail_bound = std::sqrt(v) * static_cast<double>(cut) *
                              std::exp(-2 * kPi * cut * v / 24);
    out.difference = std::abs(out.via_lattice.value - out.via_pell.value);
    return out;
}

namespace {

QuadElem q6(long a2, long b2) {
    // (a2 + b2 sqrt 6)/1 given directly as integers
    return QuadElem(mpq_class(a2), mpq_class(b2), 6);
}

} // namespace

std::vector<WindowTableEntry> table1_reference() {
    // ideals of norm < 100 with the canonical generator beta = 2 lambda and
    // the nonzero window coefficients a_lambda(1, eps)
    const mpq_class half(1, 2);
    const mpq_class one_q(1);
    std::vector<WindowTableEntry> t;
    auto add = [&](long norm, QuadElem beta, const char* coset, mpq_class a) {
        t.push_back(WindowTableEntry{norm, std::move(beta), coset, std::move(a)});
    };
    // eps = 5 + 2 sqrt 6
    add(1, q6(1, 0), "h1", half);
    add(1, q6(-5, -2), "h4", half);             // -eps
    add(23, q6(1, 2), "h3", one_q);             // 1 + 2 sqrt6
    add(23, q6(19, 8), "h2", one_q);            // -eps (1 - 2 sqrt6)
    add(25, q6(7, 2), "h4", one_q);             // 7 + 2 sqrt6
    add(25, q6(-11, -4), "h1", one_q);          // -eps (7 - 2 sqrt6)
    add(25, q6(-5, 0), "h2", half);             // -5
    add(25, q6(25, 10), "h3", half);            // 5 eps
    add(47, q6(7, 4), "h2", one_q);             // 7 + 4 sqrt6
    add(47, q6(13, 6), "h3", one_q);            // -eps (7 - 4 sqrt6)
    add(49, q6(7, 0), "h2", half);              // 7
    add(49, q6(-35, -14), "h3", half);          // -7 eps
    add(71, q6(-5, -4), "h2", one_q);           // -(5 + 4 sqrt6)
    add(71, q6(-23, -10), "h3", one_q);         // eps (5 - 4 sqrt6)
    add(73, q6(13, 4), "h1", one_q);            // 13 + 4 sqrt6
    add(73, q6(-17, -6), "h4", one_q);          // -eps (13 - 4 sqrt6)
    add(95, q6(1, 4), "h1", one_q);             // 1 + 4 sqrt6
    add(95, q6(43, 18), "h4", one_q);           // -eps (1 - 4 sqrt6)
    add(95, q6(-17, -8), "h2", one_q);          // eps (11 - 6 sqrt6)
    // -(11 + 6 sqrt6): the -eps-conjugate partner of the h2 entry above.  The
    // corresponding published table row carries -(11 - 6 sqrt6) here, whose
    // window coefficient is 0; the pairing map and the window test both give
    // the generator below, and the discrepancy is reported by the table check.
    add(95, q6(-11, -6), "h3", one_q);
    add(97, q6(-11, -2), "h3", one_q);          // -(11 + 2 sqrt6)
    add(97, q6(31, 12), "h2", one_q);           // eps (11 - 2 sqrt6)
    return t;
}

std::vector<WindowTableEntry> table1_computed(const Preset& cohen, const mpq_class& ideal_norm_bound) {
    // |Nm(2 lambda)| = 4 |Nm(lambda)| = 24 |Q(lambda)|
    mpq_class qbound = ideal_norm_bound / 24;
    ScaleT one = ScaleT::exact(cohen.lattice->field().one());
    ScaleT eps = ScaleT::exact(cohen.eps);
    std::vector<WindowTableEntry> out;
    for (const std::string& nm : {"h1", "h2", "h3", "h4"}) {
        const Coset& c = cohen.coset(nm);
        for (const auto& orb : enumerate_orbits(c, one, qbound)) {
            if (orb.is_zero) continue;
            mpq_class a = orbit_a_sum(orb, one, eps, *cohen.lattice);
            if (a == 0) continue;
            QuadElem beta = mpq_class(2) * orb.lambda0;
            mpq_class nm4 = abs(beta.norm());
            if (nm4.get_den() != 1) throw std::logic_error("table1: non-integral ideal norm");
            out.push_back(WindowTableEntry{static_cast<long>(nm4.get_num().get_si()), beta, nm, a});
        }
    }
    std::sort(out.begin(), out.end(), [](const WindowTableEntry& l, const WindowTableEntry& r) {
        if (l.norm != r.norm) return l.norm < r.norm;
        if (l.coset != r.coset) return l.coset < r.coset;
        return l.beta.a() < r.beta.a();
    });
    return out;
}

} // namespace mmtheta
