#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mmtheta/qseries.hpp"
#include "mmtheta/specfun.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace mmtheta;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("adaptive quadrature basics") {
    auto r = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, kPi);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    QuadratureSpec bad;
    bad.abs_tol = 0;
    CHECK_THROWS_AS(adaptive_simpson([](double) { return 1.0; }, 0, 1, bad),
                    std::invalid_argument);
}

TEST_CASE("K0 conventions and fast path accuracy") {
    CHECK(bessel_k0(0.0) == 0.0);
    CHECK_THROWS_AS(bessel_k0(-1.0), std::domain_error);
    // against direct integration of the defining integral
    CHECK(bessel_k0(1.0) ==
          doctest::Approx(bessel_k0_integral(1.0)).epsilon(1e-10));
    for (double x = 0.1; x <= 50.0; x += 0.37) {
        double fast = bessel_k0(x);
        double slow = bessel_k0_integral(x);
        CHECK(std::abs(fast / slow - 1) < 1e-10);
    }
    // large-argument asymptotics within 1%
    double x = 50.0;
    CHECK(bessel_k0(x) ==
          doctest::Approx(std::sqrt(kPi / (2 * x)) * std::exp(-x)).epsilon(0.01));
}

TEST_CASE("K0 satisfies its differential equation (finite differences)") {
    for (double x = 0.5; x <= 20.0; x += 1.3) {
        double h = std::max(1e-4, 1e-4 * x);
        auto d2 = [&](double hh) {
            return (bessel_k0(x + hh) - 2 * bessel_k0(x) + bessel_k0(x - hh)) / (hh * hh);
        };
        double fxx = (4 * d2(h / 2) - d2(h)) / 3;
        double fx = (bessel_k0(x + h) - bessel_k0(x - h)) / (2 * h);
        double resid = x * fxx + fx - x * bessel_k0(x);
        CHECK(std::abs(resid) <= 1e-6 * std::max(1.0, std::abs(x * bessel_k0(x))));
    }
}

TEST_CASE("incomplete K0") {
    CHECK(bessel_k0_incomplete(2.0, 0.0) == 0.0);
    CHECK_THROWS_AS(bessel_k0_incomplete(0.0, 1.0), std::domain_error);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> xd(0.3, 20), ad(0.01, 3);
    for (int i = 0; i < 200; ++i) {
        double x = xd(rng), a = ad(rng);
        CHECK(bessel_k0_incomplete(x, -a) ==
              doctest::Approx(-bessel_k0_incomplete(x, a)).epsilon(1e-12));
        // the sinh-based bound
        double b = std::sinh(a / 2);
        CHECK(std::abs(bessel_k0_incomplete(x, a)) < std::exp(-x * (1 + 2 * b * b)) / (x * b));
    }
    // ratio to K0 decreases monotonically toward 0 for fixed a
    double prev = 1.0;
    for (double x : {10.0, 20.0, 40.0}) {
        double r = bessel_k0_incomplete(x, 0.5) / bessel_k0(x);
        CHECK(r > 0);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("beta kernel closed form vs quadrature") {
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    // window boundary: t0^2 |w2/w1| = 1 gives zero
    CHECK(beta_kernel({2.0, 0.5}, 2.0) == 0.0);
    CHECK(beta_kernel({1.0, 1.0}, 1.0) == 0.0);
    CHECK(beta_kernel({4.0, 0.25}, 4.0) == 0.0);
    // reference point (1,1), t0 = 2: (1/2) K0(2 pi; log 4)
    double ref = 0.5 * bessel_k0_incomplete(2 * kPi, std::log(4.0), spec);
    CHECK(beta_kernel({1.0, 1.0}, 2.0) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(beta_kernel({1.0, 1.0}, 2.0) ==
          doctest::Approx(beta_kernel_integral({1.0, 1.0}, 2.0, spec)).epsilon(1e-10));
    CHECK_THROWS_AS(beta_kernel({0.0, 0.0}, 1.0), std::domain_error);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> wd(0.05, 1.5), td(0.3, 3.0), sg(-1, 1);
    for (int i = 0; i < 1000; ++i) {
        double w1 = wd(rng) * (sg(rng) > 0 ? 1 : -1);
        double w2 = wd(rng) * (sg(rng) > 0 ? 1 : -1);
        double t0 = td(rng);
        double a = beta_kernel({w1, w2}, t0, spec);
        double b = beta_kernel_integral({w1, w2}, t0, spec);
        CHECK(std::abs(a - b) <= 1e-11);
    }
}

TEST_CASE("beta kernel differential relation in v") {
    // (v d_v^2 + d_v - 4 pi^2 Q0^2 v) beta(lambda sqrt v)
    //   = 2 pi lam+ lam- exp(-2 pi v ((lam+)^2 + (lam-)^2))
    QuadratureSpec spec;
    spec.abs_tol = 1e-15;
    double l1 = 0.7, l2 = 1.1, t0 = 1.4;
    double q0 = l1 * l2;
    for (double v : {0.6, 1.0, 1.7}) {
        auto f = [&](double vv) {
            double s = std::sqrt(vv);
            return beta_kernel({l1 * s, l2 * s}, t0, spec);
        };
        double h = std::max(1e-4, 1e-4 * v);
        auto d2 = [&](double hh) { return (f(v + hh) - 2 * f(v) + f(v - hh)) / (hh * hh); };
        double fvv = (4 * d2(h / 2) - d2(h)) / 3;
        double fv = (8 * (f(v + h / 2) - f(v - h / 2)) - (f(v + h) - f(v - h))) / (6 * h);
        double lhs = v * fvv + fv - 4 * kPi * kPi * q0 * q0 * v * f(v);
        double lp = (l1 / t0 + l2 * t0) / 2, lm = (-l1 / t0 + l2 * t0) / 2;
        double rhs = 2 * kPi * lp * lm * std::exp(-2 * kPi * v * (lp * lp + lm * lm));
        CHECK(std::abs(lhs - rhs) <= 1e-5 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("beta tilde kernel") {
    double epsv = std::pow(5 + 2 * std::sqrt(6.0), 2);
    // w = 0 reduces to the exact log-square difference
    double t0 = 1.3;
    double expect = 0.5 * (std::pow(std::log(t0 * epsv), 2) - std::pow(std::log(t0), 2));
    CHECK(beta_tilde_kernel({0.0, 0.0}, t0, epsv) == doctest::Approx(expect).epsilon(1e-14));
    // positive integrand, positive log window
    CHECK(beta_tilde_kernel({0.3, 0.4}, 1.0, epsv) > 0);
    CHECK_THROWS_AS(beta_tilde_kernel({1.0, 1.0}, -1.0, epsv), std::invalid_argument);
}

TEST_CASE("kernel window identity on random inputs") {
    // integral over [t1, t2] = a * K0 + beta_{t1} - beta_{t2}
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> wd(0.05, 1.4), td(0.2, 2.5), sg(-1, 1);
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    for (int i = 0; i < 300; ++i) {
        double w1 = wd(rng) * (sg(rng) > 0 ? 1 : -1);
        double w2 = wd(rng) * (sg(rng) > 0 ? 1 : -1);
        double t1 = td(rng), t2 = t1 + td(rng);
        auto f = [&](double nu) {
            double a = w1 * std::exp(-nu), b = w2 * std::exp(nu);
            return std::exp(-kPi * (a * a + b * b));
        };
        double lhs = adaptive_simpson(f, std::log(t1), std::log(t2), spec).value;
        double fa;
        double r = std::abs(w1 / w2);
        if (r == t1 * t1 || r == t2 * t2) fa = 0.5;
        else fa = (t1 * t1 < r && r < t2 * t2) ? 1.0 : 0.0;
        double rhs = fa * bessel_k0(2 * kPi * std::abs(w1 * w2)) +
                     beta_kernel({w1, w2}, t1, spec) - beta_kernel({w1, w2}, t2, spec);
        CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
}

TEST_CASE("periodic Bernoulli polynomial") {
    CHECK(periodic_bernoulli_b1(0.0) == 0.0);
    CHECK(periodic_bernoulli_b1(0.25) == doctest::Approx(-0.25));
    CHECK(periodic_bernoulli_b1_exact(mpq_class(0)) == 0);
    CHECK(periodic_bernoulli_b1_exact(mpq_class(1, 4)) == mpq_class(-1, 4));
    CHECK(periodic_bernoulli_b1_exact(mpq_class(-3, 4)) == mpq_class(-1, 4));
    CHECK(periodic_bernoulli_b1_exact(mpq_class(7)) == 0);
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> xd(-5, 5);
    std::uniform_int_distribution<int> nd(-4, 4);
    for (int i = 0; i < 500; ++i) {
        double x = xd(rng);
        int n = nd(rng);
        CHECK(periodic_bernoulli_b1(x + n) + periodic_bernoulli_b1(-x) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("eta cubed expansion") {
    QSeries e = eta_cubed(210);
    CHECK(e.lead == mpq_class(1, 8));
    CHECK(e.coeff(0) == 1);
    CHECK(e.coeff(1) == -3);
    CHECK(e.coeff(2) == 0);
    CHECK(e.coeff(3) == 5);
    CHECK(e.coeff(6) == -7);
    // the two independent expansions agree to order 200
    QSeries p = eta_cubed_product(210);
    for (long k = 0; k <= 200; ++k) CHECK(e.coeff(k) == p.coeff(k));
}

TEST_CASE("q-series arithmetic") {
    QSeries a{mpq_class(0), {1, 2, 3}};
    QSeries b{mpq_class(0), {1, -1, 0}};
    QSeries s = a + b;
    CHECK(s.coeff(0) == 2);
    CHECK(s.coeff(1) == 1);
    QSeries m = a * b;
    CHECK(m.coeff(0) == 1);
    CHECK(m.coeff(1) == 1);
    CHECK(m.coeff(2) == 1);
    QSeries inv = inverse_unit_series(b, 3);
    QSeries prod = b * inv;
    CHECK(prod.coeff(0) == 1);
    CHECK(prod.coeff(1) == 0);
    CHECK(prod.coeff(2) == 0);
}
