#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mmtheta/qfield.hpp"

#include <cmath>
#include <random>

using namespace mmtheta;

namespace {

// brute-force oracle: smallest unit > 1 of the maximal order by scanning the
// coefficient grid; feasible only for small coordinate ranges
double smallest_unit_above_one(const RealQuadField& f, long coeff_bound) {
    double best = 1e300;
    double sd = std::sqrt(static_cast<double>(f.d()));
    for (long a = -coeff_bound; a <= coeff_bound; ++a) {
        for (long b = -coeff_bound; b <= coeff_bound; ++b) {
            QuadElem x = f.half_integral_basis()
                             ? f.element(mpq_class(2 * a + b, 2), mpq_class(b, 2))
                             : f.element(a, b);
            mpq_class nm = x.norm();
            if (nm != 1 && nm != -1) continue;
            double v = x.a().get_d() + x.b().get_d() * sd;
            if (v > 1 + 1e-12 && v < best) best = v;
        }
    }
    return best;
}

QuadElem rand_elem(const RealQuadField& f, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-30, 30), den(1, 7);
    return f.element(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

} // namespace

TEST_CASE("fundamental units of small fields") {
    // 5 + 2 sqrt 6 for d = 6
    RealQuadField f6(6);
    CHECK(f6.fundamental_unit() == f6.element(5, 2));
    // 1 + sqrt 2 for d = 2 (norm -1)
    RealQuadField f2(2);
    CHECK(f2.fundamental_unit() == f2.element(1, 1));
    CHECK(f2.fundamental_unit().norm() == -1);
    // golden ratio for d = 5
    RealQuadField f5(5);
    CHECK(f5.fundamental_unit() == f5.element(mpq_class(1, 2), mpq_class(1, 2)));
    // (3 + sqrt 13)/2 for d = 13
    RealQuadField f13(13);
    CHECK(f13.fundamental_unit() == f13.element(mpq_class(3, 2), mpq_class(1, 2)));
}

TEST_CASE("fundamental unit is minimal (brute-force oracle)") {
    for (long d : {2, 3, 5, 6, 7, 10, 11, 13, 14, 15}) {
        RealQuadField f(d);
        double u = f.fundamental_unit().to_double();
        CHECK(u > 1);
        CHECK(std::abs(f.fundamental_unit().norm().get_d()) == 1);
        double oracle = smallest_unit_above_one(f, 60);
        if (oracle < 1e299) {
            CHECK(u == doctest::Approx(oracle).epsilon(1e-12));
        }
    }
}

TEST_CASE("rejects bad discriminants") {
    CHECK_THROWS_AS(RealQuadField(12), std::invalid_argument); // not squarefree
    CHECK_THROWS_AS(RealQuadField(1), std::invalid_argument);
    CHECK_THROWS_AS(RealQuadField(0), std::invalid_argument);
    CHECK_THROWS_AS(RealQuadField(-6), std::invalid_argument);
}

TEST_CASE("congruence unit group generators") {
    RealQuadField f6(6);
    auto g = gamma_L_generator(f6, 2);
    CHECK(g.eps_L == f6.element(49, 20)); // (5 + 2 sqrt6)^2
    CHECK(g.power_of_fundamental == 2);
    // (eps_L - 1)/(2 sqrt 6) = 10 + 4 sqrt 6 lies in the maximal order
    QuadElem q = (g.eps_L - f6.one()) / (f6.from_rational(2) * f6.sqrt_d());
    CHECK(q == f6.element(10, 4));
    CHECK(f6.in_maximal_order(q));

    RealQuadField f2(2);
    auto g2 = gamma_L_generator(f2, 1);
    CHECK(g2.eps_L == f2.element(3, 2)); // (1 + sqrt2)^2
    CHECK(g2.power_of_fundamental == 1);

    // brute-force confirmation of minimality for a few (d, m)
    for (auto [d, m] : std::vector<std::pair<long, long>>{{6, 1}, {6, 2}, {2, 1}, {2, 2}}) {
        RealQuadField f(d);
        auto gen = gamma_L_generator(f, m);
        QuadElem u = f.totally_positive_unit();
        for (long k = 1; k < gen.power_of_fundamental; ++k) {
            QuadElem pw = u.pow(k);
            QuadElem num = pw - f.one();
            QuadElem z(num.b() / m, num.a() / (mpq_class(m) * d), d);
            CHECK_FALSE(f.in_maximal_order(z));
        }
        CHECK(gen.eps_L.is_totally_positive());
        CHECK(gen.eps_L.sign_real() > 0);
        CHECK(gen.eps_L.to_double() > 1);
    }
}

TEST_CASE("exact ratio comparisons") {
    RealQuadField f(6);
    QuadElem eps = f.element(5, 2);
    CHECK(compare_abs_ratio(f.element(1, 1), f.one()) > 0);   // (7+2sqrt6)/5 > 1
    CHECK(compare_abs_ratio(eps, eps) == 0);
    CHECK(compare_abs_ratio(f.one(), eps) < 0);
    CHECK_THROWS_AS(compare_abs_ratio(f.zero(), eps), std::domain_error);

    // |lambda/lambda'| against field scales
    CHECK(compare_ratio_with(f.element(1, 1), f.one()) > 0);
    CHECK(compare_ratio_with(f.one(), f.one()) == 0);
    CHECK(compare_ratio_with(eps, eps * eps) == 0); // |eps/eps'| = eps^2 exactly
    CHECK(compare_ratio_with(eps, eps * eps * eps) < 0);
}

TEST_CASE("norm multiplicativity and conjugation involution (property)") {
    std::mt19937 rng(7);
    RealQuadField f(6);
    for (int i = 0; i < 500; ++i) {
        QuadElem x = rand_elem(f, rng), y = rand_elem(f, rng);
        CHECK((x * y).norm() == x.norm() * y.norm());
        CHECK(x.conj().conj() == x);
        CHECK((x + y).conj() == x.conj() + y.conj());
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK(x.norm() == (x * x.conj()).a());
    }
}

TEST_CASE("exact real-embedding signs") {
    RealQuadField f(6);
    CHECK(f.element(5, -2).sign_real() > 0);   // 5 - 2 sqrt6 = 0.101...
    CHECK(f.element(-5, 2).sign_real() < 0);
    CHECK(f.element(2, -1).sign_real() < 0);   // 2 - sqrt6 < 0
    CHECK(f.element(-2, 1).sign_real() > 0);
    CHECK(f.zero().sign_real() == 0);
    CHECK(f.element(0, -3).sign_real() < 0);
    // cancellation-proof double conversion: eps^-8 is tiny but positive
    QuadElem small = f.element(5, -2).pow(8);
    CHECK(small.to_double() > 0);
    CHECK(small.to_double() == doctest::Approx(std::pow(5 - 2 * std::sqrt(6.0), 8)).epsilon(1e-12));
}

TEST_CASE("division and powers are exact") {
    RealQuadField f(6);
    QuadElem eps = f.element(5, 2);
    CHECK(eps * eps.inverse() == f.one());
    CHECK(eps.pow(3) * eps.pow(-3) == f.one());
    CHECK(eps.pow(2) == f.element(49, 20));
    CHECK_THROWS_AS(f.zero().inverse(), std::domain_error);
}
