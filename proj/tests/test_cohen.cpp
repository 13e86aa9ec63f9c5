#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mmtheta/cohen.hpp"
#include "mmtheta/verify.hpp"

#include <cmath>

using namespace mmtheta;

TEST_CASE("sigma expansions match the printed leading terms") {
    QSeries s = sigma_expansion(12);
    // 1 + q - q^2 + 2q^3 - 2q^4 + q^5 + ...
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(1) == 1);
    CHECK(s.coeff(2) == -1);
    CHECK(s.coeff(3) == 2);
    CHECK(s.coeff(4) == -2);
    CHECK(s.coeff(5) == 1);

    QSeries ss = sigma_star_expansion(12);
    // -2q - 2q^2 - 2q^3 + 2q^7 + 2q^8 + 2q^10 + ...
    CHECK(ss.coeff(0) == 0);
    CHECK(ss.coeff(1) == -2);
    CHECK(ss.coeff(2) == -2);
    CHECK(ss.coeff(3) == -2);
    CHECK(ss.coeff(4) == 0);
    CHECK(ss.coeff(7) == 2);
    CHECK(ss.coeff(8) == 2);
    CHECK(ss.coeff(10) == 2);
}

TEST_CASE("the two representations of each series agree to order 200") {
    QSeries a = sigma_expansion(201), b = sigma_expansion_alt(201);
    for (long k = 0; k <= 200; ++k) CHECK(a.coeff(k) == b.coeff(k));
    QSeries c = sigma_star_expansion(201), d = sigma_star_expansion_alt(201);
    for (long k = 0; k <= 200; ++k) CHECK(c.coeff(k) == d.coeff(k));
}

TEST_CASE("Pell class counts") {
    CHECK(pell_t(1).t_value == 1);
    CHECK(pell_t(25).t_value == 1);
    CHECK(pell_t(-23).t_value == -2);
    CHECK(pell_t(49).t_value == -1);
    CHECK(pell_t(73).t_value == 2);
    CHECK_THROWS_AS(pell_t(2), std::invalid_argument);
    CHECK_THROWS_AS(pell_t(0), std::invalid_argument);
    CHECK_THROWS_AS(pell_t(-1), std::invalid_argument); // -1 = 23 mod 24
}

TEST_CASE("generating identity for |n| <= 240") {
    IdentityReport rep = generating_identity_check(240);
    CHECK(rep.passed);
    CHECK(rep.mismatches == 0);
    CHECK(rep.checked == 20);
}

TEST_CASE("mismatch injection is detected") {
    // flipping one coefficient must break the comparison the report performs
    QSeries s = sigma_expansion(11);
    long n = 97; // coefficient (n-1)/24 = 4
    mpq_class good = s.coeff(4);
    mpq_class bad = good + 1;
    CHECK(mpq_class(pell_t(n).t_value) == good);
    CHECK(mpq_class(pell_t(n).t_value) != bad);
}

TEST_CASE("phi0 assembles identically from the lattice and from the Pell counts") {
    for (std::complex<double> tau : {std::complex<double>(0.1, 0.9),
                                     std::complex<double>(-0.35, 1.2)}) {
        Phi0Value p = phi0_assembly(tau, 1e-8);
        CHECK(p.difference <= 1e-8);
    }
}

TEST_CASE("phi0 W-coefficient at n = 1 is T(1) = 1 (two half contributions)") {
    Preset cohen = make_cohen_preset();
    auto& f = cohen.lattice->field();
    ScaleT one = ScaleT::exact(f.one());
    ScaleT eps = ScaleT::exact(cohen.eps);
    double total = 0;
    // the four-term combination with signs +,-,-,+ over h1, h2, h3, h4
    double sign[4] = {1, -1, -1, 1};
    const char* names[4] = {"h1", "h2", "h3", "h4"};
    for (int i = 0; i < 4; ++i) {
        for (const auto& orb : enumerate_orbits(cohen.coset(names[i]), one, mpq_class(1, 12))) {
            if (orb.is_zero || orb.q_value != mpq_class(1, 24)) continue;
            total += sign[i] * orbit_a_sum(orb, one, eps, *cohen.lattice).get_d();
        }
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("phi0 is annihilated by the shifted Laplacian") {
    auto f = [&](std::complex<double> z) { return phi0_assembly(z, 1e-10).via_pell.value; };
    double res = std::abs(laplacian_fd(f, std::complex<double>(0.1, 0.9)));
    CHECK(res <= 1e-4);
}

TEST_CASE("window-coefficient table matches the reference table exactly") {
    Preset cohen = make_cohen_preset();
    auto expected = table1_reference();
    auto got = table1_computed(cohen, mpq_class(100));
    REQUIRE(got.size() == expected.size());
    auto key = [](const WindowTableEntry& e) {
        return std::tuple<long, std::string, std::string, std::string>(
            e.norm, e.coset, e.beta.a().get_str(), e.beta.b().get_str());
    };
    std::sort(expected.begin(), expected.end(),
              [&](const auto& l, const auto& r) { return key(l) < key(r); });
    std::sort(got.begin(), got.end(),
              [&](const auto& l, const auto& r) { return key(l) < key(r); });
    for (size_t i = 0; i < expected.size(); ++i) {
        CAPTURE(i);
        CHECK(key(got[i]) == key(expected[i]));
        CHECK(got[i].a == expected[i].a);
    }
}

TEST_CASE("table norms form the reference multiset") {
    Preset cohen = make_cohen_preset();
    auto got = table1_computed(cohen, mpq_class(100));
    std::vector<long> norms;
    for (const auto& e : got) norms.push_back(e.norm);
    std::sort(norms.begin(), norms.end());
    std::vector<long> expect = {1, 1, 23, 23, 25, 25, 25, 25, 47, 47, 49,
                                49, 71, 71, 73, 73, 95, 95, 95, 95, 97, 97};
    CHECK(norms == expect);
}
