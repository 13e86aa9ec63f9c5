#ifndef MMTHETA_QSERIES_HPP
#define MMTHETA_QSERIES_HPP

// Truncated q-expansions with a rational leading exponent and exact
// coefficients: series = q^lead * sum_k c[k] q^k + O(q^(lead + order)).

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <vector>

namespace mmtheta {

struct QSeries {
    mpq_class lead;               // leading exponent
    std::vector<mpq_class> c;     // coefficients of q^(lead + k)

    long order() const { return static_cast<long>(c.size()); }

    // coefficient of q^(lead + k)
    const mpq_class& coeff(long k) const {
        if (k < 0 || k >= order()) throw std::out_of_range("QSeries::coeff");
        return c[static_cast<size_t>(k)];
    }

    QSeries truncated(long n) const {
        QSeries r{lead, c};
        if (n < r.order()) r.c.resize(static_cast<size_t>(n));
        return r;
    }

    friend QSeries operator+(const QSeries& x, const QSeries& y);
    friend QSeries operator*(const QSeries& x, const QSeries& y);

    // numeric evaluation at q (|q| < 1)
    std::complex<double> eval(std::complex<double> q) const;
};

// multiplicative inverse of a series with unit constant term, to order n
QSeries inverse_unit_series(const QSeries& x, long n);

// q-expansion of eta(tau)^3 = q^{1/8} prod (1-q^n)^3 to the requested order,
// exact integer coefficients (computed from the triangular-number sum).
QSeries eta_cubed(long order);

// oracle route for the tests: direct expansion of the product prod (1-q^n)^3
QSeries eta_cubed_product(long order);

} // namespace mmtheta

#endif
