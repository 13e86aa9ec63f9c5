#include "mmtheta/qseries.hpp"

#include <numbers>

namespace mmtheta {

QSeries operator+(const QSeries& x, const QSeries& y) {
    mpq_class shift = y.lead - x.lead;
    if (shift.get_den() != 1) throw std::invalid_argument("QSeries+: incompatible leads");
    long s = static_cast<long>(shift.get_num().get_si());
    if (s < 0) return y + x;
    // valid order is limited by the tighter of the two truncations
    long n = std::min(x.order(), s + y.order());
    QSeries r{x.lead, std::vector<mpq_class>(static_cast<size_t>(std::max<long>(n, 0)))};
    for (long k = 0; k < n; ++k) {
        r.c[k] = x.coeff(k);
        if (k - s >= 0 && k - s < y.order()) r.c[k] += y.coeff(k - s);
    }
    return r;
}

QSeries operator*(const QSeries& x, const QSeries& y) {
    long n = std::min(x.order(), y.order());
    QSeries r{x.lead + y.lead, std::vector<mpq_class>(static_cast<size_t>(std::max<long>(n, 0)))};
    for (long i = 0; i < x.order() && i < n; ++i) {
        if (x.c[i] == 0) continue;
        for (long j = 0; j < y.order() && i + j < n; ++j) {
            if (y.c[j] == 0) continue;
            r.c[i + j] += x.c[i] * y.c[j];
        }
    }
    return r;
}

QSeries inverse_unit_series(const QSeries& x, long n) {
    if (x.order() < 1 || x.c[0] != 1)
        throw std::invalid_argument("inverse_unit_series: constant term must be 1");
    QSeries r{-x.lead, std::vector<mpq_class>(static_cast<size_t>(n))};
    r.c[0] = 1;
    for (long k = 1; k < n; ++k) {
        mpq_class s = 0;
        for (long j = 1; j <= k && j < x.order(); ++j) s += x.c[j] * r.c[k - j];
        r.c[k] = -s;
    }
    return r;
}

std::complex<double> QSeries::eval(std::complex<double> q) const {
    std::complex<double> acc = 0;
    std::complex<double> qk = std::pow(q, lead.get_d());
    for (long k = 0; k < order(); ++k) {
        if (c[k] != 0) acc += c[k].get_d() * qk;
        qk *= q;
    }
    return acc;
}

QSeries eta_cubed(long order) {
    if (order < 1) throw std::invalid_argument("eta_cubed: order must be >= 1");
    QSeries r{mpq_class(1, 8), std::vector<mpq_class>(static_cast<size_t>(order))};
    for (long n = 0;; ++n) {
        long e = n * (n + 1) / 2;
        if (e >= order) break;
        r.c[e] = (n % 2 == 0 ? 1 : -1) * (2 * n + 1);
    }
    return r;
}

QSeries eta_cubed_product(long order) {
    std::vector<mpq_class> p(static_cast<size_t>(order));
    p[0] = 1;
    for (long n = 1; n < order; ++n) {
        // multiply by (1 - q^n)^3 = 1 - 3q^n + 3q^{2n} - q^{3n}
        for (long k = order - 1; k >= 0; --k) {
            mpq_class v = p[k];
            if (v == 0) continue;
            if (k + n < order) p[k + n] -= 3 * v;
            if (k + 2 * n < order) p[k + 2 * n] += 3 * v;
            if (k + 3 * n < order) p[k + 3 * n] -= v;
        }
    }
    return QSeries{mpq_class(1, 8), std::move(p)};
}

} // namespace mmtheta
