#ifndef MMTHETA_QFIELD_HPP
#define MMTHETA_QFIELD_HPP

// Exact arithmetic in real quadratic fields Q(sqrt(D)): field elements with
// arbitrary-precision rational coordinates, fundamental units via continued
// fractions, and the congruence unit groups Gamma_L.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mmtheta {

class RealQuadField;

// Element a + b*sqrt(d) of Q(sqrt(d)), a and b exact rationals.
class QuadElem {
public:
    QuadElem() : a_(0), b_(0), d_(0) {}
    QuadElem(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        a_.canonicalize();
        b_.canonicalize();
    }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    long d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QuadElem conj() const { return QuadElem(a_, -b_, d_); }
    mpq_class norm() const { return a_ * a_ - d_ * b_ * b_; }
    mpq_class trace() const { return 2 * a_; }

    // Exact sign of the real embedding a + b*sqrt(d).
    int sign_real() const;
    bool is_totally_positive() const { return sign_real() > 0 && conj().sign_real() > 0; }

    // Real embedding as a double; guards against cancellation when a and
    // b*sqrt(d) nearly cancel by routing through the norm.
    double to_double() const;

    QuadElem inverse() const;
    QuadElem pow(long n) const;

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator-(const QuadElem& x);
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator*(const mpq_class& c, const QuadElem& x);
    friend bool operator==(const QuadElem& x, const QuadElem& y);
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

    QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
    QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
    QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }
    QuadElem& operator/=(const QuadElem& y) { return *this = *this / y; }

    std::string str() const;

private:
    mpq_class a_, b_;
    long d_;
    friend void check_same_field(const QuadElem& x, const QuadElem& y);
};

// Compares |x| with |y| where y is forced to be the conjugate partner,
// i.e. the exact ordering of |u| vs |u'| for u = x * conj(y).  Returns
// -1, 0, +1.  Used for all |lambda/lambda'| window tests.
int compare_abs_ratio(const QuadElem& x, const QuadElem& y);

// Exact ordering of the real number |lam/conj(lam)| against the real
// embedding of s (s must embed positively).  Returns -1, 0, +1.
int compare_ratio_with(const QuadElem& lam, const QuadElem& s);

struct UnitGroupGenerator {
    QuadElem eps_L;            // generator of Gamma_L, totally positive, > 1
    long power_of_fundamental; // eps_L = (totally positive fundamental unit)^k
};

// A real quadratic field Q(sqrt(d)) with d squarefree > 1, together with its
// maximal order and fundamental unit.
class RealQuadField {
public:
    explicit RealQuadField(long d);

    long d() const { return d_; }
    // true when the maximal order is Z[(1+sqrt d)/2] (d = 1 mod 4)
    bool half_integral_basis() const { return half_; }
    long discriminant() const { return half_ ? d_ : 4 * d_; }

    // Fundamental unit of the maximal order, real embedding > 1.
    const QuadElem& fundamental_unit() const { return fund_unit_; }
    // Fundamental totally positive unit (= fundamental unit or its square).
    const QuadElem& totally_positive_unit() const { return tp_unit_; }

    QuadElem element(const mpq_class& a, const mpq_class& b) const { return QuadElem(a, b, d_); }
    QuadElem from_rational(const mpq_class& a) const { return QuadElem(a, 0, d_); }
    QuadElem sqrt_d() const { return QuadElem(0, 1, d_); }
    QuadElem one() const { return QuadElem(1, 0, d_); }
    QuadElem zero() const { return QuadElem(0, 0, d_); }

    // Exact membership of x in the maximal order.
    bool in_maximal_order(const QuadElem& x) const;

    bool operator==(const RealQuadField& o) const { return d_ == o.d_; }

private:
    long d_;
    bool half_;
    QuadElem fund_unit_;
    QuadElem tp_unit_;
};

// Smallest power eps_L = (totally positive fundamental unit)^k congruent to 1
// modulo the ideal (m*sqrt(d)) of the maximal order.  Throws if no power up to
// `bound` works.
UnitGroupGenerator gamma_L_generator(const RealQuadField& field, long m, long bound = 1000000);

} // namespace mmtheta

#endif
