#include "mmtheta/qfield.hpp"

#include <cmath>
#include <cstdlib>

namespace mmtheta {

void check_same_field(const QuadElem& x, const QuadElem& y) {
    if (x.d_ != y.d_)
        throw std::invalid_argument("QuadElem arithmetic across different fields");
}

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
    check_same_field(x, y);
    return QuadElem(x.a_ + y.a_, x.b_ + y.b_, x.d_);
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
    check_same_field(x, y);
    return QuadElem(x.a_ - y.a_, x.b_ - y.b_, x.d_);
}

QuadElem operator-(const QuadElem& x) { return QuadElem(-x.a_, -x.b_, x.d_); }

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
    check_same_field(x, y);
    return QuadElem(x.a_ * y.a_ + x.d_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_);
}

QuadElem operator*(const mpq_class& c, const QuadElem& x) {
    return QuadElem(c * x.a_, c * x.b_, x.d_);
}

QuadElem QuadElem::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero QuadElem");
    mpq_class n = norm();
    return QuadElem(a_ / n, -b_ / n, d_);
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inverse(); }

bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
}

QuadElem QuadElem::pow(long n) const {
    QuadElem base = n >= 0 ? *this : inverse();
    unsigned long e = static_cast<unsigned long>(n >= 0 ? n : -n);
    QuadElem r(1, 0, d_);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

int QuadElem::sign_real() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 against d*b^2
    return sa * sgn(norm());
}

double QuadElem::to_double() const {
    if (b_ == 0) return a_.get_d();
    double av = a_.get_d();
    double bv = b_.get_d() * std::sqrt(static_cast<double>(d_));
    double s = av + bv;
    // cancellation guard: a and b*sqrt(d) of opposite signs and nearly equal
    if (av * bv < 0 && std::abs(s) < 1e-6 * (std::abs(av) + std::abs(bv))) {
        double cv = av - bv; // conjugate, no cancellation here
        return norm().get_d() / cv;
    }
    return s;
}

std::string QuadElem::str() const {
    std::string s = a_.get_str();
    if (b_ != 0) {
        s += (sgn(b_) > 0 ? " + " : " - ");
        mpq_class ab = abs(b_);
        if (ab != 1) s += ab.get_str() + "*";
        s += "sqrt(" + std::to_string(d_) + ")";
    }
    return s;
}

int compare_abs_ratio(const QuadElem& x, const QuadElem& y) {
    if (x.is_zero() || y.is_zero())
        throw std::domain_error("compare_abs_ratio: zero input");
    // |x/x'| vs |y/y'|  <=>  |x y'| vs |x' y| = |(x y')'|
    QuadElem u = x * y.conj();
    // |u| vs |u'|: u^2 - u'^2 = 4 a b sqrt(d)
    return sgn(u.a()) * sgn(u.b());
}

int compare_ratio_with(const QuadElem& lam, const QuadElem& s) {
    if (lam.is_zero()) throw std::domain_error("compare_ratio_with: zero element");
    if (s.sign_real() <= 0) throw std::domain_error("compare_ratio_with: scale must embed positively");
    // |lam/lam'| vs sigma(s)  <=>  lam^2 vs s^2 lam'^2  (all embeddings real)
    QuadElem f = lam * lam - s * s * lam.conj() * lam.conj();
    return f.sign_real();
}

namespace {

bool is_squarefree(long d) {
    if (d <= 1) return false;
    for (long f = 2; f * f <= d; ++f) {
        if (d % (f * f) == 0) return false;
    }
    return true;
}

// Fundamental unit of the maximal order of Q(sqrt d) by the purely periodic
// continued fraction of a reduced quadratic irrational alpha = (P0 + sqrt d)/Q0
// generating the order.  The unit is q_{l-1} * alpha + q_{l-2} for period l.
QuadElem fundamental_unit_cf(long d, bool half) {
    mpz_class D(d);
    mpz_class isq;
    mpz_sqrt(isq.get_mpz_t(), D.get_mpz_t());
    mpz_class P0, Q0;
    if (half) {
        P0 = (isq % 2 == 1) ? isq : isq - 1; // largest odd below sqrt(d)
        Q0 = 2;
    } else {
        P0 = isq;
        Q0 = 1;
    }
    mpz_class P = P0, Q = Q0;
    mpz_class q_prev = 1, q_cur = 0; // q_{-2} = 1, q_{-1} = 0
    for (int k = 0; k < 100000; ++k) {
        mpz_class ak = (P + isq) / Q;
        mpz_class q_next = ak * q_cur + q_prev;
        q_prev = q_cur;
        q_cur = q_next;
        P = ak * Q - P;
        Q = (D - P * P) / Q;
        if (P == P0 && Q == Q0) {
            // eps = q_{l-1} * (P0 + sqrt d)/Q0 + q_{l-2}
            mpq_class qa(q_cur * P0 + q_prev * Q0, Q0);
            mpq_class qb(q_cur, Q0);
            qa.canonicalize();
            qb.canonicalize();
            // note: after the loop body, q_cur = q_{l-1} and q_prev = q_{l-2}
            return QuadElem(qa, qb, d);
        }
    }
    throw std::runtime_error("continued fraction period not found");
}

} // namespace

RealQuadField::RealQuadField(long d) : d_(d), half_(false), fund_unit_(), tp_unit_() {
    if (d <= 1) throw std::invalid_argument("RealQuadField: d must be > 1");
    if (!is_squarefree(d)) throw std::invalid_argument("RealQuadField: d must be squarefree");
    half_ = (d % 4 == 1);
    fund_unit_ = fundamental_unit_cf(d, half_);
    mpq_class nm = fund_unit_.norm();
    if (nm != 1 && nm != -1) throw std::logic_error("fundamental unit has |norm| != 1");
    if (fund_unit_.sign_real() <= 0) throw std::logic_error("fundamental unit not positive");
    tp_unit_ = (nm == 1) ? fund_unit_ : fund_unit_ * fund_unit_;
}

bool RealQuadField::in_maximal_order(const QuadElem& x) const {
    if (x.d() != d_) throw std::invalid_argument("field mismatch");
    if (!half_) {
        return x.a().get_den() == 1 && x.b().get_den() == 1;
    }
    // basis {1, (1+sqrt d)/2}: x = p + q sqrt(d) = (p - q) + 2q * omega
    mpq_class two_q = 2 * x.b();
    mpq_class diff = x.a() - x.b();
    return two_q.get_den() == 1 && diff.get_den() == 1;
}

UnitGroupGenerator gamma_L_generator(const RealQuadField& field, long m, long bound) {
    if (m < 1) throw std::invalid_argument("gamma_L_generator: m must be >= 1");
    const QuadElem& eps = field.totally_positive_unit();
    QuadElem u = eps;
    for (long k = 1; k <= bound; ++k) {
        // (u - 1) / (m sqrt d) = b/m + a/(m d) * sqrt(d) for u - 1 = a + b sqrt d
        QuadElem num = u - field.one();
        QuadElem z(num.b() / m, num.a() / (mpq_class(m) * field.d()), field.d());
        if (field.in_maximal_order(z)) {
            return UnitGroupGenerator{u, k};
        }
        u *= eps;
    }
    throw std::runtime_error("gamma_L_generator: no unit power == 1 mod (m sqrt d) up to bound " +
                             std::to_string(bound));
}

} // namespace mmtheta
