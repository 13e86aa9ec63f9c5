#include "mmtheta/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace mmtheta {

namespace {

// sqrt(d)-coefficient of x*conj(y) - conj(x)*y (its rational part vanishes)
mpq_class cross(const QuadElem& x, const QuadElem& y) {
    QuadElem t = x * y.conj() - x.conj() * y;
    if (t.a() != 0) throw std::logic_error("cross: nonzero rational part");
    return t.b();
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

} // namespace

ScaleT ScaleT::exact(const QuadElem& t) {
    if (t.sign_real() <= 0) throw std::invalid_argument("ScaleT: t must embed positively");
    ScaleT s;
    s.square = t * t;
    s.value = t.to_double();
    return s;
}

ScaleT ScaleT::from_square(const QuadElem& t_sq) {
    if (t_sq.sign_real() <= 0) throw std::invalid_argument("ScaleT: t^2 must embed positively");
    ScaleT s;
    s.square = t_sq;
    s.value = std::sqrt(t_sq.to_double());
    return s;
}

std::pair<mpq_class, mpq_class> AnisotropicLattice::coords(const QuadElem& x, const QuadElem& e1,
                                                           const QuadElem& e2) {
    mpq_class den = cross(e1, e2);
    if (den == 0) throw std::invalid_argument("coords: degenerate basis");
    return {cross(x, e2) / den, cross(e1, x) / den};
}

AnisotropicLattice::AnisotropicLattice(RealQuadField field, QuadElem a1, QuadElem a2, long m)
    : field_(std::move(field)), a1_(std::move(a1)), a2_(std::move(a2)), m_(m),
      epsL_{QuadElem(), 0} {
    if (m_ < 1) throw std::invalid_argument("lattice: M must be >= 1");
    if (a1_.d() != field_.d() || a2_.d() != field_.d())
        throw std::invalid_argument("lattice: basis not in the given field");
    mpq_class c = cross(a1_, a2_);
    if (c == 0) throw std::invalid_argument("lattice: ideal basis is degenerate");

    // ideal check: multiplication by the maximal-order generator stays inside
    QuadElem omega = field_.half_integral_basis()
                         ? field_.element(mpq_class(1, 2), mpq_class(1, 2))
                         : field_.sqrt_d();
    for (const QuadElem* g : {&a1_, &a2_}) {
        auto [x, y] = coords(omega * (*g), a1_, a2_);
        if (!is_integer(x) || !is_integer(y))
            throw std::invalid_argument("lattice: basis does not span a fractional ideal");
    }

    // A = Nm(ideal) from the basis determinant against sqrt(disc)
    mpq_class abs_c = abs(c);
    a_norm_ = field_.half_integral_basis() ? abs_c : abs_c / 2;

    u1_ = mpq_class(m_) * a1_;
    u2_ = mpq_class(m_) * a2_;

    // dual basis: L* = a * d^{-1} with d = (sqrt(disc))
    QuadElem gd = field_.half_integral_basis() ? field_.sqrt_d()
                                               : mpq_class(2) * field_.sqrt_d();
    b1_ = a1_ / gd;
    b2_ = a2_ / gd;

    // even integral: Q in Z on basis vectors, B in Z across
    if (!is_integer(quad_form(u1_)) || !is_integer(quad_form(u2_)) ||
        !is_integer(bilinear(u1_, u2_)))
        throw std::invalid_argument("lattice: form is not even integral on L");

    epsL_ = gamma_L_generator(field_, m_);
    log_epsL_ = std::log(epsL_.eps_L.to_double());

    mpz_class lv = quad_form(b1_).get_den();
    mpz_class l2 = quad_form(b2_).get_den();
    mpz_class l3 = bilinear(b1_, b2_).get_den();
    mpz_lcm(lv.get_mpz_t(), lv.get_mpz_t(), l2.get_mpz_t());
    mpz_lcm(lv.get_mpz_t(), lv.get_mpz_t(), l3.get_mpz_t());
    level_ = lv;
}

bool AnisotropicLattice::contains(const QuadElem& x) const {
    auto [s, t] = coords(x, u1_, u2_);
    return is_integer(s) && is_integer(t);
}

bool AnisotropicLattice::dual_contains(const QuadElem& x) const {
    auto [s, t] = coords(x, b1_, b2_);
    return is_integer(s) && is_integer(t);
}

Coset::Coset(LatticePtr lattice, QuadElem h) : lat_(std::move(lattice)), h_(std::move(h)) {
    if (!lat_) throw std::invalid_argument("Coset: null lattice");
    if (!lat_->dual_contains(h_))
        throw std::invalid_argument("Coset: h is not in the dual lattice");
    trivial_ = lat_->contains(h_);
    // Gamma_L must stabilize the coset: (eps_L - 1) h in L
    QuadElem shift = (lat_->eps_L().eps_L - lat_->field().one()) * h_;
    if (!lat_->contains(shift))
        throw std::invalid_argument("Coset: eps_L does not stabilize L + h");
}

bool Coset::contains(const QuadElem& x) const { return lat_->contains(x - h_); }

bool Coset::same_coset(const Coset& o) const {
    return lat_->field().d() == o.lat_->field().d() && lat_->contains(h_ - o.h_);
}

std::pair<double, double> embed(const AnisotropicLattice& lat, const QuadElem& lambda) {
    double s = std::sqrt(lat.scale().get_d());
    return {lambda.to_double() / s, lambda.conj().to_double() / s};
}

ProjectedVector project(std::pair<double, double> lp, double t) {
    if (!(t > 0)) throw std::invalid_argument("project: t must be positive");
    return ProjectedVector{t, (lp.first / t + lp.second * t) / 2,
                           (-lp.first / t + lp.second * t) / 2};
}

namespace {

OrbitRep make_rep(const AnisotropicLattice& lat, const QuadElem& lam0) {
    OrbitRep r;
    r.lambda0 = lam0;
    r.q_value = lat.quad_form(lam0);
    mpq_class an = abs(lam0.norm());
    r.mu = (1 / an) * (lam0 * lam0);
    r.is_zero = false;
    return r;
}

} // namespace

std::pair<OrbitRep, long> reduce(const Coset& coset, const QuadElem& lambda, const ScaleT& t0) {
    if (lambda.is_zero()) throw std::invalid_argument("reduce: zero vector");
    if (!t0.is_exact()) throw std::invalid_argument("reduce: t0^2 must be exact");
    const AnisotropicLattice& lat = coset.lattice();
    const QuadElem& eps = lat.eps_L().eps_L;
    const QuadElem eps_inv = eps.conj(); // Nm(eps_L) = 1
    const QuadElem lo = *t0.square;
    const QuadElem hi = lo * eps * eps;

    QuadElem lam = lambda;
    long n = 0;
    for (int guard = 0; guard < 100000; ++guard) {
        if (compare_ratio_with(lam, lo) < 0) {
            lam *= eps;
            --n;
        } else if (compare_ratio_with(lam, hi) >= 0) {
            lam *= eps_inv;
            ++n;
        } else {
            return {make_rep(lat, lam), n};
        }
    }
    throw std::runtime_error("reduce: window not reached (input too extreme)");
}

std::vector<OrbitRep> enumerate_orbits(const Coset& coset, const ScaleT& t0,
                                       const mpq_class& norm_bound) {
    if (norm_bound < 0) throw std::invalid_argument("enumerate_orbits: negative bound");
    const AnisotropicLattice& lat = coset.lattice();
    std::vector<OrbitRep> out;
    if (coset.is_trivial()) out.push_back(OrbitRep::zero_orbit(lat.field()));
    if (norm_bound == 0) return out;

    // |lambda| <= sqrt(B*A*M)*t0*eps_L  and  |lambda'| <= sqrt(B*A*M)/t0 on the
    // canonical window; invert the basis matrix for (m,n) ranges.
    double bam = std::sqrt(mpq_class(norm_bound * lat.scale()).get_d());
    double epsv = lat.eps_L().eps_L.to_double();
    double R1 = bam * t0.value * epsv * (1 + 1e-9);
    double R2 = bam / t0.value * (1 + 1e-9);

    auto [h1, h2] = embed(lat, coset.h());
    auto [u11, u12] = embed(lat, lat.basis1());
    auto [u21, u22] = embed(lat, lat.basis2());
    double sc = std::sqrt(lat.scale().get_d());
    // work in unscaled embeddings; the common 1/sqrt(AM) cancels in the ratios
    double sh1 = h1 * sc, sh2 = h2 * sc;
    double s11 = u11 * sc, s12 = u12 * sc, s21 = u21 * sc, s22 = u22 * sc;
    double det = s11 * s22 - s21 * s12;
    double B1 = ((R1 + std::abs(sh1)) * std::abs(s22) + (R2 + std::abs(sh2)) * std::abs(s21)) /
                std::abs(det);
    long X = static_cast<long>(std::floor(B1)) + 2;

    // for each x the two embedding constraints cut out an interval of y
    auto interval = [](double lo_val, double hi_val, double base, double slope, double& lo,
                       double& hi) {
        // lo_val <= base + slope*y <= hi_val
        double a = (lo_val - base) / slope, b = (hi_val - base) / slope;
        lo = std::min(a, b);
        hi = std::max(a, b);
    };

    std::map<std::pair<mpq_class, mpq_class>, OrbitRep> found;
    for (long x = -X; x <= X; ++x) {
        double base1 = sh1 + x * s11, base2 = sh2 + x * s12;
        double lo1, hi1, lo2, hi2;
        interval(-R1, R1, base1, s21, lo1, hi1);
        interval(-R2, R2, base2, s22, lo2, hi2);
        long ylo = static_cast<long>(std::floor(std::max(lo1, lo2))) - 1;
        long yhi = static_cast<long>(std::ceil(std::min(hi1, hi2))) + 1;
        for (long y = ylo; y <= yhi; ++y) {
            QuadElem lam = coset.h() + mpq_class(x) * lat.basis1() + mpq_class(y) * lat.basis2();
            if (lam.is_zero()) continue;
            mpq_class q = lat.quad_form(lam);
            if (abs(q) > norm_bound) continue;
            auto [rep, n] = reduce(coset, lam, t0);
            found.emplace(std::make_pair(rep.lambda0.a(), rep.lambda0.b()), rep);
        }
    }

    std::vector<OrbitRep> reps;
    reps.reserve(found.size());
    for (auto& [k, v] : found) reps.push_back(v);
    std::sort(reps.begin(), reps.end(), [](const OrbitRep& l, const OrbitRep& r) {
        mpq_class al = abs(l.q_value), ar = abs(r.q_value);
        if (al != ar) return al < ar;
        int sl = sgn(l.q_value), sr = sgn(r.q_value);
        if (sl != sr) return sl > sr;
        QuadElem diff = l.mu - r.mu;
        int c = diff.sign_real();
        if (c != 0) return c < 0;
        return l.lambda0.a() < r.lambda0.a() ||
               (l.lambda0.a() == r.lambda0.a() && l.lambda0.b() < r.lambda0.b());
    });
    out.insert(out.end(), reps.begin(), reps.end());
    return out;
}

namespace {

using nlohmann::json;

mpq_class parse_frac(const json& num, const json& den) {
    auto get_z = [](const json& j) -> mpz_class {
        if (j.is_string()) return mpz_class(j.get<std::string>());
        return mpz_class(static_cast<long>(j.get<long long>()));
    };
    mpq_class q(get_z(num), get_z(den));
    q.canonicalize();
    return q;
}

QuadElem parse_elem(const json& arr, long d) {
    if (!arr.is_array() || arr.size() != 4)
        throw std::invalid_argument("descriptor: element must be [a_num,a_den,b_num,b_den]");
    return QuadElem(parse_frac(arr[0], arr[1]), parse_frac(arr[2], arr[3]), d);
}

json emit_z(const mpz_class& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

json emit_elem(const QuadElem& e) {
    return json::array({emit_z(e.a().get_num()), emit_z(e.a().get_den()),
                        emit_z(e.b().get_num()), emit_z(e.b().get_den())});
}

} // namespace

Coset coset_from_descriptor(const std::string& text) {
    json j = json::parse(text);
    for (auto& [key, val] : j.items()) {
        (void)val;
        if (key != "d" && key != "ideal_basis" && key != "m" && key != "coset")
            throw std::invalid_argument("descriptor: unknown key '" + key + "'");
    }
    long d = j.at("d").get<long>();
    long m = j.at("m").get<long>();
    const json& ib = j.at("ideal_basis");
    if (!ib.is_array() || ib.size() != 2)
        throw std::invalid_argument("descriptor: ideal_basis must hold two elements");
    RealQuadField f(d);
    auto lat = std::make_shared<const AnisotropicLattice>(f, parse_elem(ib[0], d),
                                                          parse_elem(ib[1], d), m);
    return Coset(lat, parse_elem(j.at("coset"), d));
}

std::string coset_to_descriptor(const Coset& c) {
    json j;
    j["d"] = c.lattice().field().d();
    j["ideal_basis"] = json::array({emit_elem(c.lattice().ideal_basis1()),
                                    emit_elem(c.lattice().ideal_basis2())});
    j["m"] = c.lattice().m();
    j["coset"] = emit_elem(c.h());
    return j.dump();
}

} // namespace mmtheta
