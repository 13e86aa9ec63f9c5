#ifndef MMTHETA_LATTICE_HPP
#define MMTHETA_LATTICE_HPP

// Anisotropic lattices L = M*a of signature (1,1) inside a real quadratic
// field, their duals and cosets, the embedding into the hyperbolic plane, and
// enumeration of unit-group orbits with exact canonical reduction.

#include "mmtheta/qfield.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mmtheta {

// Positive scale parameter t.  Carries the exact field element t^2 when it is
// available; the exact square is what all canonical-window comparisons use.
struct ScaleT {
    double value = 1.0;
    std::optional<QuadElem> square; // exact t^2 when t^2 lies in F

    ScaleT() = default;
    explicit ScaleT(double v) : value(v) {
        if (!(v > 0)) throw std::invalid_argument("ScaleT: t must be positive");
    }
    static ScaleT exact(const QuadElem& t);             // t itself in F
    static ScaleT from_square(const QuadElem& t_sq);    // t = sqrt(sigma(t_sq))
    bool is_exact() const { return square.has_value(); }
};

class AnisotropicLattice {
public:
    // `a1`, `a2` is a Z-basis of a fractional ideal of Q(sqrt(d)); m >= 1.
    AnisotropicLattice(RealQuadField field, QuadElem a1, QuadElem a2, long m);

    const RealQuadField& field() const { return field_; }
    long m() const { return m_; }
    const mpq_class& a_norm() const { return a_norm_; }          // A = Nm(ideal)
    const QuadElem& ideal_basis1() const { return a1_; }
    const QuadElem& ideal_basis2() const { return a2_; }
    const QuadElem& basis1() const { return u1_; }               // L = Z u1 + Z u2
    const QuadElem& basis2() const { return u2_; }
    const QuadElem& dual_basis1() const { return b1_; }          // L* = Z b1 + Z b2
    const QuadElem& dual_basis2() const { return b2_; }
    const UnitGroupGenerator& eps_L() const { return epsL_; }
    double log_eps_L() const { return log_epsL_; }

    mpq_class scale() const { return a_norm_ * m_; }             // A*M
    mpq_class quad_form(const QuadElem& x) const { return x.norm() / scale(); }
    mpq_class bilinear(const QuadElem& x, const QuadElem& y) const {
        return (x * y.conj()).trace() / scale();
    }

    // Exact coordinates of x in a Z-module basis (e1, e2).
    static std::pair<mpq_class, mpq_class> coords(const QuadElem& x, const QuadElem& e1,
                                                  const QuadElem& e2);

    bool contains(const QuadElem& x) const;       // x in L
    bool dual_contains(const QuadElem& x) const;  // x in L*

    // Smallest N with N*Q(L*) in Z; |Q| >= 1/N for every nonzero value.
    const mpz_class& level() const { return level_; }

private:
    RealQuadField field_;
    QuadElem a1_, a2_;
    long m_;
    mpq_class a_norm_;
    QuadElem u1_, u2_, b1_, b2_;
    UnitGroupGenerator epsL_;
    double log_epsL_;
    mpz_class level_;
};

using LatticePtr = std::shared_ptr<const AnisotropicLattice>;

// Coset L + h with h in the dual lattice.
class Coset {
public:
    Coset(LatticePtr lattice, QuadElem h);

    const AnisotropicLattice& lattice() const { return *lat_; }
    const LatticePtr& lattice_ptr() const { return lat_; }
    const QuadElem& h() const { return h_; }
    bool is_trivial() const { return trivial_; }     // h in L
    bool contains(const QuadElem& x) const;          // x in L + h
    bool same_coset(const Coset& o) const;

    Coset translate(const QuadElem& delta) const { return Coset(lat_, h_ + delta); }

private:
    LatticePtr lat_;
    QuadElem h_;
    bool trivial_;
};

// Embedding iota(lambda) = (lambda, lambda')/sqrt(AM) into the hyperbolic plane.
std::pair<double, double> embed(const AnisotropicLattice& lat, const QuadElem& lambda);

struct ProjectedVector {
    double t;
    double plus;   // lambda_t^+
    double minus;  // lambda_t^-
};

// lambda_t^{+-} = (+- lambda1 t^{-1} + lambda2 t)/2
ProjectedVector project(std::pair<double, double> lambda_pair, double t);

// One Gamma_L-orbit of a coset, canonically reduced:
// t0^2 <= |lambda0/lambda0'| < t0^2 eps_L^2.
struct OrbitRep {
    QuadElem lambda0;   // canonical representative (zero for the zero orbit)
    mpq_class q_value;  // Q(lambda0)
    QuadElem mu;        // lambda0^2/|Nm(lambda0)|: totally positive, sigma(mu) = |lambda0/lambda0'|
    bool is_zero = false;

    static OrbitRep zero_orbit(const RealQuadField& f) {
        OrbitRep r;
        r.lambda0 = f.zero();
        r.q_value = 0;
        r.mu = f.one();
        r.is_zero = true;
        return r;
    }
};

// Reduces lambda into the canonical window for t0 (t0 exact); returns the
// orbit representative and the exponent n with lambda0 = lambda * eps_L^{-n}.
std::pair<OrbitRep, long> reduce(const Coset& coset, const QuadElem& lambda, const ScaleT& t0);

// All Gamma_L-orbits with 0 < |Q| <= norm_bound, one canonical representative
// per orbit, deterministically ordered by (|Q|, sign Q desc, ratio).  The zero
// orbit is prepended when h lies in L.
std::vector<OrbitRep> enumerate_orbits(const Coset& coset, const ScaleT& t0,
                                       const mpq_class& norm_bound);

// Lattice descriptor JSON: {"d", "ideal_basis", "m", "coset"}, exact fractions.
Coset coset_from_descriptor(const std::string& json_text);
std::string coset_to_descriptor(const Coset& coset);

} // namespace mmtheta

#endif
