#include "mmtheta/presets.hpp"

namespace mmtheta {

const Coset& Preset::coset(const std::string& nm) const {
    for (size_t i = 0; i < coset_names.size(); ++i) {
        if (coset_names[i] == nm) return cosets[i];
    }
    throw std::invalid_argument("preset '" + name + "' has no coset '" + nm + "'");
}

Preset make_cohen_preset() {
    RealQuadField f(6);
    auto lat = std::make_shared<const AnisotropicLattice>(
        f, f.from_rational(3), f.sqrt_d(), 2);
    Preset p;
    p.name = "cohen";
    p.lattice = lat;
    p.eps = f.element(5, 2);
    p.coset_names = {"h1", "h2", "h3", "h4", "zero"};
    p.cosets = {
        Coset(lat, f.element(mpq_class(1, 2), 0)),
        Coset(lat, f.element(mpq_class(7, 2), 0)),
        Coset(lat, f.element(mpq_class(1, 2), 1)),
        Coset(lat, f.element(mpq_class(7, 2), 1)),
        Coset(lat, f.zero()),
    };
    return p;
}

Preset make_nontrivial_preset() {
    RealQuadField f(6);
    auto lat = std::make_shared<const AnisotropicLattice>(
        f, f.one(), f.sqrt_d(), 2);
    Preset p;
    p.name = "nontrivial";
    p.lattice = lat;
    p.eps = f.element(5, 2);
    p.coset_names = {"h1", "h2", "zero"};
    p.cosets = {
        Coset(lat, f.element(mpq_class(1, 2), mpq_class(1, 12))),
        Coset(lat, f.element(mpq_class(1, 2), mpq_class(-1, 12))),
        Coset(lat, f.zero()),
    };
    return p;
}

Preset make_preset(const std::string& name) {
    if (name == "cohen") return make_cohen_preset();
    if (name == "nontrivial") return make_nontrivial_preset();
    throw std::invalid_argument("unknown preset '" + name + "' (expected cohen or nontrivial)");
}

} // namespace mmtheta
