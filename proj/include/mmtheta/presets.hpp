#ifndef MMTHETA_PRESETS_HPP
#define MMTHETA_PRESETS_HPP

// The two built-in example lattices over Q(sqrt 6), with their named cosets.

#include "mmtheta/lattice.hpp"

#include <string>
#include <vector>

namespace mmtheta {

struct Preset {
    std::string name;
    LatticePtr lattice;
    std::vector<std::string> coset_names;
    std::vector<Coset> cosets;
    QuadElem eps;   // fundamental unit 5 + 2 sqrt 6 (eps_L = eps^2 for both presets)

    const Coset& coset(const std::string& nm) const;
};

// L = 2*(3Z + sqrt6 Z) = 6Z + 2 sqrt6 Z with Q = Nm/6; cosets h1..h4 =
// 1/2, 7/2, 1/2 + sqrt6, 7/2 + sqrt6, plus the trivial coset "zero".
Preset make_cohen_preset();

// L = 2*(Z + sqrt6 Z) with Q = Nm/2; cosets h1 = 1/2 + sqrt6/12 and its
// conjugate h2 = 1/2 - sqrt6/12, plus "zero".
Preset make_nontrivial_preset();

Preset make_preset(const std::string& name);

} // namespace mmtheta

#endif
