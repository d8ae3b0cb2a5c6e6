#pragma once

#include <vector>

#include "qsb/upoly.hpp"

namespace qsb {

// f = unit * prod factors[i].first ^ factors[i].second, each factor a primitive
// irreducible Z-polynomial with positive leading coefficient, sorted canonically.
struct UnivFactorization {
    Rat unit;
    std::vector<std::pair<ZPoly, unsigned>> factors;
};

UnivFactorization factor_univ_q(const UPoly& f);

// roots of f in Q (each listed once)
std::vector<Rat> rational_roots(const UPoly& f);

bool zpoly_is_irreducible_q(const ZPoly& f);

}  // namespace qsb
