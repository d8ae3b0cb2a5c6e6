#pragma once

#include <vector>

#include "qsb/factor_univ.hpp"
#include "qsb/mpoly.hpp"

namespace qsb {

struct unsupported_arity : std::domain_error {
    using std::domain_error::domain_error;
};

// f = unit * prod factors[i].first ^ factors[i].second; each factor is an
// irreducible primitive integer polynomial with positive leading coefficient,
// in canonical order. At most 2 essential variables beyond a monomial part.
struct MFactorization {
    Rat unit;
    std::vector<std::pair<MPoly, unsigned>> factors;

    MPoly product(const RingPtr& ring) const;
};

MFactorization factor_mpoly(const MPoly& f);

}  // namespace qsb
