#pragma once

#include <optional>
#include <vector>

#include "qsb/mpoly.hpp"

namespace qsb {

struct not_homogeneous : std::domain_error {
    using std::domain_error::domain_error;
};
struct wrong_variable_count : std::domain_error {
    using std::domain_error::domain_error;
};

// Buchberger over Q in graded reverse lexicographic order.
std::vector<MPoly> groebner_basis_q(const std::vector<MPoly>& gens);

// Same ideal computed mod p; throws bad_prime when coefficients do not reduce.
std::vector<MPoly> groebner_basis_mod_p(const std::vector<MPoly>& gens, uint64_t p);

// True when the basis shows the homogeneous ideal cuts out the empty projective
// scheme: the leading-term ideal contains a pure power of every variable.
bool projective_locus_empty(const std::vector<MPoly>& groebner);

enum class SmoothVerdict { Smooth, Singular, NotReduced };

struct SmoothnessResult {
    SmoothVerdict verdict = SmoothVerdict::Smooth;
    std::optional<std::vector<Rat>> witness;  // projective singular point when rational
    std::vector<MPoly> singular_basis;        // Groebner basis of the Jacobian ideal
};

// Jacobian criterion for a plane projective curve f = 0 over Q. A fast modular
// pre-check may certify smoothness (empty locus mod p lifts); the Q basis is
// the authority otherwise.
SmoothnessResult is_smooth_plane_curve(const MPoly& f);

}  // namespace qsb
