#pragma once

#include "qsb/poly_matrix.hpp"
#include "qsb/symbols.hpp"

namespace qsb {

struct unsupported_rank : std::domain_error {
    using std::domain_error::domain_error;
};
struct unsupported_context : std::domain_error {
    using std::domain_error::domain_error;
};
struct degenerate_form : std::domain_error {
    using std::domain_error::domain_error;
};
struct norm_witness_invalid : std::domain_error {
    using std::domain_error::domain_error;
};

// diagonal quadratic form <a_1,...,a_n>
struct DiagForm {
    CtxPtr ctx;
    std::vector<SquareClass> entries;

    int rank() const { return (int)entries.size(); }
    DiagForm scaled(const SquareClass& s) const;
    DiagForm orth(const DiagForm& o) const;  // orthogonal sum
    std::string str() const;
};

DiagForm diag_form_q(const std::vector<Rat>& entries);

struct FormInvariants {
    int rank = 0;
    SquareClass signed_disc;  // (-1)^(n(n-1)/2) det
    SymbolSum hasse_witt;     // sum_{i<j} (a_i, a_j)
    int signature = 0;        // at the real place
};

// rank and signed discriminant only; any context
FormInvariants basic_invariants(const DiagForm& f);
// the full tuple; requires ctx = Q
FormInvariants invariants(const DiagForm& f);

// Congruent diagonalization of a symmetric matrix with q(v) = v^T g v. When a
// seed vector is supplied it becomes the first basis vector (its value must be
// nonzero). Entries may be constants or rational functions; the context tells
// which.
DiagForm diagonalize(const CtxPtr& ctx, const PolyMatrix& g,
                     const std::optional<std::vector<Rat>>& seed_vector = std::nullopt);

// Brauer class of the (even) Clifford algebra: rank 3 uses the even algebra,
// rank 4 the full one
SymbolSum clifford_invariant(const DiagForm& f);

// <<u_1,...,u_n>> = tensor of <1,-u_i>
DiagForm pfister(const CtxPtr& ctx, const std::vector<SquareClass>& slots);

bool is_isotropic_over_Q(const DiagForm& f);
bool is_hyperbolic_over_Q(const DiagForm& f);  // by the complete invariant set
bool isometric_over_Q(const DiagForm& f1, const DiagForm& f2);

struct RemarkChainReport {
    std::vector<std::pair<std::string, bool>> steps;
    bool all_ok = true;
};

// the closing-remark chain <<-ab,-ad,f>> = ... together with the subform
// conclusion, each equality checked by the classification over Q; requires a
// norm witness f = g^2 - d h^2
RemarkChainReport verify_remark_chain(const Rat& a, const Rat& b, const Rat& d, const Rat& f,
                                      const Rat& g, const Rat& h);

// does a rank-4 complement q' with q + q' isometric to s*pfister(phi) exist?
bool witt_complement_exists(const DiagForm& q, const std::vector<SquareClass>& phi,
                            const SquareClass& s);

}  // namespace qsb
