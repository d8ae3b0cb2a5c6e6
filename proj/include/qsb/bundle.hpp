#pragma once

#include <array>

#include "qsb/forms.hpp"
#include "qsb/groebner.hpp"

namespace qsb {

struct plane_not_contained : std::domain_error {
    using std::domain_error::domain_error;
};
struct not_homogeneous_degree3 : std::domain_error {
    using std::domain_error::domain_error;
};
struct zero_discriminant : std::domain_error {
    using std::domain_error::domain_error;
};
struct chart_failure : std::domain_error {
    using std::domain_error::domain_error;
};
struct disc_mismatch : std::logic_error {
    using std::logic_error::logic_error;
};
struct bad_point : std::domain_error {
    using std::domain_error::domain_error;
};
struct witness_invalid : std::domain_error {
    using std::domain_error::domain_error;
};

// homogeneous coordinates (x0:x1:x2:y0:y1:y2); the plane P is {x0=x1=x2=0}
RingPtr fourfold_ring();
// the P^2 the bundle lives over
RingPtr plane_ring();
// affine chart coordinates on P^2 minus the distinguished line
RingPtr chart_ring();

struct CubicFourfold {
    MPoly equation;
};

CubicFourfold parse_and_validate(const std::string& text);
void validate(const CubicFourfold& x);

// the quadratic-form data of the quadric surface bundle attached to X
struct QuadricBundleData {
    PolyMatrix a;            // 3x3 symmetric, linear entries (a_mn)
    std::array<MPoly, 3> b;  // quadratic
    MPoly c;                 // cubic
    PolyMatrix gram;         // 4x4: diag 2a_mm, border b_p, corner 2c
    MPoly delta;             // det(gram), sextic or zero

    QuadricBundleData() : a(3, plane_ring(), true), gram(4, plane_ring(), true) {}
};

QuadricBundleData extract_bundle(const CubicFourfold& x);

struct DegenerationReport {
    bool simple = false;
    SmoothnessResult smoothness;
    bool a00_nonzero = false;
};

// simple degeneration <=> the discriminant sextic is smooth; also reports
// whether the chart line a00 is usable
DegenerationReport check_simple_degeneration(const QuadricBundleData& q);

// linear change of coordinates carrying a00 to the new first coordinate, so
// the distinguished line becomes the line at infinity of the chart
struct ChartData {
    std::vector<std::vector<Rat>> to_chart;    // x' = T x
    std::vector<std::vector<Rat>> from_chart;  // x  = T^{-1} x'
};

struct CliffordSymbolData {
    ChartData chart;
    CtxPtr ff;                       // Q(x,y)
    PolyMatrix chart_gram;           // half-Gram on the chart, a00-normalized
    MPoly delta_chart;               // discriminant in chart coordinates
    MPoly a00;                       // the line L in the original coordinates
    SquareClass a, b, e;             // diagonal <1,a,b,e>
    SquareClass d;                   // discriminant class, = class(a b e)
    RatFunc a_func, b_func, e_func;  // exact diagonal values
    SquareClass alpha_slot1, alpha_slot2;  // -ab, -ad
    SymbolSum alpha;                 // normalized (-ab,-ad)

    CliffordSymbolData() : chart_gram(4, chart_ring()) {}
};

CliffordSymbolData clifford_symbol(const QuadricBundleData& q);

// (ab,ad,f) = (a,b,f) + (a,a,f) + (ab,d,f): formal identity, any context
bool verify_main_identity(const SquareClass& a, const SquareClass& b, const SquareClass& d,
                          const SquareClass& f);

struct VanishingWitnesses {
    Rat x, y, u, v;  // x^2 - a y^2 = b (u^2 - a d v^2) != 0
    Rat g, h;        // f = g^2 - d h^2 != 0
};

struct VanishingReport {
    Rat f;
    bool abf_trivial = false;
    bool aaf_trivial = false;
    bool abdf_trivial = false;
    bool df_trivial = false;  // (d,f) in H^2
    bool ok = false;
};

VanishingReport vanishing_given_norm(const Rat& a, const Rat& b, const Rat& d,
                                     const VanishingWitnesses& w);

// Witt kernel of Br(Q) -> Br(Q(fiber)) as a set of classes: {0} when the
// discriminant is nontrivial, {0, c(fiber)} when trivial; rank-3 cones use the
// base conic
std::vector<SymbolSum> split_kernel_decision(const DiagForm& fiber);

struct FiberCheck {
    std::vector<Rat> point;  // projective point on P^2
    bool alpha_matches_clifford = false;
    bool disc_trivial = false;
    bool alpha_trivial = false;
    bool in_kernel = false;   // literal membership in split_kernel_decision
    bool consistent = false;  // alpha = c(fiber) and membership whenever disc is trivial
};

struct FiberSuiteReport {
    std::vector<FiberCheck> checks;
    bool all_consistent = true;
    size_t kernel_memberships = 0;
};

FiberSuiteReport fiber_specialization_suite(const CliffordSymbolData& cs,
                                            const std::vector<std::vector<Rat>>& points);

// canonical test instance
CubicFourfold canonical_fixture();

// the canonical instance when its discriminant sextic is smooth, otherwise the
// first perturbation found by a seeded search that reaches simple degeneration
CubicFourfold validated_fixture(uint64_t seed = 1);

}  // namespace qsb
