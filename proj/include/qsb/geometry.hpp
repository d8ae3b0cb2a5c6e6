#pragma once

#include "qsb/factor.hpp"
#include "qsb/ratfunc.hpp"

namespace qsb {

struct line_not_in_cubic : std::domain_error {
    using std::domain_error::domain_error;
};
struct tangency_degenerate : std::domain_error {
    using std::domain_error::domain_error;
};
struct plane_in_surface_case : std::domain_error {
    using std::domain_error::domain_error;
};
struct degenerate_conic : std::domain_error {
    using std::domain_error::domain_error;
};
struct point_not_on_variety : std::domain_error {
    using std::domain_error::domain_error;
};

// projective line in P^(n+1) as the row span of a rank-2 matrix
struct LineInSpace {
    std::vector<std::vector<Rat>> rows;  // 2 x (n+2)

    size_t ambient_dim() const { return rows.at(0).size(); }
};

LineInSpace make_line(std::vector<std::vector<Rat>> rows);  // checks rank 2

// does the cubic vanish on the whole line?
bool verify_line_in_cubic(const MPoly& cubic, const LineInSpace& line);

// tangent-line construction: p(s) on L, direction w(s,t...) in the tangent
// hyperplane, residual intersection point as the image
struct DegreeTwoMapCertificate {
    RingPtr param_ring;               // s, t1..t_{n-1}
    std::vector<MPoly> map;           // n+2 components
    MPoly substitution_identity;      // cubic composed with the map; must be 0
    RingPtr fiber_ring;               // s, z0..z_{n+1}
    MPoly fiber_poly;                 // grad C(p(s)) . z; degree 2 in s
    MPoly fiber_discriminant;         // disc_s of fiber_poly; nonzero certifies 2:1
};

DegreeTwoMapCertificate unirational_param_degree2(const MPoly& cubic, const LineInSpace& line);

// re-verification of an emitted certificate (exact)
bool verify_degree_two_certificate(const DegreeTwoMapCertificate& cert, const MPoly& cubic,
                                   const LineInSpace& line);

// ---- zero cycles on cubic surfaces ------------------------------------------

// witnesses that 2(P - Q) is rationally equivalent to zero on the cubic
// surface, through the plane section spanned by P and the line
struct ZeroCycleCertificate {
    // Generic: smooth residual conic K, functions l^2/q on K and qr/lq^2 on L.
    // TrivialOnLine: P on L, so P - Q is already principal on L.
    // LinePair: K splits into two rational lines with P smooth on one; the
    // bookkeeping runs on that component and on L.
    enum class Kind { Generic, TrivialOnLine, LinePair };

    Kind kind = Kind::Generic;
    std::vector<Rat> P, Q;  // P on S, Q on L
    LineInSpace line;
    std::vector<std::vector<Rat>> plane_basis;  // rows: P, L1, L2
    MPoly conic;      // K with T = lambda * K in plane coordinates (l,m,n)
    MPoly tangent_l;  // l(m,n): K = lambda*l + q
    MPoly qform;      // q(m,n)
    MPoly qr;         // binary form cutting the R-divisor on L
    MPoly lq;         // linear form vanishing at Q on L
    MPoly k1;         // LinePair: the component through P (lambda-free, binary)
    MPoly lp_num;     // LinePair: binary form cutting P on k1; f1 = lp_num^2/lambda^2
    std::string notes;
};

ZeroCycleCertificate zero_cycle_two_torsion_certificate(const MPoly& surface,
                                                        const LineInSpace& line,
                                                        const std::vector<Rat>& P,
                                                        const std::vector<Rat>& Q);

// independent checker: re-derives the plane section and the conic
// parameterization, computes the divisors of the certificate functions by
// factoring binary forms, and confirms they sum to 2(P - Q)
struct ZeroCycleCheck {
    bool ok = false;
    std::string detail;
};

ZeroCycleCheck verify_zero_cycle_certificate(const ZeroCycleCertificate& cert,
                                             const MPoly& surface);

}  // namespace qsb
