#include "qsb/bundle.hpp"

#include <algorithm>

namespace qsb {

RingPtr fourfold_ring() {
    static RingPtr r = PolyRing::make({"x0", "x1", "x2", "y0", "y1", "y2"});
    return r;
}

RingPtr plane_ring() {
    static RingPtr r = PolyRing::make({"x0", "x1", "x2"});
    return r;
}

RingPtr chart_ring() {
    static RingPtr r = PolyRing::make({"x", "y"});
    return r;
}

void validate(const CubicFourfold& x) {
    const MPoly& f = x.equation;
    if (f.is_zero() || !f.is_homogeneous() || f.total_degree() != 3)
        throw not_homogeneous_degree3("equation must be homogeneous of degree 3");
    for (auto& [m, c] : f.terms())
        if (m[0] + m[1] + m[2] == 0)
            throw plane_not_contained("monomial purely in the y variables: " +
                                      MPoly::monomial(f.ring(), m, c).str());
}

CubicFourfold parse_and_validate(const std::string& text) {
    CubicFourfold x{parse_poly(fourfold_ring(), text)};
    validate(x);
    return x;
}

namespace {

// drop the y-variables of a coefficient polynomial
MPoly project_to_plane(const MPoly& f) {
    MPoly out(plane_ring());
    for (auto& [m, c] : f.terms()) {
        if (m[3] + m[4] + m[5] != 0) throw std::logic_error("project_to_plane: y variables present");
        out += MPoly::monomial(plane_ring(), Mono{m[0], m[1], m[2]}, c);
    }
    return out;
}

}  // namespace

QuadricBundleData extract_bundle(const CubicFourfold& x) {
    validate(x);
    QuadricBundleData q;
    MPoly amn[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) amn[i][j] = MPoly(fourfold_ring());
    std::array<MPoly, 3> b{MPoly(fourfold_ring()), MPoly(fourfold_ring()), MPoly(fourfold_ring())};
    MPoly c(fourfold_ring());

    for (auto& [m, co] : x.equation.terms()) {
        unsigned ydeg = m[3] + m[4] + m[5];
        Mono xpart{m[0], m[1], m[2], 0, 0, 0};
        MPoly t = MPoly::monomial(fourfold_ring(), xpart, co);
        if (ydeg == 0) {
            c += t;
        } else if (ydeg == 1) {
            for (int p = 0; p < 3; ++p)
                if (m[3 + p] == 1) b[p] += t;
        } else if (ydeg == 2) {
            int idx[2], k = 0;
            for (int p = 0; p < 3; ++p)
                for (unsigned e = 0; e < m[3 + p]; ++e) idx[k++] = p;
            amn[idx[0]][idx[1]] += t;
        } else {
            throw plane_not_contained("cubic y-monomial");
        }
    }

    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) q.a.set(i, j, project_to_plane(amn[i][j]));
    for (int p = 0; p < 3; ++p) q.b[p] = project_to_plane(b[p]);
    q.c = project_to_plane(c);

    // Gram matrix: doubled diagonal, a_mn off-diagonal, b border, 2c corner
    for (int i = 0; i < 3; ++i) q.gram.set(i, i, q.a.at(i, i).scaled(Rat(2)));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) q.gram.set(i, j, q.a.at(i, j));
    for (int p = 0; p < 3; ++p) q.gram.set(p, 3, q.b[p]);
    q.gram.set(3, 3, q.c.scaled(Rat(2)));
    q.delta = determinant(q.gram);
    if (!q.delta.is_zero() && (!q.delta.is_homogeneous() || q.delta.total_degree() != 6))
        throw std::logic_error("extract_bundle: discriminant is not a sextic");
    return q;
}

DegenerationReport check_simple_degeneration(const QuadricBundleData& q) {
    if (q.delta.is_zero())
        throw zero_discriminant("discriminant vanishes identically: the bundle is everywhere degenerate");
    DegenerationReport rep;
    rep.a00_nonzero = !q.a.at(0, 0).is_zero();
    rep.smoothness = is_smooth_plane_curve(q.delta);
    rep.simple = rep.smoothness.verdict == SmoothVerdict::Smooth;
    return rep;
}

// ---- chart and Clifford symbol ------------------------------------------------

namespace {

std::vector<std::vector<Rat>> invert3(const std::vector<std::vector<Rat>>& m) {
    // adjugate over Q
    auto det2 = [&](int r0, int r1, int c0, int c1) -> Rat {
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    Rat det = m[0][0] * det2(1, 2, 1, 2) - m[0][1] * det2(1, 2, 0, 2) + m[0][2] * det2(1, 2, 0, 1);
    if (sgn(det) == 0) throw std::logic_error("invert3: singular");
    std::vector<std::vector<Rat>> inv(3, std::vector<Rat>(3));
    int sign[3][3] = {{1, -1, 1}, {-1, 1, -1}, {1, -1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            if (r0 > r1) std::swap(r0, r1);
            if (c0 > c1) std::swap(c0, c1);
            (void)sign;
            // cofactor expansion with explicit parity
            Rat cof = det2(r0, r1, c0, c1);
            if ((i + j) % 2) cof = -cof;
            inv[j][i] = cof / det;
        }
    return inv;
}

ChartData make_chart(const MPoly& a00) {
    // first row of T = coefficients of a00; complete with unit vectors
    std::vector<std::vector<Rat>> T;
    std::vector<Rat> row(3, Rat(0));
    for (auto& [m, c] : a00.terms())
        for (int i = 0; i < 3; ++i)
            if (m[(size_t)i] == 1) row[(size_t)i] = c;
    T.push_back(row);
    for (int i = 0; i < 3 && T.size() < 3; ++i) {
        std::vector<Rat> e(3, Rat(0));
        e[(size_t)i] = Rat(1);
        // accept if it keeps the rows independent
        std::vector<std::vector<Rat>> probe = T;
        probe.push_back(e);
        // rank by Gaussian elimination
        auto rank_of = [](std::vector<std::vector<Rat>> m) {
            size_t rank = 0;
            for (size_t col = 0; col < 3 && rank < m.size(); ++col) {
                size_t piv = rank;
                while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
                if (piv == m.size()) continue;
                std::swap(m[rank], m[piv]);
                for (size_t r = 0; r < m.size(); ++r) {
                    if (r == rank || sgn(m[r][col]) == 0) continue;
                    Rat f = m[r][col] / m[rank][col];
                    for (size_t cc = 0; cc < 3; ++cc) m[r][cc] -= f * m[rank][cc];
                }
                ++rank;
            }
            return rank;
        };
        if (rank_of(probe) == probe.size()) T = probe;
    }
    if (T.size() != 3) throw chart_failure("could not complete the chart basis");
    return ChartData{T, invert3(T)};
}

// substitute x = T^{-1} x' into a polynomial over the plane ring
MPoly apply_chart(const MPoly& f, const ChartData& chart) {
    const RingPtr R = plane_ring();
    std::vector<MPoly> images;
    for (int i = 0; i < 3; ++i) {
        MPoly img(R);
        for (int j = 0; j < 3; ++j)
            img += MPoly::variable(R, (size_t)j).scaled(chart.from_chart[(size_t)i][(size_t)j]);
        images.push_back(img);
    }
    return f.substituted(images);
}

// dehomogenize x0' = 1 into the chart ring
MPoly to_chart_coords(const MPoly& f_primed) {
    MPoly t = f_primed.with_var_set(0, Rat(1));
    MPoly out(chart_ring());
    for (auto& [m, c] : t.terms()) out += MPoly::monomial(chart_ring(), Mono{m[1], m[2]}, c);
    return out;
}

}  // namespace

CliffordSymbolData clifford_symbol(const QuadricBundleData& q) {
    const MPoly& a00 = q.a.at(0, 0);
    if (a00.is_zero()) throw chart_failure("a00 = 0: the distinguished line is undefined");
    if (q.delta.is_zero()) throw zero_discriminant("discriminant vanishes identically");

    CliffordSymbolData cs;
    cs.a00 = a00;
    cs.chart = make_chart(a00);
    cs.ff = FieldCtx::function_field(chart_ring());

    // half-Gram has the quadratic form itself on the diagonal
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            MPoly entry = q.gram.at(i, j).scaled(make_rat(1, 2));
            cs.chart_gram.set(i, j, to_chart_coords(apply_chart(entry, cs.chart)));
        }
    cs.delta_chart = to_chart_coords(apply_chart(q.delta, cs.chart));

    // on the chart a00 = 1, so the trivialized form equals the half-Gram and
    // the seed vector e1 has value a00/a00 = 1
    if (!(cs.chart_gram.at(0, 0) == MPoly::constant(chart_ring(), Rat(1))))
        throw chart_failure("chart normalization failed: a00 != 1 on the chart");

    // diagonalize over Q(x,y) with seed e1 (value 1), keeping the exact values
    {
        const PolyMatrix& g = cs.chart_gram;
        RingPtr R = chart_ring();
        std::vector<std::vector<RatFunc>> rem(4, std::vector<RatFunc>(4, RatFunc(MPoly(R))));
        for (size_t i = 0; i < 4; ++i) rem[i][i] = RatFunc::constant(R, Rat(1));
        auto bil = [&](const std::vector<RatFunc>& u, const std::vector<RatFunc>& w) {
            RatFunc acc = RatFunc(MPoly(R));
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = 0; j < 4; ++j)
                    if (!u[i].is_zero() && !w[j].is_zero()) acc = acc + u[i] * RatFunc(g.at(i, j)) * w[j];
            return acc;
        };
        std::vector<RatFunc> vals;
        while (!rem.empty()) {
            size_t pick = rem.size();
            for (size_t i = 0; i < rem.size(); ++i)
                if (!bil(rem[i], rem[i]).is_zero()) {
                    pick = i;
                    break;
                }
            if (pick == rem.size()) throw disc_mismatch("degenerate generic fiber");
            auto v = rem[pick];
            rem.erase(rem.begin() + pick);
            RatFunc qv = bil(v, v);
            vals.push_back(qv);
            for (auto& w : rem) {
                RatFunc c = bil(w, v) / qv;
                for (size_t k = 0; k < 4; ++k) w[k] = w[k] - c * v[k];
            }
        }
        if (!(vals[0] == RatFunc::constant(R, Rat(1))))
            throw disc_mismatch("seeded diagonal does not represent 1");
        cs.a_func = vals[1];
        cs.b_func = vals[2];
        cs.e_func = vals[3];
    }
    cs.a = SquareClass::from_ratfunc(cs.ff, cs.a_func);
    cs.b = SquareClass::from_ratfunc(cs.ff, cs.b_func);
    cs.e = SquareClass::from_ratfunc(cs.ff, cs.e_func);
    cs.d = cs.a * cs.b * cs.e;

    // cross-check: d = Delta / a00^6 in the chart, i.e. class(delta_chart)
    SquareClass d_route2 = SquareClass::from_poly(cs.ff, cs.delta_chart);
    if (!(cs.d == d_route2))
        throw disc_mismatch("diagonalization discriminant disagrees with Delta/a00^6");

    SquareClass minus = SquareClass::from_rat(cs.ff, Rat(-1));
    cs.alpha_slot1 = minus * cs.a * cs.b;
    cs.alpha_slot2 = minus * cs.a * cs.d;
    SymbolSum alpha(cs.ff, 2);
    alpha.add_symbol({cs.alpha_slot1, cs.alpha_slot2});
    cs.alpha = symbol_sum_normalize(alpha);

    // the four-term Clifford sum must agree with (-ab,-ad); re-verified per run
    {
        SymbolSum four(cs.ff, 2);
        four.add_symbol({cs.a, cs.b});
        four.add_symbol({cs.a, cs.a * cs.b * cs.d});
        four.add_symbol({cs.b, cs.a * cs.b * cs.d});
        four.add_symbol({minus, minus * cs.d});
        if (!(symbol_sum_normalize(four) == cs.alpha))
            throw disc_mismatch("four-term Clifford sum disagrees with (-ab,-ad)");
    }
    return cs;
}

// ---- formal identities ----------------------------------------------------------

bool verify_main_identity(const SquareClass& a, const SquareClass& b, const SquareClass& d,
                          const SquareClass& f) {
    const CtxPtr& ctx = a.ctx();
    SymbolSum lhs(ctx, 3);
    lhs.add_symbol({a * b, a * d, f});
    SymbolSum rhs(ctx, 3);
    rhs.add_symbol({a, b, f});
    rhs.add_symbol({a, a, f});
    rhs.add_symbol({a * b, d, f});
    return symbol_sum_normalize(lhs) == symbol_sum_normalize(rhs);
}

VanishingReport vanishing_given_norm(const Rat& a, const Rat& b, const Rat& d,
                                     const VanishingWitnesses& w) {
    if (sgn(a) == 0 || sgn(b) == 0 || sgn(d) == 0) throw witness_invalid("zero parameter");
    Rat lhs = w.x * w.x - a * w.y * w.y;
    Rat rhs = b * (w.u * w.u - a * d * w.v * w.v);
    if (lhs != rhs || sgn(lhs) == 0)
        throw witness_invalid("isotropy witness fails x^2 - a y^2 = b (u^2 - a d v^2) != 0");
    Rat f = w.g * w.g - d * w.h * w.h;
    if (sgn(f) == 0) throw witness_invalid("norm witness gives f = 0");

    CtxPtr q = FieldCtx::rationals();
    auto cls = [&](const Rat& v) { return SquareClass::from_rat(q, v); };
    auto sym3 = [&](const Rat& s1, const Rat& s2, const Rat& s3) {
        SymbolSum s(q, 3);
        s.add_symbol({cls(s1), cls(s2), cls(s3)});
        return s;
    };
    VanishingReport rep;
    rep.f = f;
    rep.abf_trivial = is_trivial_H3_Q(sym3(a, b, f));
    rep.aaf_trivial = is_trivial_H3_Q(sym3(a, a, f));
    rep.abdf_trivial = is_trivial_H3_Q(sym3(a * b, d, f));
    SymbolSum df(q, 2);
    df.add_symbol({cls(d), cls(f)});
    rep.df_trivial = is_trivial_H2_Q(df);
    if (rep.df_trivial && !rep.abdf_trivial)
        throw std::logic_error("(d,f) trivial but (ab,d,f) nontrivial: engine bug");
    rep.ok = rep.abf_trivial && rep.aaf_trivial && rep.abdf_trivial;
    return rep;
}

std::vector<SymbolSum> split_kernel_decision(const DiagForm& fiber) {
    if (!fiber.ctx || fiber.ctx->tag() != FieldTag::Rationals)
        throw unsupported_context("split_kernel_decision: rational fiber required");
    SymbolSum zero = SymbolSum::zero(fiber.ctx, 2);
    if (fiber.rank() == 3) return {zero, clifford_invariant(fiber)};
    if (fiber.rank() != 4) throw unsupported_rank("split_kernel_decision: rank 3 or 4");
    auto inv = basic_invariants(fiber);
    if (!inv.signed_disc.is_one()) return {zero};
    return {zero, clifford_invariant(fiber)};
}

FiberSuiteReport fiber_specialization_suite(const CliffordSymbolData& cs,
                                            const std::vector<std::vector<Rat>>& points) {
    FiberSuiteReport rep;
    CtxPtr q = FieldCtx::rationals();
    for (auto& P : points) {
        if (P.size() != 3) throw bad_point("projective point needs 3 coordinates");
        // to chart coordinates
        std::vector<Rat> primed(3, Rat(0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) primed[(size_t)i] += cs.chart.to_chart[(size_t)i][(size_t)j] * P[(size_t)j];
        if (sgn(primed[0]) == 0) throw bad_point("point lies on the line L");
        std::vector<Rat> pt{primed[1] / primed[0], primed[2] / primed[0]};
        Rat delta_val = cs.delta_chart.eval(pt);
        if (sgn(delta_val) == 0) throw bad_point("point lies on the discriminant divisor D");

        FiberCheck chk;
        chk.point = P;

        // the fiber form over Q
        PolyMatrix fiber_m(4, chart_ring());
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j)
                fiber_m.set(i, j, MPoly::constant(chart_ring(), cs.chart_gram.at(i, j).eval(pt)));
        DiagForm fiber = diagonalize(q, fiber_m);

        // specialize alpha through the canonical slot representatives
        auto s1 = cs.alpha_slot1.value_func().eval(pt);
        auto s2 = cs.alpha_slot2.value_func().eval(pt);
        if (!s1 || !s2 || sgn(*s1) == 0 || sgn(*s2) == 0)
            throw bad_point("alpha representative degenerates at the point");
        SymbolSum spec_alpha(q, 2);
        spec_alpha.add_symbol({SquareClass::from_rat(q, *s1), SquareClass::from_rat(q, *s2)});
        spec_alpha = symbol_sum_normalize(spec_alpha);

        SymbolSum cliff = clifford_invariant(fiber);
        chk.alpha_matches_clifford = is_trivial_H2_Q(spec_alpha + cliff);

        auto dval = cs.d.value_func().eval(pt);
        if (!dval || sgn(*dval) == 0) throw bad_point("discriminant representative degenerates");
        chk.disc_trivial = is_square(*dval);
        chk.alpha_trivial = is_trivial_H2_Q(spec_alpha);

        chk.in_kernel = false;
        for (auto& k : split_kernel_decision(fiber))
            if (is_trivial_H2_Q(spec_alpha + k)) chk.in_kernel = true;

        chk.consistent = chk.alpha_matches_clifford && (!chk.disc_trivial || chk.in_kernel);
        rep.all_consistent = rep.all_consistent && chk.consistent;
        if (chk.in_kernel) ++rep.kernel_memberships;
        rep.checks.push_back(std::move(chk));
    }
    return rep;
}

CubicFourfold canonical_fixture() {
    // a00=x0, a11=x1, a22=x2, a01=a02=a12=x0+x1+x2, b0=x1^2, b1=x2^2, b2=x0^2,
    // c=x0^3+x1^3+x2^3
    const char* text =
        "x0*y0^2 + x1*y1^2 + x2*y2^2"
        " + x0*y0*y1 + x1*y0*y1 + x2*y0*y1"
        " + x0*y0*y2 + x1*y0*y2 + x2*y0*y2"
        " + x0*y1*y2 + x1*y1*y2 + x2*y1*y2"
        " + x1^2*y0 + x2^2*y1 + x0^2*y2"
        " + x0^3 + x1^3 + x2^3";
    return parse_and_validate(text);
}

CubicFourfold validated_fixture(uint64_t seed) {
    {
        CubicFourfold x0 = canonical_fixture();
        auto q = extract_bundle(x0);
        if (!q.delta.is_zero() && q.delta.total_degree() == 6 &&
            check_simple_degeneration(q).simple)
            return x0;
    }
    RingPtr R = fourfold_ring();
    Rng rng(seed);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        // keep a00 = x0 and the diagonal; vary the mixed and lower terms
        auto lin = [&]() {
            MPoly f(R);
            while (f.is_zero())
                for (int i = 0; i < 3; ++i)
                    f += MPoly::variable(R, (size_t)i).scaled(Rat(rng.rand_long(-2, 2)));
            return f;
        };
        auto quad = [&]() {
            MPoly f(R);
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) {
                    Mono m(6, 0);
                    m[(size_t)i] += 1;
                    m[(size_t)j] += 1;
                    f += MPoly::monomial(R, m, Rat(rng.rand_long(-1, 1)));
                }
            return f;
        };
        MPoly y0 = MPoly::variable(R, 3), y1 = MPoly::variable(R, 4), y2 = MPoly::variable(R, 5);
        MPoly x0 = MPoly::variable(R, 0), x1 = MPoly::variable(R, 1), x2 = MPoly::variable(R, 2);
        MPoly eq = x0 * y0 * y0 + x1 * y1 * y1 + x2 * y2 * y2;
        eq += lin() * y0 * y1 + lin() * y0 * y2 + lin() * y1 * y2;
        eq += quad() * y0 + quad() * y1 + quad() * y2;
        eq += x0.pow(3) + x1.pow(3) + x2.pow(3) +
              (x0 * x1 * x2).scaled(Rat(rng.rand_long(-2, 2)));
        CubicFourfold cand{eq};
        try {
            validate(cand);
            auto q = extract_bundle(cand);
            if (q.delta.is_zero() || q.delta.total_degree() != 6) continue;
            if (!check_simple_degeneration(q).simple) continue;
            return cand;
        } catch (const std::exception&) {
            continue;
        }
    }
    throw std::runtime_error("validated_fixture: seeded search exhausted");
}

}  // namespace qsb
