#include "qsb/factor.hpp"

#include <algorithm>
#include <cassert>

namespace qsb {

namespace {

UPoly to_upoly(const MPoly& f, size_t var) {
    auto cs = f.coeffs_in(var);
    UPoly r(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i].is_constant()) throw std::logic_error("to_upoly: not univariate");
        r[i] = cs[i].constant_value();
    }
    return up_trim(std::move(r));
}

MPoly from_zpoly(const RingPtr& ring, size_t var, const ZPoly& f) {
    MPoly r(ring);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        Mono m(ring->nvars(), 0);
        m[var] = (uint32_t)i;
        r += MPoly::monomial(ring, m, Rat(f[i]));
    }
    return r;
}

MPoly from_upoly(const RingPtr& ring, size_t var, const UPoly& f) {
    MPoly r(ring);
    for (size_t i = 0; i < f.size(); ++i) {
        if (sgn(f[i]) == 0) continue;
        Mono m(ring->nvars(), 0);
        m[var] = (uint32_t)i;
        r += MPoly::monomial(ring, m, f[i]);
    }
    return r;
}

// truncated series in t with UPoly (in x) coefficients
using Series = std::vector<UPoly>;

Series series_mul(const Series& a, const Series& b, size_t K) {
    Series r(K);
    for (size_t i = 0; i < a.size() && i < K; ++i)
        for (size_t j = 0; j < b.size() && i + j < K; ++j)
            r[i + j] = up_add(r[i + j], up_mul(a[i], b[j]));
    return r;
}

struct BivariateContext {
    RingPtr ring;
    size_t xv, yv;
};

// factor a primitive squarefree bivariate polynomial, monic in x, into monic
// irreducible factors over Q
std::vector<MPoly> factor_bivariate_monic(const BivariateContext& cx, const MPoly& S) {
    const size_t xv = cx.xv, yv = cx.yv;
    int n = S.degree_in(xv);
    int m = S.degree_in(yv);
    if (m == 0) {
        // univariate in x after all
        std::vector<MPoly> out;
        for (auto& [z, mult] : factor_univ_q(to_upoly(S, xv)).factors) {
            assert(mult == 1);
            UPoly u = up_monic(zp_to_up(z));
            out.push_back(from_upoly(cx.ring, xv, u));
        }
        return out;
    }

    // evaluation point y = b with squarefree specialization
    long b = 0;
    UPoly u;
    for (long cand = 0;; cand = cand >= 0 ? -(cand + 1) : -cand) {
        MPoly spec = S.with_var_set(yv, Rat(cand));
        u = to_upoly(spec, xv);
        if (up_deg(u) == n) {
            UPoly g = up_gcd(u, up_derivative(u));
            if (up_deg(g) == 0) {
                b = cand;
                break;
            }
        }
        if (cand < -1000) throw std::logic_error("factor: no good evaluation line");
    }

    auto uf = factor_univ_q(u);
    if (uf.factors.size() == 1) return {S};

    std::vector<UPoly> base;
    for (auto& [z, mult] : uf.factors) {
        assert(mult == 1);
        base.push_back(up_monic(zp_to_up(z)));
    }
    size_t r = base.size();
    const size_t K = (size_t)m + 1;

    // F(x,t) = S(x, t+b) as a truncated series in t
    Series F(K);
    {
        auto ycoeffs = S.coeffs_in(yv);  // S = sum_j S_j(x) y^j
        // y^j = (t+b)^j; binomials
        for (size_t j = 0; j < ycoeffs.size(); ++j) {
            UPoly Sj = to_upoly(ycoeffs[j], xv);
            Rat pow_b(1);
            std::vector<Rat> binom(j + 1);
            binom[0] = Rat(1);
            for (size_t k = 1; k <= j; ++k) binom[k] = binom[k - 1] * Rat((long)(j - k + 1)) / Rat((long)k);
            for (size_t k = 0; k <= j && k < K; ++k) {
                // coefficient of t^k: C(j,k) b^(j-k)
                Rat c = binom[k];
                Rat bb(1);
                for (size_t q = 0; q < j - k; ++q) bb *= Rat(b);
                c *= bb;
                F[k] = up_add(F[k], up_scale(Sj, c));
            }
            (void)pow_b;
        }
    }

    // Bezout basis: sigma_i * (U/u_i) = 1 (partial fractions), U = prod u_i
    UPoly U{Rat(1)};
    for (auto& ui : base) U = up_mul(U, ui);
    std::vector<UPoly> cofactor(r), sigma(r);
    for (size_t i = 0; i < r; ++i) {
        cofactor[i] = up_divmod(U, base[i]).first;
        // invert cofactor mod base[i] via extended Euclid over Q
        UPoly a = base[i], bb = up_rem(cofactor[i], base[i]);
        UPoly s0{}, s1{Rat(1)};  // track coefficients of bb
        UPoly r0 = a, r1 = bb;
        while (up_deg(r1) > 0) {
            auto [q, rem] = up_divmod(r0, r1);
            UPoly ns = up_sub(s0, up_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(ns);
        }
        if (r1.empty()) throw std::logic_error("factor: modular factors not coprime");
        sigma[i] = up_rem(up_scale(s1, Rat(1) / r1[0]), base[i]);
    }

    // linear multifactor lifting
    std::vector<Series> G(r);
    for (size_t i = 0; i < r; ++i) {
        G[i].assign(K, UPoly{});
        G[i][0] = base[i];
    }
    for (size_t k = 1; k < K; ++k) {
        Series prod(K);
        prod[0] = UPoly{Rat(1)};
        Series acc = G[0];
        for (size_t i = 1; i < r; ++i) acc = series_mul(acc, G[i], K);
        UPoly e = up_sub(k < F.size() ? F[k] : UPoly{}, k < acc.size() ? acc[k] : UPoly{});
        if (e.empty()) continue;
        for (size_t i = 0; i < r; ++i) {
            UPoly delta = up_rem(up_mul(sigma[i], e), base[i]);
            G[i][k] = up_add(G[i][k], delta);
        }
    }

    // recombination by exact trial division
    std::vector<MPoly> out;
    MPoly rest = S;
    std::vector<Series> pool = G;
    auto series_to_poly = [&](const Series& ser) {
        // sum_k ser[k](x) * (y-b)^k
        MPoly acc(cx.ring);
        MPoly ymb = MPoly::variable(cx.ring, yv) - MPoly::constant(cx.ring, Rat(b));
        MPoly p = MPoly::constant(cx.ring, Rat(1));
        for (size_t k = 0; k < ser.size(); ++k) {
            if (!ser[k].empty()) acc += from_upoly(cx.ring, xv, ser[k]) * p;
            if (k + 1 < ser.size()) p = p * ymb;
        }
        return acc;
    };
    size_t take = 1;
    while (!pool.empty() && 2 * take <= pool.size()) {
        bool found = false;
        std::vector<size_t> idx(take);
        for (size_t i = 0; i < take; ++i) idx[i] = i;
        while (true) {
            Series cand(K);
            cand[0] = UPoly{Rat(1)};
            for (size_t i : idx) cand = series_mul(cand, pool[i], K);
            MPoly cpoly = series_to_poly(cand);
            if (auto q = divexact(rest, cpoly)) {
                out.push_back(cpoly);
                rest = *q;
                std::vector<Series> np;
                for (size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    np.push_back(pool[i]);
                }
                pool = std::move(np);
                found = true;
                break;
            }
            size_t kk = take;
            bool advanced = false;
            while (kk-- > 0) {
                if (idx[kk] + (take - kk) < pool.size()) {
                    ++idx[kk];
                    for (size_t j2 = kk + 1; j2 < take; ++j2) idx[j2] = idx[j2 - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        if (!found) ++take;
    }
    if (rest.total_degree() > 0) out.push_back(rest);
    return out;
}

// factor a primitive squarefree bivariate polynomial (positive lead)
std::vector<MPoly> factor_bivariate_squarefree(const BivariateContext& cx, const MPoly& s) {
    const size_t xv = cx.xv, yv = cx.yv;
    int dx = s.degree_in(xv);
    auto cs = s.coeffs_in(xv);
    MPoly lead = cs.back();  // in Q[y]
    std::vector<MPoly> raw;
    if (lead.is_constant()) {
        MPoly monic = s.scaled(Rat(1) / lead.constant_value());
        raw = factor_bivariate_monic(cx, monic);
    } else {
        // monicize: S_i = s_i * l^(dx-1-i), S_dx = 1
        MPoly S(cx.ring);
        std::vector<MPoly> lp{MPoly::constant(cx.ring, Rat(1))};
        for (int i = 1; i <= dx; ++i) lp.push_back(lp.back() * lead);
        std::vector<MPoly> Scs(cs.size());
        for (int i = 0; i < dx; ++i) Scs[(size_t)i] = cs[(size_t)i] * lp[(size_t)(dx - 1 - i)];
        Scs[(size_t)dx] = MPoly::constant(cx.ring, Rat(1));
        S = MPoly::from_coeffs_in(cx.ring, xv, Scs);
        for (auto& G : factor_bivariate_monic(cx, S)) {
            // undo x -> l*x, then strip the content the substitution introduced
            auto gcs = G.coeffs_in(xv);
            std::vector<MPoly> back(gcs.size());
            for (size_t i = 0; i < gcs.size(); ++i) back[i] = gcs[i] * lp[i];
            MPoly b = MPoly::from_coeffs_in(cx.ring, xv, back);
            MPoly cont(cx.ring);
            for (auto& ci : b.coeffs_in(xv))
                if (!ci.is_zero()) cont = gcd(cont, ci);
            if (cont.total_degree() > 0) b = *divexact(b, cont);
            raw.push_back(b);
        }
    }
    std::vector<MPoly> out;
    for (auto& g : raw) out.push_back(g.primitive_scaled().poly);
    return out;
}

}  // namespace

MPoly MFactorization::product(const RingPtr& ring) const {
    MPoly p = MPoly::constant(ring, unit);
    for (auto& [f, m] : factors) p = p * f.pow(m);
    return p;
}

MFactorization factor_mpoly(const MPoly& f_in) {
    if (f_in.is_zero()) throw std::domain_error("factor_mpoly: zero polynomial");
    const RingPtr ring = f_in.ring();
    MFactorization out;
    out.unit = Rat(1);
    MPoly f = f_in;

    // monomial part
    for (size_t v = 0; v < ring->nvars(); ++v) {
        uint32_t e = UINT32_MAX;
        for (auto& [mo, c] : f.terms()) e = std::min(e, mo[v]);
        if (e == UINT32_MAX || e == 0) continue;
        out.factors.push_back({MPoly::variable(ring, v), e});
        Mono shift(ring->nvars(), 0);
        shift[v] = e;
        MPoly div = MPoly::monomial(ring, shift, Rat(1));
        f = *divexact(f, div);
    }

    auto prim = f.primitive_scaled();
    out.unit = out.unit * prim.unit;
    f = prim.poly;
    if (f.is_constant()) {
        out.unit = out.unit * f.constant_value();
        std::sort(out.factors.begin(), out.factors.end());
        return out;
    }

    auto evars = f.effective_vars();
    if (evars.size() > 2)
        throw unsupported_arity("factor_mpoly: more than two essential variables");

    std::vector<std::pair<MPoly, unsigned>> found;
    if (evars.size() == 1) {
        auto uf = factor_univ_q(to_upoly(f, evars[0]));
        out.unit = out.unit * uf.unit;
        for (auto& [z, mult] : uf.factors) found.push_back({from_zpoly(ring, evars[0], z), mult});
    } else {
        BivariateContext cx{ring, evars[0], evars[1]};
        // x-content lies in Q[y]; factor it by the univariate path
        auto cs = f.coeffs_in(cx.xv);
        MPoly cont(ring);
        for (auto& ci : cs)
            if (!ci.is_zero()) cont = gcd(cont, ci);
        if (cont.total_degree() > 0) {
            auto sub = factor_mpoly(cont);
            out.unit = out.unit * sub.unit;
            for (auto& fm : sub.factors) found.push_back(fm);
            f = *divexact(f, cont);
        }
        MPoly s = squarefree_part(f);
        std::vector<MPoly> irred =
            s.total_degree() > 0 ? factor_bivariate_squarefree(cx, s) : std::vector<MPoly>{};
        for (auto& g : irred) {
            unsigned mult = 0;
            MPoly rest = f;
            while (true) {
                auto q = divexact(rest, g);
                if (!q) break;
                rest = *q;
                ++mult;
            }
            if (mult == 0) throw std::logic_error("factor_mpoly: claimed factor does not divide");
            found.push_back({g, mult});
            f = [&] {
                MPoly acc = f;
                for (unsigned i = 0; i < mult; ++i) acc = *divexact(acc, g);
                return acc;
            }();
        }
        if (!f.is_constant()) throw std::logic_error("factor_mpoly: leftover non-constant part");
        out.unit = out.unit * f.constant_value();
    }
    for (auto& [g, mult] : found) {
        auto p = g.primitive_scaled();
        Rat u = p.unit;
        for (unsigned i = 1; i < mult; ++i) u *= p.unit;
        out.unit = out.unit * u;
        out.factors.push_back({p.poly, mult});
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

}  // namespace qsb
