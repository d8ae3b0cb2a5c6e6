#include "qsb/groebner.hpp"

#include <algorithm>
#include <deque>

#include "qsb/factor.hpp"
#include "qsb/upoly.hpp"

namespace qsb {

namespace {

// grevlex: higher total degree first; ties broken by the smallest exponent in
// the last position where they differ
bool grevlex_greater(const Mono& a, const Mono& b) {
    uint32_t da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

bool mono_divides(const Mono& a, const Mono& b) {  // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Mono mono_div(const Mono& a, const Mono& b) {  // a / b
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool mono_coprime(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

// generic Buchberger over a field; Field provides value_type and arithmetic
template <class Field>
struct Engine {
    using K = typename Field::value_type;
    struct P {
        std::vector<std::pair<Mono, K>> t;  // descending grevlex
        const Mono& lm() const { return t.front().first; }
        const K& lc() const { return t.front().second; }
        bool zero() const { return t.empty(); }
    };

    Field F;
    explicit Engine(Field f) : F(std::move(f)) {}

    P make(std::vector<std::pair<Mono, K>> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& x, const auto& y) { return grevlex_greater(x.first, y.first); });
        P p;
        for (auto& [m, c] : terms) {
            if (F.is_zero(c)) continue;
            if (!p.t.empty() && p.t.back().first == m)
                p.t.back().second = F.add(p.t.back().second, c);
            else
                p.t.push_back({m, c});
            if (!p.t.empty() && F.is_zero(p.t.back().second)) p.t.pop_back();
        }
        // combining above only merges adjacent duplicates; rebuild safely
        return normal(std::move(p));
    }

    P normal(P p) {
        std::vector<std::pair<Mono, K>> acc;
        for (auto& [m, c] : p.t) {
            if (!acc.empty() && acc.back().first == m)
                acc.back().second = F.add(acc.back().second, c);
            else
                acc.push_back({m, c});
        }
        P out;
        for (auto& [m, c] : acc)
            if (!F.is_zero(c)) out.t.push_back({m, c});
        return out;
    }

    P sub_scaled(const P& a, const P& b, const Mono& shift, const K& scale) {
        // a - scale * shift * b, both sorted
        std::vector<std::pair<Mono, K>> merged;
        size_t i = 0, j = 0;
        auto shifted = [&](size_t jj) {
            Mono m = b.t[jj].first;
            for (size_t k = 0; k < m.size(); ++k) m[k] += shift[k];
            return m;
        };
        while (i < a.t.size() || j < b.t.size()) {
            if (j >= b.t.size()) {
                merged.push_back(a.t[i++]);
                continue;
            }
            Mono mb = shifted(j);
            if (i >= a.t.size()) {
                merged.push_back({mb, F.neg(F.mul(scale, b.t[j].second))});
                ++j;
                continue;
            }
            if (a.t[i].first == mb) {
                K c = F.sub(a.t[i].second, F.mul(scale, b.t[j].second));
                if (!F.is_zero(c)) merged.push_back({a.t[i].first, c});
                ++i;
                ++j;
            } else if (grevlex_greater(a.t[i].first, mb)) {
                merged.push_back(a.t[i++]);
            } else {
                merged.push_back({mb, F.neg(F.mul(scale, b.t[j].second))});
                ++j;
            }
        }
        P out;
        out.t = std::move(merged);
        return out;
    }

    P reduce(P f, const std::vector<P>& basis) {
        P out;
        while (!f.zero()) {
            bool hit = false;
            for (auto& g : basis) {
                if (mono_divides(g.lm(), f.lm())) {
                    K scale = F.mul(f.lc(), F.inv(g.lc()));
                    f = sub_scaled(f, g, mono_div(f.lm(), g.lm()), scale);
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                out.t.push_back(f.t.front());
                f.t.erase(f.t.begin());
            }
        }
        return out;
    }

    P spoly(const P& a, const P& b) {
        Mono l = mono_lcm(a.lm(), b.lm());
        P s = sub_scaled(P{}, b, mono_div(l, b.lm()), F.neg(F.inv(b.lc())));
        P t = sub_scaled(P{}, a, mono_div(l, a.lm()), F.neg(F.inv(a.lc())));
        // s = l/lm(b) * b / lc(b); t = l/lm(a) * a / lc(a); spoly = t - s
        return sub_scaled(t, s, Mono(l.size(), 0), F.one());
    }

    std::vector<P> buchberger(std::vector<P> gens) {
        std::vector<P> basis;
        for (auto& g : gens)
            if (!g.zero()) basis.push_back(F.normalize(g));
        std::deque<std::pair<size_t, size_t>> pairs;
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i + 1; j < basis.size(); ++j) pairs.push_back({i, j});
        while (!pairs.empty()) {
            auto [i, j] = pairs.front();
            pairs.pop_front();
            if (mono_coprime(basis[i].lm(), basis[j].lm())) continue;
            P s = reduce(spoly(basis[i], basis[j]), basis);
            if (s.zero()) continue;
            s = F.normalize(s);
            basis.push_back(s);
            for (size_t k = 0; k + 1 < basis.size(); ++k) pairs.push_back({k, basis.size() - 1});
        }
        // interreduce
        std::vector<P> reduced;
        for (size_t i = 0; i < basis.size(); ++i) {
            std::vector<P> others;
            for (size_t j = 0; j < basis.size(); ++j)
                if (j != i) others.push_back(basis[j]);
            P r = reduce(basis[i], others);
            if (!r.zero()) reduced.push_back(F.normalize(r));
        }
        // drop duplicates by leading monomial, keep minimal set
        std::vector<P> minimal;
        for (auto& p : reduced) {
            bool redundant = false;
            for (auto& q : reduced)
                if (&p != &q && mono_divides(q.lm(), p.lm()) &&
                    (q.lm() != p.lm() || &q < &p)) {
                    redundant = true;
                    break;
                }
            if (!redundant) minimal.push_back(p);
        }
        return minimal;
    }
};

struct QFieldOps {
    using value_type = Rat;
    bool is_zero(const Rat& a) const { return sgn(a) == 0; }
    Rat add(const Rat& a, const Rat& b) const { return a + b; }
    Rat sub(const Rat& a, const Rat& b) const { return a - b; }
    Rat mul(const Rat& a, const Rat& b) const { return a * b; }
    Rat inv(const Rat& a) const { return Rat(1) / a; }
    Rat neg(const Rat& a) const { return -a; }
    Rat one() const { return Rat(1); }
    template <class P>
    P normalize(P p) const {
        if (p.zero()) return p;
        // integer-primitive with leading coefficient positive
        Int num_gcd(0), den_lcm(1);
        for (auto& [m, c] : p.t) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), Int(c.get_num()).get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), Int(c.get_den()).get_mpz_t());
        }
        Rat u = make_rat(num_gcd, den_lcm);
        if (sgn(p.t.front().second) < 0) u = -u;
        for (auto& [m, c] : p.t) c /= u;
        return p;
    }
};

struct FpFieldOps {
    using value_type = uint64_t;
    Fp fp;
    explicit FpFieldOps(uint64_t p) : fp(p) {}
    bool is_zero(uint64_t a) const { return a == 0; }
    uint64_t add(uint64_t a, uint64_t b) const { return fp.add(a, b); }
    uint64_t sub(uint64_t a, uint64_t b) const { return fp.sub(a, b); }
    uint64_t mul(uint64_t a, uint64_t b) const { return fp.mul(a, b); }
    uint64_t inv(uint64_t a) const { return fp.inv(a); }
    uint64_t neg(uint64_t a) const { return fp.neg(a); }
    uint64_t one() const { return 1; }
    template <class P>
    P normalize(P p) const {
        if (p.zero()) return p;
        uint64_t k = fp.inv(p.t.front().second);
        for (auto& [m, c] : p.t) c = fp.mul(c, k);
        return p;
    }
};

template <class Field>
std::vector<typename Engine<Field>::P> to_engine(Engine<Field>& e, const std::vector<MPoly>& gens,
                                                 bool mod_p, uint64_t p) {
    std::vector<typename Engine<Field>::P> out;
    for (auto& g : gens) {
        std::vector<std::pair<Mono, typename Field::value_type>> terms;
        for (auto& [m, c] : g.terms()) {
            if constexpr (std::is_same_v<typename Field::value_type, Rat>) {
                terms.push_back({m, c});
            } else {
                Fp fp(p);
                terms.push_back({m, fp.from_rat(c)});
            }
        }
        out.push_back(e.make(std::move(terms)));
    }
    (void)mod_p;
    return out;
}

MPoly engine_to_mpoly(const RingPtr& ring, const std::vector<std::pair<Mono, Rat>>& terms) {
    MPoly f(ring);
    for (auto& [m, c] : terms) f += MPoly::monomial(ring, m, c);
    return f;
}

}  // namespace

std::vector<MPoly> groebner_basis_q(const std::vector<MPoly>& gens) {
    if (gens.empty()) return {};
    RingPtr ring = gens.front().ring();
    Engine<QFieldOps> e{QFieldOps{}};
    auto basis = e.buchberger(to_engine(e, gens, false, 0));
    std::vector<MPoly> out;
    for (auto& p : basis) out.push_back(engine_to_mpoly(ring, p.t));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MPoly> groebner_basis_mod_p(const std::vector<MPoly>& gens, uint64_t p) {
    if (gens.empty()) return {};
    RingPtr ring = gens.front().ring();
    Engine<FpFieldOps> e{FpFieldOps{p}};
    auto basis = e.buchberger(to_engine(e, gens, true, p));
    std::vector<MPoly> out;
    for (auto& q : basis) {
        std::vector<std::pair<Mono, Rat>> terms;
        for (auto& [m, c] : q.t) terms.push_back({m, Rat((unsigned long)c)});
        out.push_back(engine_to_mpoly(ring, terms));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool projective_locus_empty(const std::vector<MPoly>& groebner) {
    if (groebner.empty()) return false;
    size_t n = groebner.front().ring()->nvars();
    // leading monomials under grevlex
    std::vector<Mono> lts;
    for (auto& g : groebner) {
        if (g.is_zero()) continue;
        if (g.is_constant()) return true;  // unit ideal
        Mono best;
        bool first = true;
        for (auto& [m, c] : g.terms())
            if (first || grevlex_greater(m, best)) {
                best = m;
                first = false;
            }
        lts.push_back(best);
    }
    for (size_t v = 0; v < n; ++v) {
        bool pure = false;
        for (auto& m : lts) {
            bool only_v = m.at(v) > 0;
            for (size_t i = 0; only_v && i < n; ++i)
                if (i != v && m[i] > 0) only_v = false;
            if (only_v) {
                pure = true;
                break;
            }
        }
        if (!pure) return false;
    }
    return true;
}

namespace {

// complete search for rational points of the (0-dimensional) common zero locus
// of three bivariate polynomials; returns an affine point when one exists
std::optional<std::pair<Rat, Rat>> rational_common_zero(const MPoly& g1, const MPoly& g2,
                                                        const MPoly& g3) {
    const RingPtr ring = g1.ring();
    const size_t u = 0, v = 1;
    std::vector<const MPoly*> gs{&g1, &g2, &g3};
    std::vector<const MPoly*> nonzero;
    for (auto* g : gs)
        if (!g->is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) return std::nullopt;

    auto eval2 = [&](const MPoly& g, const Rat& a, const Rat& b) { return g.eval({a, b}); };

    // eliminate v pairwise
    MPoly R(ring);
    bool have = false;
    for (size_t i = 0; i < nonzero.size(); ++i)
        for (size_t j = i + 1; j < nonzero.size(); ++j) {
            if (nonzero[i]->degree_in(v) <= 0 && nonzero[j]->degree_in(v) <= 0) continue;
            MPoly r = resultant(*nonzero[i], *nonzero[j], v);
            R = have ? gcd(R, r) : r;
            have = true;
        }
    std::vector<Rat> u_candidates;
    if (have && !R.is_zero() && R.degree_in(u) <= 0) return std::nullopt;  // nonzero constant resultant
    if (have && !R.is_zero()) {
        auto cs = R.coeffs_in(u);
        UPoly ru(cs.size());
        for (size_t i = 0; i < cs.size(); ++i) ru[i] = cs[i].is_zero() ? Rat(0) : cs[i].constant_value();
        for (auto& r : rational_roots(up_trim(std::move(ru)))) u_candidates.push_back(r);
    } else {
        // shared curve component or all v-free; probe small rationals
        for (long a = -8; a <= 8; ++a) u_candidates.push_back(Rat(a));
    }
    for (auto& u0 : u_candidates) {
        // common rational roots in v
        UPoly common;
        bool first = true;
        bool all_zero = true;
        for (auto* g : nonzero) {
            MPoly gv = g->with_var_set(u, u0);
            auto cs = gv.coeffs_in(v);
            UPoly uv(cs.size());
            for (size_t i = 0; i < cs.size(); ++i)
                uv[i] = cs[i].is_zero() ? Rat(0) : cs[i].constant_value();
            uv = up_trim(std::move(uv));
            if (uv.empty()) continue;  // identically zero along this fiber
            all_zero = false;
            common = first ? uv : up_gcd(common, uv);
            first = false;
        }
        if (all_zero) return std::make_pair(u0, Rat(0));
        if (first || common.empty()) continue;
        if (up_deg(common) == 0) continue;
        for (auto& v0 : rational_roots(common)) {
            bool ok = true;
            for (auto* g : gs)
                if (sgn(eval2(*g, u0, v0)) != 0) ok = false;
            if (ok) return std::make_pair(u0, v0);
        }
    }
    return std::nullopt;
}

}  // namespace

SmoothnessResult is_smooth_plane_curve(const MPoly& f) {
    const RingPtr ring = f.ring();
    if (ring->nvars() != 3) throw wrong_variable_count("is_smooth_plane_curve: need 3 variables");
    if (f.is_zero() || !f.is_homogeneous() || f.total_degree() < 1)
        throw not_homogeneous("is_smooth_plane_curve: need a nonzero homogeneous form");

    MPoly fx = f.derivative(0), fy = f.derivative(1), fz = f.derivative(2);

    // multiple component?
    MPoly g = gcd(gcd(f, fx), gcd(fy, fz));
    if (g.total_degree() > 0) {
        SmoothnessResult r;
        r.verdict = SmoothVerdict::NotReduced;
        r.singular_basis = {g};
        return r;
    }

    std::vector<MPoly> jac{fx, fy, fz};

    // a single prime with empty projective locus certifies smoothness: the
    // singular subscheme is proper over Spec Z, so a Q-bar point would survive
    // reduction at every prime
    for (uint64_t p : {10007ull, 10009ull}) {
        try {
            if (projective_locus_empty(groebner_basis_mod_p(jac, p))) {
                SmoothnessResult r;
                r.verdict = SmoothVerdict::Smooth;
                return r;
            }
        } catch (const bad_prime&) {
            continue;
        }
    }

    auto basis = groebner_basis_q(jac);
    SmoothnessResult r;
    r.singular_basis = basis;
    if (projective_locus_empty(basis)) {
        r.verdict = SmoothVerdict::Smooth;
        r.singular_basis.clear();
        return r;
    }
    r.verdict = SmoothVerdict::Singular;

    // rational witness: search the three standard charts
    for (size_t chart = 0; chart < 3; ++chart) {
        std::vector<MPoly> dh;
        for (auto& gg : jac) dh.push_back(gg.dehomogenized(chart));
        auto pt = rational_common_zero(dh[0], dh[1], dh[2]);
        if (pt) {
            std::vector<Rat> proj(3);
            proj[chart] = Rat(1);
            size_t k = 0;
            for (size_t i = 0; i < 3; ++i)
                if (i != chart) proj[i] = (k++ == 0) ? pt->first : pt->second;
            r.witness = proj;
            break;
        }
    }
    return r;
}

}  // namespace qsb
