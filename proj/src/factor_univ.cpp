#include "qsb/factor_univ.hpp"

#include <algorithm>
#include <cassert>

namespace qsb {

namespace {

// ---- arithmetic in (Z/m)[x], symmetric representatives ----------------------

Int sym_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (sgn(r) < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zm_reduce(const ZPoly& f, const Int& m) {
    ZPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = sym_mod(f[i], m);
    return zp_trim(std::move(r));
}

ZPoly zm_mul(const ZPoly& a, const ZPoly& b, const Int& m) { return zm_reduce(zp_mul(a, b), m); }

ZPoly zm_sub(const ZPoly& a, const ZPoly& b, const Int& m) { return zm_reduce(zp_sub(a, b), m); }

// divide by monic h in (Z/m)[x]
std::pair<ZPoly, ZPoly> zm_divmod_monic(const ZPoly& a, const ZPoly& h, const Int& m) {
    ZPoly r = zm_reduce(a, m);
    int dh = zp_deg(h);
    if (dh < 0 || h.back() != 1) throw std::logic_error("zm_divmod_monic: divisor not monic");
    if (zp_deg(r) < dh) return {{}, r};
    ZPoly q(r.size() - h.size() + 1, Int(0));
    while (zp_deg(r) >= dh) {
        Int f = r.back();
        size_t k = r.size() - h.size();
        q[k] = f;
        for (size_t i = 0; i < h.size(); ++i) r[k + i] = sym_mod(r[k + i] - f * h[i], m);
        r = zp_trim(std::move(r));
    }
    return {zm_reduce(q, m), r};
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return zp_trim(std::move(r));
}

struct HenselPair {
    ZPoly g, h, s, t;
};

// one quadratic Hensel step: modulus m -> m^2 (h monic; degree bounds kept)
HenselPair hensel_step(const ZPoly& f, const HenselPair& in, const Int& m) {
    Int m2 = m * m;
    ZPoly e = zm_sub(f, zp_mul(in.g, in.h), m2);
    auto [q, r] = zm_divmod_monic(zm_mul(in.s, e, m2), in.h, m2);
    ZPoly gs = zm_reduce(zp_add(in.g, zp_add(zp_mul(in.t, e), zp_mul(q, in.g))), m2);
    ZPoly hs = zm_reduce(zp_add(in.h, r), m2);
    ZPoly b = zm_sub(zp_add(zp_mul(in.s, gs), zp_mul(in.t, hs)), ZPoly{Int(1)}, m2);
    auto [c, d] = zm_divmod_monic(zm_mul(in.s, b, m2), hs, m2);
    ZPoly ss = zm_sub(in.s, d, m2);
    ZPoly ts = zm_sub(zm_sub(in.t, zm_reduce(zp_mul(in.t, b), m2), m2), zm_mul(c, gs, m2), m2);
    return {gs, hs, ss, ts};
}

// lift f = prod(parts) from mod p to mod target (f monic); returns lifted factors
std::vector<ZPoly> hensel_lift_list(const ZPoly& f, const std::vector<ZPoly>& parts,
                                    const Int& p, const Int& target) {
    if (parts.size() == 1) return {zm_reduce(f, target)};
    size_t half = parts.size() / 2;
    std::vector<ZPoly> left(parts.begin(), parts.begin() + half);
    std::vector<ZPoly> right(parts.begin() + half, parts.end());
    ZPoly g{Int(1)}, h{Int(1)};
    for (auto& u : left) g = zm_mul(g, u, p);
    for (auto& u : right) h = zm_mul(h, u, p);
    // make leading coefficients exactly 1 in symmetric range
    g = zm_reduce(g, p);
    h = zm_reduce(h, p);
    // Bezout mod p via Fp
    Fp fp((uint64_t)p.get_ui());
    FpPoly gp = fp_from_zpoly(g, fp), hp = fp_from_zpoly(h, fp);
    auto bez = fp_ext_gcd(gp, hp);
    if (bez.g.deg() != 0) throw std::logic_error("hensel: factors not coprime mod p");
    uint64_t inv = fp.inv(bez.g.c[0]);
    FpPoly sp = fp_scale(bez.s, inv), tp = fp_scale(bez.t, inv);
    auto to_z = [&](const FpPoly& a) {
        ZPoly r(a.c.size());
        for (size_t i = 0; i < a.c.size(); ++i) r[i] = sym_mod(Int((unsigned long)a.c[i]), p);
        return zp_trim(std::move(r));
    };
    HenselPair cur{g, h, to_z(sp), to_z(tp)};
    Int m = p;
    while (m < target) {
        cur = hensel_step(zm_reduce(f, m * m), cur, m);
        m = m * m;
    }
    cur.g = zm_reduce(cur.g, target);
    cur.h = zm_reduce(cur.h, target);
    auto lifted_left = hensel_lift_list(cur.g, left, p, target);
    auto lifted_right = hensel_lift_list(cur.h, right, p, target);
    lifted_left.insert(lifted_left.end(), lifted_right.begin(), lifted_right.end());
    return lifted_left;
}

// Landau–Mignotte style bound on coefficients of monic divisors of monic f
Int factor_bound(const ZPoly& f) {
    Int max_abs(0);
    for (auto& c : f) {
        Int a = abs(c);
        if (a > max_abs) max_abs = a;
    }
    Int b = max_abs + 1;
    int n = zp_deg(f);
    Int two_n(1);
    two_n <<= (n + 2);
    Int sqrt_n((long)n + 2);
    return b * two_n * sqrt_n;
}

// factor a monic squarefree integer polynomial into monic irreducible factors
std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f) {
    int n = zp_deg(f);
    if (n <= 0) return {};
    if (n == 1) return {f};
    // choose a prime where the reduction stays squarefree
    uint64_t prime = 0;
    for (uint64_t p : modular_primes(3, 200)) {
        Fp fp(p);
        FpPoly fbar = fp_from_zpoly(f, fp);
        if (fbar.deg() != n) continue;  // cannot happen for monic, kept for safety
        if ((int)p <= n) continue;      // keep derivative honest
        FpPoly d = fp_derivative(fbar);
        if (fp_gcd(fbar, d).deg() == 0) {
            prime = p;
            break;
        }
    }
    if (prime == 0) throw std::logic_error("factor: no good prime found");
    Fp fp(prime);
    auto modular = fp_factor(fp_from_zpoly(f, fp), /*seed=*/0x5eedf00dULL + prime);
    std::vector<ZPoly> parts;
    for (auto& [u, m] : modular) {
        assert(m == 1);
        ZPoly z(u.c.size());
        for (size_t i = 0; i < u.c.size(); ++i) z[i] = sym_mod(Int((unsigned long)u.c[i]), Int((unsigned long)prime));
        parts.push_back(zp_trim(std::move(z)));
    }
    if (parts.size() == 1) return {f};

    Int bound = 2 * factor_bound(f) + 1;
    Int p_int((unsigned long)prime);
    Int target = p_int;
    while (target < bound) target *= target;
    auto lifted = hensel_lift_list(zm_reduce(f, target), parts, p_int, target);

    // subset recombination with exact trial division
    std::vector<ZPoly> result;
    ZPoly rest = f;
    std::vector<ZPoly> pool = lifted;
    size_t take = 1;
    while (!pool.empty() && 2 * take <= pool.size()) {
        bool found = false;
        std::vector<size_t> idx(take);
        for (size_t i = 0; i < take; ++i) idx[i] = i;
        while (true) {
            ZPoly cand{Int(1)};
            for (size_t i : idx) cand = zm_mul(cand, pool[i], target);
            if (auto q = zp_divexact(rest, cand)) {
                result.push_back(cand);
                rest = *q;
                std::vector<ZPoly> np;
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
            // next combination
            size_t k = take;
            while (k-- > 0) {
                if (idx[k] + (take - k) < pool.size()) {
                    ++idx[k];
                    for (size_t j = k + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (k == 0) {
                    idx.clear();
                    break;
                }
            }
            if (idx.empty()) break;
        }
        if (!found) ++take;
    }
    if (zp_deg(rest) > 0) result.push_back(rest);
    return result;
}

// map a monic factor G of l^(n-1) f(x/l) back to a primitive factor of f:
// take the primitive part of G(l x)
ZPoly unmonicize(const ZPoly& g, const Int& l) {
    ZPoly r = g;
    Int pw(1);
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] *= pw;
        pw *= l;
    }
    return zp_primitive(r);
}

}  // namespace

UnivFactorization factor_univ_q(const UPoly& f_in) {
    UPoly f = up_trim(f_in);
    if (f.empty()) throw std::domain_error("factor_univ_q: zero polynomial");
    UnivFactorization out;
    out.unit = Rat(1);
    if (up_deg(f) == 0) {
        out.unit = f[0];
        return out;
    }
    ZPoly F = up_to_zp_primitive(f);
    out.unit = f.back() / Rat(F.back());

    // split off x^k
    size_t k = 0;
    while (k < F.size() && F[k] == 0) ++k;
    if (k > 0) {
        out.factors.push_back({ZPoly{Int(0), Int(1)}, (unsigned)k});
        F.erase(F.begin(), F.begin() + k);
    }
    if (zp_deg(F) == 0) return out;

    // squarefree decomposition over Q
    UPoly uf = zp_to_up(F);
    UPoly g = up_gcd(uf, up_derivative(uf));
    UPoly w = up_divmod(uf, g).first;
    unsigned mult = 1;
    std::vector<std::pair<ZPoly, unsigned>> sqf;
    while (up_deg(w) > 0) {
        UPoly y = up_gcd(w, g);
        UPoly z = up_divmod(w, y).first;
        if (up_deg(z) > 0) sqf.push_back({up_to_zp_primitive(z), mult});
        ++mult;
        w = std::move(y);
        g = up_divmod(g, w).first;
    }

    for (auto& [s, m] : sqf) {
        int n = zp_deg(s);
        if (n == 1) {
            out.factors.push_back({s, m});
            continue;
        }
        Int l = s.back();
        ZPoly monic;
        if (l == 1) {
            monic = s;
        } else {
            // monic = l^(n-1) * s(x/l): coefficient i picks up l^(n-1-i)
            monic.assign(s.size(), Int(0));
            monic[(size_t)n] = 1;
            Int pw(1);
            for (size_t i = (size_t)n; i-- > 0;) {
                monic[i] = s[i] * pw;
                pw *= l;
            }
        }
        for (auto& gmon : factor_monic_squarefree(monic))
            out.factors.push_back({l == 1 ? zp_primitive(gmon) : unmonicize(gmon, l), m});
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (zp_deg(a.first) != zp_deg(b.first)) return zp_deg(a.first) < zp_deg(b.first);
        return a.first < b.first;
    });
    return out;
}

std::vector<Rat> rational_roots(const UPoly& f) {
    std::vector<Rat> roots;
    for (auto& [fac, m] : factor_univ_q(f).factors)
        if (zp_deg(fac) == 1) roots.push_back(make_rat(-fac[0], fac[1]));
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool zpoly_is_irreducible_q(const ZPoly& f) {
    if (zp_deg(f) <= 0) return false;
    auto fac = factor_univ_q(zp_to_up(f));
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace qsb
