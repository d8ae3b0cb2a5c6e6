#include "qsb/upoly.hpp"

#include <algorithm>

namespace qsb {

UPoly up_trim(UPoly f) {
    while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
    return f;
}

int up_deg(const UPoly& f) { return (int)f.size() - 1; }

UPoly up_add(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return up_trim(std::move(r));
}

UPoly up_sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return up_trim(std::move(r));
}

UPoly up_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return up_trim(std::move(r));
}

UPoly up_scale(const UPoly& a, const Rat& c) {
    if (sgn(c) == 0) return {};
    UPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

UPoly up_monic(const UPoly& a) {
    if (a.empty()) return a;
    return up_scale(a, Rat(1) / a.back());
}

std::pair<UPoly, UPoly> up_divmod(const UPoly& a, const UPoly& b) {
    if (b.empty()) throw std::domain_error("up_divmod: zero divisor");
    UPoly r = a;
    int db = up_deg(b);
    if (up_deg(a) < db) return {{}, r};
    UPoly q(a.size() - b.size() + 1, Rat(0));
    while (up_deg(r) >= db) {
        size_t k = r.size() - b.size();
        Rat f = r.back() / b.back();
        q[k] = f;
        for (size_t i = 0; i < b.size(); ++i) r[k + i] -= f * b[i];
        r = up_trim(std::move(r));
    }
    return {up_trim(std::move(q)), r};
}

UPoly up_gcd(const UPoly& a, const UPoly& b) {
    UPoly x = up_trim(a), y = up_trim(b);
    while (!y.empty()) {
        auto [q, r] = up_divmod(x, y);
        x = std::move(y);
        y = std::move(r);
        // keep sizes modest
        if (!y.empty()) y = up_monic(y);
    }
    return up_monic(x);
}

UPoly up_derivative(const UPoly& a) {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat((long)i);
    return up_trim(std::move(r));
}

Rat up_eval(const UPoly& a, const Rat& x) {
    Rat acc(0);
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

UPoly up_rem(const UPoly& a, const UPoly& mod) { return up_divmod(a, mod).second; }

UPoly up_pow_mod(const UPoly& a, const Int& e, const UPoly& mod) {
    UPoly r{Rat(1)};
    UPoly base = up_rem(a, mod);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = up_rem(up_mul(r, base), mod);
        base = up_rem(up_mul(base, base), mod);
        k >>= 1;
    }
    return r;
}

Rat up_resultant(const UPoly& a, const UPoly& b) {
    // Euclidean resultant with leading-coefficient bookkeeping
    UPoly f = up_trim(a), g = up_trim(b);
    if (f.empty() || g.empty()) return Rat(0);
    Rat res(1);
    bool swapped = false;
    int sign = 1;
    while (true) {
        int df = up_deg(f), dg = up_deg(g);
        if (dg == 0) {
            Rat lc = g.back();
            Rat out = res;
            Rat p(1);
            for (int i = 0; i < df; ++i) p *= lc;
            out *= p;
            return sign < 0 ? -out : out;
        }
        auto [q, r] = up_divmod(f, g);
        if (r.empty()) return Rat(0);
        int dr = up_deg(r);
        // res(f,g) = (-1)^(df*dg) * lc(g)^(df-dr) * res(g,r)
        if ((df * dg) % 2) sign = -sign;
        Rat lc = g.back();
        Rat p(1);
        for (int i = 0; i < df - dr; ++i) p *= lc;
        res *= p;
        f = std::move(g);
        g = std::move(r);
        (void)swapped;
    }
}

// ---- Z[x] ---------------------------------------------------------------------

ZPoly zp_trim(ZPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int zp_deg(const ZPoly& f) { return (int)f.size() - 1; }

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return zp_trim(std::move(r));
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return zp_trim(std::move(r));
}

Int zp_content(const ZPoly& f) {
    Int g(0);
    for (auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zp_primitive(const ZPoly& f) {
    ZPoly r = zp_trim(f);
    if (r.empty()) return r;
    Int c = zp_content(r);
    if (sgn(r.back()) < 0) c = -c;
    for (auto& x : r) x /= c;
    return r;
}

std::optional<ZPoly> zp_divexact(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw std::domain_error("zp_divexact: zero divisor");
    ZPoly r = zp_trim(a);
    int db = zp_deg(b);
    if (r.empty()) return ZPoly{};
    if (zp_deg(r) < db) return std::nullopt;
    ZPoly q(r.size() - b.size() + 1, Int(0));
    while (!r.empty() && zp_deg(r) >= db) {
        Int f = r.back() / b.back();
        if (f * b.back() != r.back()) return std::nullopt;
        size_t k = r.size() - b.size();
        q[k] = f;
        for (size_t i = 0; i < b.size(); ++i) r[k + i] -= f * b[i];
        r = zp_trim(std::move(r));
    }
    if (!r.empty()) return std::nullopt;
    return zp_trim(std::move(q));
}

UPoly zp_to_up(const ZPoly& f) {
    UPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = Rat(f[i]);
    return up_trim(std::move(r));
}

ZPoly up_to_zp_primitive(const UPoly& f) {
    if (f.empty()) return {};
    Int den(1);
    for (auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), Int(c.get_den()).get_mpz_t());
    ZPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = Int(f[i] * Rat(den));
    return zp_primitive(r);
}

// ---- F_p[x] ---------------------------------------------------------------------

FpPoly fp_from_zpoly(const ZPoly& f, const Fp& fp) {
    FpPoly r(fp);
    r.c.resize(f.size());
    for (size_t i = 0; i < f.size(); ++i) r.c[i] = fp.from_int(f[i]);
    r.trim();
    return r;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
    FpPoly r(a.fp);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.fp.add(r.c[i], a.c[i]);
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.fp.add(r.c[i], b.c[i]);
    r.trim();
    return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
    FpPoly r(a.fp);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.fp.add(r.c[i], a.c[i]);
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.fp.sub(r.c[i], b.c[i]);
    r.trim();
    return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
    FpPoly r(a.fp);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = a.fp.add(r.c[i + j], a.fp.mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

FpPoly fp_scale(const FpPoly& a, uint64_t k) {
    FpPoly r = a;
    for (auto& x : r.c) x = a.fp.mul(x, k);
    r.trim();
    return r;
}

FpPoly fp_monic(const FpPoly& a) {
    if (a.is_zero()) return a;
    return fp_scale(a, a.fp.inv(a.lead()));
}

std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw std::domain_error("fp_divmod: zero divisor");
    FpPoly r = a, q(a.fp);
    int db = b.deg();
    if (r.deg() < db) return {q, r};
    q.c.assign(r.c.size() - b.c.size() + 1, 0);
    uint64_t inv_lead = a.fp.inv(b.lead());
    while (!r.is_zero() && r.deg() >= db) {
        uint64_t f = a.fp.mul(r.lead(), inv_lead);
        size_t k = r.c.size() - b.c.size();
        q.c[k] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[k + i] = a.fp.sub(r.c[k + i], a.fp.mul(f, b.c[i]));
        r.trim();
    }
    q.trim();
    return {q, r};
}

FpPoly fp_gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        auto [q, r] = fp_divmod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return fp_monic(x);
}

FpBezout fp_ext_gcd(const FpPoly& a, const FpPoly& b) {
    const Fp& fp = a.fp;
    FpPoly r0 = a, r1 = b;
    FpPoly s0(fp, {1}), s1(fp);
    FpPoly t0(fp), t1(fp, {1});
    while (!r1.is_zero()) {
        auto [q, r] = fp_divmod(r0, r1);
        FpPoly ns = fp_sub(s0, fp_mul(q, s1));
        FpPoly nt = fp_sub(t0, fp_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(ns);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    // normalize so g is monic
    if (!r0.is_zero()) {
        uint64_t k = fp.inv(r0.lead());
        r0 = fp_scale(r0, k);
        s0 = fp_scale(s0, k);
        t0 = fp_scale(t0, k);
    }
    return {r0, s0, t0};
}

FpPoly fp_pow_mod(const FpPoly& a, const Int& e, const FpPoly& mod) {
    FpPoly r(a.fp, {1});
    FpPoly base = fp_divmod(a, mod).second;
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = fp_divmod(fp_mul(r, base), mod).second;
        base = fp_divmod(fp_mul(base, base), mod).second;
        k >>= 1;
    }
    return r;
}

FpPoly fp_derivative(const FpPoly& a) {
    FpPoly r(a.fp);
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = a.fp.mul(a.c[i], i % a.fp.p);
    r.trim();
    return r;
}

uint64_t fp_eval(const FpPoly& a, uint64_t x) {
    uint64_t acc = 0;
    for (size_t i = a.c.size(); i-- > 0;) acc = a.fp.add(a.fp.mul(acc, x), a.c[i]);
    return acc;
}

namespace {

// equal-degree splitting (Cantor–Zassenhaus), f monic squarefree product of
// irreducibles of degree d
void fp_edf(const FpPoly& f, int d, Rng& rng, std::vector<FpPoly>& out) {
    if (f.deg() == d) {
        out.push_back(f);
        return;
    }
    const Fp& fp = f.fp;
    Int exp = (Int(Int((unsigned long)fp.p).get_str(), 10));  // p as Int
    Int pd(1);
    for (int i = 0; i < d; ++i) pd *= Int((unsigned long)fp.p);
    Int half = (pd - 1) / 2;
    while (true) {
        FpPoly r(fp);
        r.c.resize((size_t)f.deg(), 0);
        for (auto& x : r.c) x = rng.u64() % fp.p;
        r.trim();
        if (r.deg() < 1) continue;
        FpPoly g = fp_gcd(f, r);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            fp_edf(g, d, rng, out);
            fp_edf(fp_divmod(f, g).first, d, rng, out);
            return;
        }
        FpPoly h = fp_pow_mod(r, half, f);
        h.c.resize(std::max<size_t>(h.c.size(), 1), 0);
        h.c[0] = fp.sub(h.c[0], 1);
        h.trim();
        g = fp_gcd(f, h);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            fp_edf(g, d, rng, out);
            fp_edf(fp_divmod(f, g).first, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> fp_factor(const FpPoly& f_in, uint64_t seed) {
    std::vector<std::pair<FpPoly, unsigned>> out;
    FpPoly f = fp_monic(f_in);
    if (f.deg() <= 0) return out;
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    const Fp& fp = f.fp;

    // squarefree decomposition over F_p: p exceeds all degrees we use, so the
    // derivative never vanishes on a nonconstant squarefree input
    unsigned mult = 1;
    std::vector<std::pair<FpPoly, unsigned>> sqf;
    FpPoly g = fp_gcd(f, fp_derivative(f));
    FpPoly w = fp_divmod(f, g).first;
    while (w.deg() > 0) {
        FpPoly y = fp_gcd(w, g);
        FpPoly z = fp_divmod(w, y).first;
        if (z.deg() > 0) sqf.emplace_back(z, mult);
        ++mult;
        w = std::move(y);
        g = fp_divmod(g, w).first;
    }
    if (g.deg() > 0) throw std::logic_error("fp_factor: wild p (derivative vanished)");

    for (auto& [sf, m] : sqf) {
        // distinct degree
        FpPoly h(fp, {0, 1});  // x
        FpPoly rest = sf;
        int d = 0;
        while (rest.deg() > 0) {
            ++d;
            if (2 * d > rest.deg()) {
                out.emplace_back(rest, m);
                break;
            }
            h = fp_pow_mod(h, Int((unsigned long)fp.p), rest);
            FpPoly hx = h;
            if (hx.c.size() < 2) hx.c.resize(2, 0);
            hx.c[1] = fp.sub(hx.c[1], 1);
            hx.trim();
            FpPoly gd = fp_gcd(rest, hx);
            if (gd.deg() > 0) {
                std::vector<FpPoly> pieces;
                fp_edf(gd, d, rng, pieces);
                for (auto& p : pieces) out.emplace_back(p, m);
                rest = fp_divmod(rest, gd).first;
                h = fp_divmod(h, rest).second;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        return a.first.c < b.first.c;
    });
    return out;
}

std::vector<uint64_t> fp_roots(const FpPoly& f, uint64_t seed) {
    std::vector<uint64_t> roots;
    if (f.deg() <= 0) return roots;
    const Fp& fp = f.fp;
    // gcd with x^p - x isolates the linear part
    FpPoly x(fp, {0, 1});
    FpPoly xp = fp_pow_mod(x, Int((unsigned long)fp.p), f);
    FpPoly lin = fp_gcd(f, fp_sub(xp, x));
    if (lin.deg() <= 0) return roots;
    std::vector<FpPoly> pieces;
    Rng rng(seed ^ 0xda942042e4dd58b5ull);
    fp_edf(lin, 1, rng, pieces);
    for (auto& p : pieces) roots.push_back(fp.sub(0, p.c[0]));  // x + c -> root -c
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace qsb
