#include "qsb/forms.hpp"

#include <algorithm>

namespace qsb {

DiagForm DiagForm::scaled(const SquareClass& s) const {
    DiagForm out{ctx, entries};
    for (auto& e : out.entries) e = e * s;
    return out;
}

DiagForm DiagForm::orth(const DiagForm& o) const {
    DiagForm out{ctx, entries};
    out.entries.insert(out.entries.end(), o.entries.begin(), o.entries.end());
    return out;
}

std::string DiagForm::str() const {
    std::string s = "<";
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ",";
        s += entries[i].str();
    }
    return s + ">";
}

DiagForm diag_form_q(const std::vector<Rat>& entries) {
    CtxPtr q = FieldCtx::rationals();
    DiagForm f{q, {}};
    for (auto& e : entries) f.entries.push_back(SquareClass::from_rat(q, e));
    return f;
}

FormInvariants basic_invariants(const DiagForm& f) {
    if (f.entries.empty()) throw unsupported_rank("invariants: empty form");
    FormInvariants inv;
    inv.rank = f.rank();
    SquareClass det = SquareClass::one(f.ctx);
    for (auto& e : f.entries) det = det * e;
    long n = inv.rank;
    if ((n * (n - 1) / 2) % 2) det = det * SquareClass::from_rat(f.ctx, Rat(-1));
    inv.signed_disc = det;
    inv.hasse_witt = SymbolSum::zero(f.ctx, 2);
    return inv;
}

FormInvariants invariants(const DiagForm& f) {
    if (!f.ctx || f.ctx->tag() != FieldTag::Rationals)
        throw unsupported_context("invariants: rational entries required");
    FormInvariants inv = basic_invariants(f);
    SymbolSum h(f.ctx, 2);
    for (size_t i = 0; i < f.entries.size(); ++i)
        for (size_t j = i + 1; j < f.entries.size(); ++j)
            h.add_symbol({f.entries[i], f.entries[j]});
    inv.hasse_witt = symbol_sum_normalize(h);
    inv.signature = 0;
    for (auto& e : f.entries) inv.signature += e.is_negative_rational() ? -1 : 1;
    return inv;
}

// ---- diagonalization -------------------------------------------------------------

namespace {

template <class T, class Ops>
std::vector<T> congruence_diagonalize(std::vector<std::vector<T>> m, std::vector<std::vector<T>> basis,
                                      const Ops& ops) {
    size_t n = m.size();
    auto bilinear = [&](const std::vector<T>& u, const std::vector<T>& w) {
        T acc = ops.zero();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) acc = ops.add(acc, ops.mul(ops.mul(u[i], m[i][j]), w[j]));
        return acc;
    };
    std::vector<T> out;
    std::vector<std::vector<T>> rem = std::move(basis);
    while (!rem.empty()) {
        // find a vector of nonzero value, possibly after mixing in another
        size_t pick = rem.size();
        for (size_t i = 0; i < rem.size(); ++i)
            if (!ops.is_zero(bilinear(rem[i], rem[i]))) {
                pick = i;
                break;
            }
        if (pick == rem.size()) {
            bool fixed = false;
            for (size_t i = 0; i < rem.size() && !fixed; ++i)
                for (size_t j = i + 1; j < rem.size() && !fixed; ++j)
                    if (!ops.is_zero(bilinear(rem[i], rem[j]))) {
                        for (size_t k = 0; k < n; ++k) rem[i][k] = ops.add(rem[i][k], rem[j][k]);
                        pick = i;
                        fixed = true;
                    }
            if (!fixed) throw degenerate_form("diagonalize: degenerate block");
        }
        std::vector<T> v = rem[pick];
        rem.erase(rem.begin() + pick);
        T qv = bilinear(v, v);
        out.push_back(qv);
        for (auto& w : rem) {
            T c = ops.div(bilinear(w, v), qv);
            for (size_t k = 0; k < n; ++k) w[k] = ops.sub(w[k], ops.mul(c, v[k]));
        }
    }
    return out;
}

struct RatOps {
    Rat zero() const { return Rat(0); }
    bool is_zero(const Rat& a) const { return sgn(a) == 0; }
    Rat add(const Rat& a, const Rat& b) const { return a + b; }
    Rat sub(const Rat& a, const Rat& b) const { return a - b; }
    Rat mul(const Rat& a, const Rat& b) const { return a * b; }
    Rat div(const Rat& a, const Rat& b) const { return a / b; }
};

struct FuncOps {
    RingPtr ring;
    RatFunc zero() const { return RatFunc(MPoly(ring)); }
    bool is_zero(const RatFunc& a) const { return a.is_zero(); }
    RatFunc add(const RatFunc& a, const RatFunc& b) const { return a + b; }
    RatFunc sub(const RatFunc& a, const RatFunc& b) const { return a - b; }
    RatFunc mul(const RatFunc& a, const RatFunc& b) const { return a * b; }
    RatFunc div(const RatFunc& a, const RatFunc& b) const { return a / b; }
};

}  // namespace

DiagForm diagonalize(const CtxPtr& ctx, const PolyMatrix& g,
                     const std::optional<std::vector<Rat>>& seed_vector) {
    size_t n = g.size();
    if (n == 0) throw degenerate_form("diagonalize: empty matrix");
    bool constant_entries = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) constant_entries &= g.at(i, j).is_constant();

    DiagForm out{ctx, {}};
    if (constant_entries && ctx->tag() == FieldTag::Rationals) {
        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m[i][j] = g.at(i, j).is_zero() ? Rat(0) : g.at(i, j).constant_value();
        std::vector<std::vector<Rat>> basis(n, std::vector<Rat>(n, Rat(0)));
        for (size_t i = 0; i < n; ++i) basis[i][i] = Rat(1);
        if (seed_vector) {
            if (seed_vector->size() != n) throw std::invalid_argument("diagonalize: seed arity");
            basis.insert(basis.begin(), *seed_vector);
            // keep n independent vectors: drop one unit vector at a pivot of the seed
            for (size_t i = 0; i < n; ++i)
                if (sgn((*seed_vector)[i]) != 0) {
                    basis.erase(basis.begin() + 1 + i);
                    break;
                }
        }
        for (auto& qv : congruence_diagonalize(m, basis, RatOps{}))
            out.entries.push_back(SquareClass::from_rat(ctx, qv));
        return out;
    }

    RingPtr ring = g.ring();
    FuncOps ops{ring};
    std::vector<std::vector<RatFunc>> m(n, std::vector<RatFunc>(n, ops.zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = RatFunc(g.at(i, j));
    std::vector<std::vector<RatFunc>> basis(n, std::vector<RatFunc>(n, ops.zero()));
    for (size_t i = 0; i < n; ++i) basis[i][i] = RatFunc::constant(ring, Rat(1));
    if (seed_vector) {
        if (seed_vector->size() != n) throw std::invalid_argument("diagonalize: seed arity");
        std::vector<RatFunc> seed;
        for (auto& c : *seed_vector) seed.push_back(RatFunc::constant(ring, c));
        basis.insert(basis.begin(), std::move(seed));
        for (size_t i = 0; i < n; ++i)
            if (sgn((*seed_vector)[i]) != 0) {
                basis.erase(basis.begin() + 1 + i);
                break;
            }
    }
    for (auto& qv : congruence_diagonalize(m, basis, ops))
        out.entries.push_back(SquareClass::from_ratfunc(ctx, qv));
    return out;
}

// ---- Clifford invariant -----------------------------------------------------------

SymbolSum clifford_invariant(const DiagForm& f) {
    SymbolSum s(f.ctx, 2);
    SquareClass minus = SquareClass::from_rat(f.ctx, Rat(-1));
    if (f.rank() == 3) {
        // even Clifford algebra of <a,b,c> is the quaternion algebra (-ab,-ac)
        const auto& a = f.entries[0];
        const auto& b = f.entries[1];
        const auto& c = f.entries[2];
        s.add_symbol({minus * a * b, minus * a * c});
        return symbol_sum_normalize(s);
    }
    if (f.rank() == 4) {
        // [C(q)] = w_2(q) + (-1, -d_pm(q))
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j) s.add_symbol({f.entries[i], f.entries[j]});
        SquareClass d = basic_invariants(f).signed_disc;
        s.add_symbol({minus, minus * d});
        return symbol_sum_normalize(s);
    }
    throw unsupported_rank("clifford_invariant: rank 3 or 4");
}

DiagForm pfister(const CtxPtr& ctx, const std::vector<SquareClass>& slots) {
    if (slots.empty() || slots.size() > 3) throw unsupported_rank("pfister: 1..3 slots");
    SquareClass minus = SquareClass::from_rat(ctx, Rat(-1));
    DiagForm out{ctx, {SquareClass::one(ctx)}};
    for (auto& u : slots) {
        DiagForm next{ctx, {}};
        SquareClass mu = minus * u;
        for (auto& e : out.entries) {
            next.entries.push_back(e);
        }
        for (auto& e : out.entries) next.entries.push_back(e * mu);
        out = next;
    }
    return out;
}

// ---- isotropy and isometry over Q ----------------------------------------------

namespace {

void require_q(const DiagForm& f) {
    if (!f.ctx || f.ctx->tag() != FieldTag::Rationals)
        throw unsupported_context("rational entries required");
}

bool square_in_Qv(const Rat& d, const Place& v) {
    if (sgn(d) == 0) throw zero_element("square_in_Qv: zero");
    if (v.kind == Place::RealPlace) return sgn(d) > 0;
    Int p = v.p;
    Int num = d.get_num(), den = d.get_den(), tmp;
    long w = (long)mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) -
             (long)mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    if (w % 2) return false;
    Rat pw(1);
    for (long i = 0; i < (w < 0 ? -w : w); ++i) pw *= Rat(p);
    Rat u = w >= 0 ? Rat(d / pw) : Rat(d * pw);
    if (p == 2) {
        Int m = (u.get_num() % 8) * (u.get_den() % 8) % 8;
        long r = m.get_si() % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    return legendre(Int(u.get_num() * u.get_den()), p) == 1;
}

int hasse_local(const std::vector<Rat>& a, const Place& v) {
    int e = 1;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j) e *= hilbert_symbol(a[i], a[j], v);
    return e;
}

bool isotropic_local(const std::vector<Rat>& a, const Place& v) {
    size_t n = a.size();
    if (n <= 1) return false;
    if (n == 2) return square_in_Qv(-a[0] * a[1], v);
    if (n == 3) return hilbert_symbol(-a[0] * a[2], -a[1] * a[2], v) == 1;
    if (n == 4) {
        Rat d = a[0] * a[1] * a[2] * a[3];
        if (!square_in_Qv(d, v)) return true;
        return hasse_local(a, v) == hilbert_symbol(Rat(-1), Rat(-1), v);
    }
    throw unsupported_rank("isotropic_local: rank <= 4");
}

std::vector<Place> support_places(const std::vector<Rat>& entries) {
    std::vector<Int> primes{Int(2)};
    for (auto& e : entries)
        for (auto& [p, m] : factor_integer(Int(e.get_num() * e.get_den())))
            if (p != 2) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<Place> out{Place::real()};
    for (auto& p : primes) out.push_back(Place::finite(p));
    return out;
}

std::vector<Rat> entry_values(const DiagForm& f) {
    std::vector<Rat> out;
    for (auto& e : f.entries) out.push_back(Rat(e.rational_value()));
    return out;
}

int real_invariant(const SymbolSum& s) {
    int inv = 1;
    for (auto& t : s.terms())
        inv *= hilbert_symbol(Rat(t.slots[0].rational_value()), Rat(t.slots[1].rational_value()),
                              Place::real());
    return inv;
}

}  // namespace

bool is_isotropic_over_Q(const DiagForm& f) {
    require_q(f);
    auto a = entry_values(f);
    size_t n = a.size();
    if (n <= 1) return false;
    int sig = 0;
    for (auto& e : a) sig += sgn(e) > 0 ? 1 : -1;
    if (n >= 5) return std::abs(sig) < (int)n;  // Meyer
    if (std::abs(sig) == (int)n) return false;  // definite
    for (auto& v : support_places(a))
        if (!isotropic_local(a, v)) return false;
    return true;
}

bool is_hyperbolic_over_Q(const DiagForm& f) {
    require_q(f);
    auto inv = invariants(f);
    if (inv.rank % 2) return false;
    if (inv.signature != 0) return false;
    if (!inv.signed_disc.is_one()) return false;
    long m = inv.rank / 2;
    SymbolSum target(f.ctx, 2);
    if ((m * (m - 1) / 2) % 2) {
        SquareClass minus = SquareClass::from_rat(f.ctx, Rat(-1));
        target.add_symbol({minus, minus});
    }
    return is_trivial_H2_Q(inv.hasse_witt + target);
}

bool isometric_over_Q(const DiagForm& f1, const DiagForm& f2) {
    require_q(f1);
    require_q(f2);
    if (f1.rank() != f2.rank()) return false;
    auto i1 = invariants(f1), i2 = invariants(f2);
    if (i1.signature != i2.signature) return false;
    if (!(i1.signed_disc == i2.signed_disc)) return false;
    return is_trivial_H2_Q(i1.hasse_witt + i2.hasse_witt);
}

RemarkChainReport verify_remark_chain(const Rat& a, const Rat& b, const Rat& d, const Rat& f,
                                      const Rat& g, const Rat& h) {
    if (sgn(a) == 0 || sgn(b) == 0 || sgn(d) == 0 || sgn(f) == 0)
        throw zero_element("verify_remark_chain: zero parameter");
    if (f != g * g - d * h * h) throw norm_witness_invalid("f != g^2 - d h^2");

    CtxPtr q = FieldCtx::rationals();
    auto cls = [&](const Rat& x) { return SquareClass::from_rat(q, x); };
    RemarkChainReport rep;
    auto step = [&](const std::string& name, bool ok) {
        rep.steps.push_back({name, ok});
        rep.all_ok = rep.all_ok && ok;
    };

    DiagForm P = pfister(q, {cls(-a * b), cls(-a * d), cls(f)});
    DiagForm base = diag_form_q({Rat(1), a * b, a * d, b * d});
    DiagForm A1 = base.orth(base.scaled(cls(-f)));
    step("pfister expands to <1,ab,ad,bd> + -f<1,ab,ad,bd>", isometric_over_Q(P, A1));

    DiagForm abd = diag_form_q({a * b, a * d, b * d});
    DiagForm A2 = abd.orth(diag_form_q({Rat(1), -f})).orth(diag_form_q({a * b, b * d, a * d}).scaled(cls(-f)));
    step("regroup the binary form <1,-f>", isometric_over_Q(A1, A2));

    bool binary = isometric_over_Q(diag_form_q({Rat(1), -f}), diag_form_q({d, -d * f}));
    step("<1,-f> = <d,-df> (d is a similarity factor of the norm form)", binary);

    DiagForm A3 = abd.orth(diag_form_q({d, -d * f})).orth(diag_form_q({a * b, b * d, a * d}).scaled(cls(-f)));
    step("substitute <d,-df>", isometric_over_Q(A2, A3));

    DiagForm A4 = diag_form_q({d, a * b, a * d, b * d}).orth(diag_form_q({d, a * b, b * d, a * d}).scaled(cls(-f)));
    step("regroup to <d,ab,ad,bd> + -f<d,ab,bd,ad>", isometric_over_Q(A3, A4));

    DiagForm sub = diag_form_q({d, a * d, b * d, a * b});
    DiagForm d_scaled = diag_form_q({Rat(1), a, b, a * b * d}).scaled(cls(d));
    step("<d,ad,bd,ab> = d<1,a,b,abd>", isometric_over_Q(sub, d_scaled));

    DiagForm complement = diag_form_q({d, a * b, b * d, a * d}).scaled(cls(-f));
    step("subform with explicit complement", isometric_over_Q(sub.orth(complement), P));
    return rep;
}

bool witt_complement_exists(const DiagForm& q_form, const std::vector<SquareClass>& phi,
                            const SquareClass& s) {
    require_q(q_form);
    if (q_form.rank() != 4) throw unsupported_rank("witt_complement_exists: rank 4");
    if (phi.size() != 3) throw unsupported_rank("witt_complement_exists: 3-fold Pfister");
    CtxPtr q = FieldCtx::rationals();
    DiagForm target = pfister(q, phi).scaled(s);

    auto it = invariants(target), iq = invariants(q_form);
    int sig = it.signature - iq.signature;
    if (sig % 2 || std::abs(sig) > 4) return false;
    int m = (4 - sig) / 2;  // required number of negative entries

    SquareClass dq = iq.signed_disc;  // rank 4: signed = det
    SquareClass dprime = it.signed_disc * dq;  // det q' (rank-8 signed disc = det)
    if (dprime.is_negative_rational() != (m % 2 == 1)) return false;

    // required Hasse-Witt class of q'
    SymbolSum h = it.hasse_witt + iq.hasse_witt;
    SymbolSum cross(q, 2);
    cross.add_symbol({dq, dprime});
    h = h + cross;
    int h_inf = real_invariant(symbol_sum_normalize(h));
    int want = ((m * (m - 1) / 2) % 2) ? -1 : 1;
    return h_inf == want;
}

}  // namespace qsb
