#include "qsb/symbols.hpp"

#include <algorithm>

#include "qsb/factor_univ.hpp"

namespace qsb {

std::string Symbol::str() const {
    std::string s = "(";
    for (size_t i = 0; i < slots.size(); ++i) {
        if (i) s += ",";
        s += slots[i].str();
    }
    return s + ")";
}

SymbolSum SymbolSum::single(const CtxPtr& ctx, std::vector<SquareClass> slots) {
    SymbolSum s(ctx, (int)slots.size());
    s.add_symbol(std::move(slots));
    return s;
}

void SymbolSum::add_symbol(std::vector<SquareClass> slots) {
    if ((int)slots.size() != degree_) throw mixed_degree("add_symbol: slot count != degree");
    for (auto& c : slots)
        if (!same_ctx(c.ctx(), ctx_)) throw mixed_context("add_symbol: slot context mismatch");
    terms_.push_back(Symbol{std::move(slots)});
    normalized_ = false;
}

SymbolSum SymbolSum::operator+(const SymbolSum& o) const {
    if (degree_ != o.degree_) throw mixed_degree("sum of different degrees");
    if (!same_ctx(ctx_, o.ctx_)) throw mixed_context("sum over different contexts");
    SymbolSum r(ctx_, degree_);
    r.terms_ = terms_;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    return symbol_sum_normalize(r);
}

std::string SymbolSum::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        s += terms_[i].str();
    }
    return s;
}

SymbolSum symbol_sum_normalize(const SymbolSum& s) {
    SymbolSum out(s.ctx(), s.degree());
    std::vector<Symbol> atomic;

    for (const auto& sym : s.terms()) {
        if ((int)sym.slots.size() != s.degree())
            throw mixed_degree("normalize: slot count != degree");
        // opaque slots admit no atomic expansion; keep the symbol whole
        bool opaque = false;
        for (auto& c : sym.slots) opaque = opaque || c.opaque();
        if (opaque) {
            atomic.push_back(sym);
            continue;
        }
        // multilinear expansion: pick one atom per slot
        std::vector<std::vector<Atom>> choices;
        bool dead = false;
        for (auto& c : sym.slots) {
            if (c.atoms().empty()) {
                dead = true;  // slot equal to 1 kills the symbol
                break;
            }
            choices.push_back(c.atoms());
        }
        if (dead) continue;
        std::vector<size_t> idx(choices.size(), 0);
        while (true) {
            std::vector<Atom> picked;
            for (size_t i = 0; i < idx.size(); ++i) picked.push_back(choices[i][idx[i]]);

            // (..,a,a,..) -> (..,-1,a,..) until each atom other than -1 is single
            std::vector<Atom> minus_ones, rest;
            std::sort(picked.begin(), picked.end());
            for (auto& a : picked) {
                if (a.kind == Atom::MinusOne) {
                    minus_ones.push_back(a);
                    continue;
                }
                if (!rest.empty() && rest.back() == a)
                    minus_ones.push_back(Atom::minus_one());
                else
                    rest.push_back(a);
            }
            std::vector<Atom> slots_atoms = std::move(minus_ones);
            slots_atoms.insert(slots_atoms.end(), rest.begin(), rest.end());
            std::sort(slots_atoms.begin(), slots_atoms.end());

            Symbol t;
            for (auto& a : slots_atoms)
                t.slots.push_back(SquareClass::from_atoms(s.ctx(), {a}));
            atomic.push_back(std::move(t));

            size_t k = 0;
            while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }

    // mod-2 cancellation
    std::sort(atomic.begin(), atomic.end());
    std::vector<Symbol> kept;
    for (auto& t : atomic) {
        if (!kept.empty() && kept.back() == t)
            kept.pop_back();
        else
            kept.push_back(t);
    }
    for (auto& t : kept) out.add_symbol(std::move(t.slots));
    out.normalized_ = true;
    std::sort(out.terms_.begin(), out.terms_.end());
    return out;
}

std::string Place::str() const {
    switch (kind) {
        case FinitePrime:
            return "p=" + p.get_str();
        case RealPlace:
            return "real";
        case CurveValuation:
            return "curve(" + pi.str() + ")";
        case LineAtInfinity:
            return "line_at_infinity";
    }
    return "?";
}

// ---- Hilbert symbol --------------------------------------------------------------

namespace {

long val_p(const Rat& a, const Int& p) {
    Int n = a.get_num(), d = a.get_den();
    Int tmp;
    long vn = (long)mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    long vd = (long)mpz_remove(tmp.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
    return vn - vd;
}

Rat unit_part(const Rat& a, const Int& p, long v) {
    Rat pw(1);
    Rat pr(p);
    long k = v < 0 ? -v : v;
    for (long i = 0; i < k; ++i) pw *= pr;
    return v >= 0 ? Rat(a / pw) : Rat(a * pw);
}

int legendre_rat(const Rat& u, const Int& p) {
    // (num*den | p)
    return legendre(Int(u.get_num() * u.get_den()), p);
}

// u odd rational; residue of u mod 8 via num * den (den^-1 = den mod 8)
long mod8(const Rat& u) {
    Int m = (u.get_num() % 8) * (u.get_den() % 8) % 8;
    long r = m.get_si() % 8;
    return r < 0 ? r + 8 : r;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
    if (sgn(a) == 0 || sgn(b) == 0) throw zero_element("hilbert_symbol: zero argument");
    if (v.kind == Place::RealPlace) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    if (v.kind != Place::FinitePrime) throw not_a_valuation("hilbert_symbol: need a prime or real place");
    const Int& p = v.p;
    long alpha = val_p(a, p), beta = val_p(b, p);
    Rat u = unit_part(a, p, alpha), w = unit_part(b, p, beta);
    if (p == 2) {
        long eu = ((mod8(u) - 1) / 2) % 2, ew = ((mod8(w) - 1) / 2) % 2;
        long ou = (mod8(u) * mod8(u) - 1) / 8 % 2, ow = (mod8(w) * mod8(w) - 1) / 8 % 2;
        long e = eu * ew + alpha * ow + beta * ou;
        return e % 2 ? -1 : 1;
    }
    int sign = 1;
    if ((alpha % 2) && (beta % 2) && ((p - 1) / 2) % 2 == 1) sign = -sign;
    if (beta % 2 && legendre_rat(u, p) == -1) sign = -sign;
    if (alpha % 2 && legendre_rat(w, p) == -1) sign = -sign;
    return sign;
}

// ---- global decisions over Q ---------------------------------------------------

namespace {

void require_q_ctx(const SymbolSum& s) {
    if (!s.ctx() || s.ctx()->tag() != FieldTag::Rationals)
        throw mixed_context("decision requires the rational context");
}

}  // namespace

bool is_trivial_H2_Q(const SymbolSum& s_in) {
    require_q_ctx(s_in);
    if (s_in.degree() != 2) throw wrong_degree("is_trivial_H2_Q: degree 2 required");
    SymbolSum s = symbol_sum_normalize(s_in);
    if (s.is_zero()) return true;

    std::vector<Place> places{Place::real(), Place::finite(Int(2))};
    {
        std::vector<Int> primes;
        for (auto& t : s.terms())
            for (auto& c : t.slots)
                for (auto& a : c.atoms())
                    if (a.kind == Atom::Prime && a.p != 2) primes.push_back(a.p);
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        for (auto& p : primes) places.push_back(Place::finite(p));
    }
    for (auto& v : places) {
        int inv = 1;
        for (auto& t : s.terms())
            inv *= hilbert_symbol(Rat(t.slots[0].rational_value()),
                                  Rat(t.slots[1].rational_value()), v);
        if (inv != 1) return false;
    }
    return true;
}

bool is_trivial_H3_Q(const SymbolSum& s_in) {
    require_q_ctx(s_in);
    if (s_in.degree() != 3) throw wrong_degree("is_trivial_H3_Q: degree 3 required");
    SymbolSum s = symbol_sum_normalize(s_in);
    // the real place detects H^3(Q, Z/2): a symbol survives iff all three
    // slots are negative (its 3-Pfister form is then definite)
    int negatives = 0;
    for (auto& t : s.terms()) {
        bool all_neg = true;
        for (auto& c : t.slots) all_neg = all_neg && c.is_negative_rational();
        if (all_neg) ++negatives;
    }
    return negatives % 2 == 0;
}

// ---- residues -------------------------------------------------------------------

CtxPtr residue_ctx(const CtxPtr& ctx, const Place& v) {
    switch (v.kind) {
        case Place::FinitePrime:
            if (ctx->tag() != FieldTag::Rationals)
                throw not_a_valuation("finite prime place needs ctx = Q");
            return FieldCtx::prime_field(v.p.get_ui());
        case Place::CurveValuation:
            if (ctx->tag() != FieldTag::FunctionField)
                throw not_a_valuation("curve valuation needs a function field");
            return FieldCtx::residue_field(ctx, v.pi);
        case Place::LineAtInfinity: {
            if (ctx->tag() != FieldTag::FunctionField)
                throw not_a_valuation("degree valuation needs a function field");
            if (ctx->ring()->nvars() == 1) return FieldCtx::rationals();
            if (ctx->ring()->nvars() == 2) {
                // function field of the line at infinity
                return FieldCtx::function_field(
                    PolyRing::make({ctx->ring()->var(0) + "_inf"}));
            }
            throw residue_field_unsupported("line at infinity: more than two variables");
        }
        case Place::RealPlace:
            throw not_a_valuation("the real place has no residue map");
    }
    throw not_a_valuation("unknown place");
}

int place_valuation(const SquareClass& c, const Place& v) {
    if (c.opaque()) throw residue_field_unsupported("valuation of an opaque class");
    int val = 0;
    for (auto& a : c.atoms()) {
        switch (v.kind) {
            case Place::FinitePrime:
                if (a.kind == Atom::Prime && a.p == v.p) val ^= 1;
                break;
            case Place::CurveValuation:
                if (a.kind == Atom::Poly && a.f == v.pi) val ^= 1;
                break;
            case Place::LineAtInfinity:
                if (a.kind == Atom::Poly) val ^= (a.f.total_degree() % 2);
                break;
            case Place::RealPlace:
                throw not_a_valuation("the real place is not discrete");
        }
    }
    return val;
}

namespace {

// square class of a nonzero value in F_p
SquareClass class_mod_p(const CtxPtr& kp, uint64_t value) {
    Fp fp(kp->prime());
    if (value % fp.p == 0) throw zero_element("class_mod_p: zero");
    if (fp.is_square(value % fp.p)) return SquareClass::one(kp);
    // canonical representative: the smallest quadratic nonresidue
    uint64_t n = 2;
    while (fp.is_square(n)) ++n;
    return SquareClass::from_atoms(kp, {Atom::prime(Int((unsigned long)n))});
}

// reduction of a p-adic unit atom in F_p
uint64_t reduce_atom_mod_p(const Atom& a, const Fp& fp) {
    if (a.kind == Atom::MinusOne) return fp.p - 1;
    if (a.kind == Atom::Prime) return fp.from_int(a.p);
    throw residue_field_unsupported("polynomial atom over Q");
}

// leading form of a polynomial as a univariate in the infinity parameter
MPoly leading_form_dehomogenized(const MPoly& f, const RingPtr& target) {
    int d = f.total_degree();
    MPoly out(target);
    for (auto& [m, c] : f.terms()) {
        if ((int)mono_degree(m) != d) continue;
        // substitute (x, y) -> (tau, 1)
        Mono nm{m[0]};
        out += MPoly::monomial(target, nm, c);
    }
    return out;
}

// residue of a single degree-2 symbol by the valuation-theoretic formula
SquareClass residue_deg2_symbol(const CtxPtr& ctx, const CtxPtr& kv, const Symbol& t,
                                const Place& v) {
    auto vf = place_valuation(t.slots[0], v);
    auto vg = place_valuation(t.slots[1], v);
    if (vf == 0 && vg == 0) {
        // units: residue trivial unless the residue field cannot certify;
        // the tame symbol of two units is 1
        return SquareClass::one(kv);
    }
    RatFunc f = t.slots[0].value_func(), g = t.slots[1].value_func();
    RatFunc r = RatFunc::constant(f.ring(), Rat((vf & vg) ? -1 : 1));
    if (vg) r = r * f;
    if (vf) r = r * g.inverse();
    // r is a unit at v
    switch (v.kind) {
        case Place::FinitePrime: {
            Fp fp(kv->prime());
            // r rational: n*d mod p
            Rat val = r.num().constant_value() / r.den().constant_value();
            long w = val_p(val, v.p);
            if (w % 2) throw std::logic_error("residue: unit has odd valuation");
            Rat u = unit_part(val, v.p, w);
            return class_mod_p(kv, fp.mul(fp.from_int(Int(u.get_num())), fp.from_int(Int(u.get_den()))));
        }
        case Place::CurveValuation: {
            // class of num*den in the residue field, kept as a representative
            MPoly nd = r.num() * r.den();
            return SquareClass::opaque_rep(kv, RatFunc(nd));
        }
        case Place::LineAtInfinity: {
            // reduction = ratio of leading forms
            if (ctx->ring()->nvars() == 1) {
                Rat lead_n = r.num().leading().second;
                Rat lead_d = r.den().leading().second;
                // adjust for a degree gap (v-infinity of r must be 0)
                if (r.num().total_degree() != r.den().total_degree())
                    throw std::logic_error("residue at infinity: not a unit");
                return SquareClass::from_rat(kv, lead_n / lead_d);
            }
            if (r.num().total_degree() != r.den().total_degree())
                throw std::logic_error("residue at infinity: not a unit");
            MPoly ln = leading_form_dehomogenized(r.num(), kv->ring());
            MPoly ld = leading_form_dehomogenized(r.den(), kv->ring());
            return SquareClass::from_ratfunc(kv, RatFunc(ln, ld));
        }
        default:
            throw not_a_valuation("residue_deg2_symbol");
    }
}

}  // namespace

SymbolSum tame_residue(const SymbolSum& s_in, const Place& v) {
    if (v.kind == Place::RealPlace) throw not_a_valuation("tame_residue: real place");
    SymbolSum s = symbol_sum_normalize(s_in);
    const CtxPtr& ctx = s.ctx();
    CtxPtr kv = residue_ctx(ctx, v);
    int n = s.degree();
    if (n < 1 || n > 3) throw wrong_degree("tame_residue: degree 1..3");

    if (n == 2) {
        // combine per-symbol residues multiplicatively into one degree-1 class
        SquareClass acc = SquareClass::one(kv);
        for (auto& t : s.terms()) {
            SquareClass r = residue_deg2_symbol(ctx, kv, t, v);
            if (r.is_one()) continue;
            if (acc.is_one() && !acc.opaque()) {
                acc = r;
                continue;
            }
            acc = acc * r;
        }
        SymbolSum out(kv, 1);
        if (!acc.is_one()) out.add_symbol({acc});
        return symbol_sum_normalize(out);
    }

    // degrees 1 and 3: the normalized atomic form has at most one slot with
    // odd valuation at a curve/prime place (the uniformizer atom itself)
    if (v.kind == Place::LineAtInfinity)
        throw residue_field_unsupported("tame_residue: degree != 2 at the line at infinity");

    SymbolSum out(kv, n - 1);
    for (auto& t : s.terms()) {
        std::vector<SquareClass> rest;
        int hits = 0;
        for (auto& c : t.slots) {
            if (place_valuation(c, v) == 1)
                ++hits;
            else
                rest.push_back(c);
        }
        if (hits == 0) continue;
        if (hits > 1) throw std::logic_error("tame_residue: repeated uniformizer after normalization");
        // reduce the unit slots into the residue field
        std::vector<SquareClass> reduced;
        for (auto& c : rest) {
            if (v.kind == Place::FinitePrime) {
                Fp fp(kv->prime());
                uint64_t val = 1;
                for (auto& a : c.atoms()) val = fp.mul(val, reduce_atom_mod_p(a, fp));
                reduced.push_back(class_mod_p(kv, val));
            } else {
                reduced.push_back(SquareClass::opaque_rep(kv, c.value_func()));
            }
        }
        if (n == 1) {
            // degree-0 target is Z/2: represent by the empty symbol parity;
            // modelled as a degree-0 sum, which we do not house
            throw wrong_degree("tame_residue: degree-0 targets are not represented");
        }
        out.add_symbol(std::move(reduced));
    }
    return symbol_sum_normalize(out);
}

SquareClass corestrict_to_Q(const SquareClass& residue_class, const MPoly& pi) {
    CtxPtr q = FieldCtx::rationals();
    // representative r; norm is Res(pi, r) / lc(pi)^deg r, read mod squares
    RatFunc r = residue_class.value_func();
    MPoly nd = r.num() * r.den();
    if (nd.is_constant()) {
        // constant class: norm = c^deg(pi) ~ c^(deg pi mod 2)
        Rat c = nd.constant_value();
        int d = pi.total_degree();
        return d % 2 ? SquareClass::from_rat(q, c) : SquareClass::one(q);
    }
    // univariate data
    size_t var = 0;
    auto to_up = [&](const MPoly& f) {
        auto cs = f.coeffs_in(var);
        UPoly u(cs.size());
        for (size_t i = 0; i < cs.size(); ++i)
            u[i] = cs[i].is_zero() ? Rat(0) : cs[i].constant_value();
        return up_trim(std::move(u));
    };
    UPoly upi = to_up(pi), und = to_up(nd);
    Rat res = up_resultant(upi, und);
    if (sgn(res) == 0) throw zero_element("corestriction: representative vanishes at the place");
    Rat lc = upi.back();
    Rat norm = res;
    if (up_deg(und) % 2) norm *= lc;  // divide by lc^deg ~ multiply mod squares
    return SquareClass::from_rat(q, norm);
}

bool faddeev_reciprocity_check(const SymbolSum& s_in) {
    SymbolSum s = symbol_sum_normalize(s_in);
    if (s.degree() != 2) throw wrong_degree("faddeev_reciprocity_check: degree 2");
    const CtxPtr& ctx = s.ctx();
    if (!ctx || ctx->tag() != FieldTag::FunctionField || ctx->ring()->nvars() != 1)
        throw mixed_context("faddeev_reciprocity_check: need Q(t)");

    // candidate finite places: the polynomial atoms present
    std::vector<MPoly> pis;
    for (auto& t : s.terms())
        for (auto& c : t.slots)
            for (auto& a : c.atoms())
                if (a.kind == Atom::Poly) pis.push_back(a.f);
    std::sort(pis.begin(), pis.end());
    pis.erase(std::unique(pis.begin(), pis.end()), pis.end());

    CtxPtr q = FieldCtx::rationals();
    SquareClass total = SquareClass::one(q);
    for (auto& pi : pis) {
        SymbolSum res = tame_residue(s, Place::curve(pi));
        if (res.is_zero()) continue;
        total = total * corestrict_to_Q(res.terms()[0].slots[0], pi);
    }
    SymbolSum res_inf = tame_residue(s, Place::infinity());
    if (!res_inf.is_zero()) {
        // residue field at infinity for Q(t) is Q
        const SquareClass& c = res_inf.terms()[0].slots[0];
        total = total * (c.opaque() ? SquareClass::from_ratfunc(q, c.rep()) : c);
    }
    return total.is_one();
}

}  // namespace qsb
