#include "qsb/square_class.hpp"

#include <algorithm>

namespace qsb {

// ---- FieldCtx ----------------------------------------------------------------

CtxPtr FieldCtx::rationals() {
    static CtxPtr q = [] {
        auto c = std::shared_ptr<FieldCtx>(new FieldCtx());
        c->tag_ = FieldTag::Rationals;
        return CtxPtr(c);
    }();
    return q;
}

CtxPtr FieldCtx::reals() {
    static CtxPtr r = [] {
        auto c = std::shared_ptr<FieldCtx>(new FieldCtx());
        c->tag_ = FieldTag::Reals;
        return CtxPtr(c);
    }();
    return r;
}

CtxPtr FieldCtx::prime_field(uint64_t p) {
    if (p < 3) throw std::domain_error("prime_field: characteristic != 2 required");
    auto c = std::shared_ptr<FieldCtx>(new FieldCtx());
    c->tag_ = FieldTag::PrimeField;
    c->prime_ = p;
    return c;
}

CtxPtr FieldCtx::function_field(const RingPtr& vars) {
    auto c = std::shared_ptr<FieldCtx>(new FieldCtx());
    c->tag_ = FieldTag::FunctionField;
    c->base_ = rationals();
    c->ring_ = vars;
    return c;
}

CtxPtr FieldCtx::quad_ext(const CtxPtr& base, const RatFunc& d) {
    auto c = std::shared_ptr<FieldCtx>(new FieldCtx());
    c->tag_ = FieldTag::QuadExt;
    c->base_ = base;
    c->quad_d_ = d;
    if (d.is_constant() && is_square(d.constant_value()))
        throw std::domain_error("quad_ext: d is a square in the base");
    return c;
}

CtxPtr FieldCtx::residue_field(const CtxPtr& ff, const MPoly& pi) {
    if (!ff || ff->tag() != FieldTag::FunctionField)
        throw std::domain_error("residue_field: base must be a function field");
    auto c = std::shared_ptr<FieldCtx>(new FieldCtx());
    c->tag_ = FieldTag::ResidueField;
    c->base_ = ff;
    c->ring_ = ff->ring();  // representatives live in the function-field ring
    c->modulus_ = pi;
    return c;
}

bool FieldCtx::equals(const FieldCtx& o) const {
    if (tag_ != o.tag_) return false;
    switch (tag_) {
        case FieldTag::Rationals:
        case FieldTag::Reals:
            return true;
        case FieldTag::PrimeField:
            return prime_ == o.prime_;
        case FieldTag::FunctionField:
            return ring_->same_vars(*o.ring_);
        case FieldTag::QuadExt:
            return base_->equals(*o.base_) && quad_d_ == o.quad_d_;
        case FieldTag::ResidueField:
            return base_->equals(*o.base_) && modulus_ == o.modulus_;
    }
    return false;
}

// ---- Atom ---------------------------------------------------------------------

bool Atom::operator==(const Atom& o) const {
    if (kind != o.kind) return false;
    if (kind == Prime) return p == o.p;
    if (kind == Poly) return f == o.f;
    return true;
}

bool Atom::operator<(const Atom& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (kind == Prime) return p < o.p;
    if (kind == Poly) return f < o.f;
    return false;
}

std::string Atom::str() const {
    switch (kind) {
        case MinusOne:
            return "-1";
        case Prime:
            return p.get_str();
        case Poly:
            return f.str();
    }
    return "?";
}

// ---- SquareClass ----------------------------------------------------------------

SquareClass SquareClass::one(const CtxPtr& ctx) {
    SquareClass s;
    s.ctx_ = ctx;
    return s;
}

SquareClass SquareClass::from_atoms(const CtxPtr& ctx, std::vector<Atom> atoms) {
    // cancel pairs
    std::sort(atoms.begin(), atoms.end());
    std::vector<Atom> out;
    for (auto& a : atoms) {
        if (!out.empty() && out.back() == a)
            out.pop_back();
        else
            out.push_back(a);
    }
    SquareClass s;
    s.ctx_ = ctx;
    s.atoms_ = std::move(out);
    return s;
}

SquareClass SquareClass::from_rat(const CtxPtr& ctx, const Rat& value) {
    if (sgn(value) == 0) throw zero_element("square class of zero");
    std::vector<Atom> atoms;
    if (sgn(value) < 0) atoms.push_back(Atom::minus_one());
    for (auto& [p, m] : factor_integer(Int(value.get_num() * value.get_den())))
        if (m % 2) atoms.push_back(Atom::prime(p));
    return from_atoms(ctx, std::move(atoms));
}

SquareClass SquareClass::from_poly(const CtxPtr& ctx, const MPoly& value) {
    return from_ratfunc(ctx, RatFunc(value));
}

SquareClass SquareClass::from_ratfunc(const CtxPtr& ctx, const RatFunc& value) {
    if (value.is_zero()) throw zero_element("square class of zero");
    if (value.is_constant()) return from_rat(ctx, value.constant_value());
    if (!ctx || ctx->tag() != FieldTag::FunctionField) {
        if (ctx && ctx->tag() == FieldTag::ResidueField) return opaque_rep(ctx, value);
        throw mixed_context("square class: nonconstant value over a number context");
    }
    // n/d ~ n*d mod squares; factor the product
    auto fac = factor_mpoly(value.num() * value.den());
    std::vector<Atom> atoms;
    Rat unit = fac.unit;
    if (sgn(unit) < 0) atoms.push_back(Atom::minus_one());
    for (auto& [p, m] : factor_integer(Int(unit.get_num() * unit.get_den())))
        if (m % 2) atoms.push_back(Atom::prime(p));
    for (auto& [g, m] : fac.factors)
        if (m % 2) atoms.push_back(Atom::poly(g));
    return from_atoms(ctx, std::move(atoms));
}

SquareClass SquareClass::opaque_rep(const CtxPtr& ctx, const RatFunc& rep) {
    if (rep.is_zero()) throw zero_element("square class of zero");
    SquareClass s;
    s.ctx_ = ctx;
    s.opaque_ = true;
    s.rep_ = rep;
    return s;
}

bool SquareClass::is_negative_rational() const {
    for (auto& a : atoms_)
        if (a.kind == Atom::MinusOne) return true;
    return false;
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
    if (!same_ctx(ctx_, o.ctx_)) throw mixed_context("square class product: different contexts");
    if (opaque_ || o.opaque_) return opaque_rep(ctx_, value_func() * o.value_func());
    std::vector<Atom> atoms = atoms_;
    atoms.insert(atoms.end(), o.atoms_.begin(), o.atoms_.end());
    return from_atoms(ctx_, std::move(atoms));
}

bool SquareClass::operator==(const SquareClass& o) const {
    if (opaque_ != o.opaque_) return false;
    if (opaque_) return rep_ == o.rep_;
    return atoms_ == o.atoms_;
}

bool SquareClass::operator<(const SquareClass& o) const {
    if (opaque_ != o.opaque_) return opaque_ < o.opaque_;
    if (opaque_) return rep_.num() < o.rep_.num();
    return std::lexicographical_compare(atoms_.begin(), atoms_.end(), o.atoms_.begin(),
                                        o.atoms_.end());
}

Int SquareClass::rational_value() const {
    Int v(1);
    for (auto& a : atoms_) {
        if (a.kind == Atom::MinusOne)
            v = -v;
        else if (a.kind == Atom::Prime)
            v *= a.p;
        else
            throw std::logic_error("rational_value: polynomial atom present");
    }
    return v;
}

RatFunc SquareClass::value_func() const {
    if (opaque_) return rep_;
    RingPtr ring = ctx_ && ctx_->ring() ? ctx_->ring() : nullptr;
    if (!ring) {
        RingPtr unit_ring = PolyRing::make({});
        return RatFunc(MPoly::constant(unit_ring, Rat(rational_value())));
    }
    MPoly acc = MPoly::constant(ring, Rat(1));
    Rat c(1);
    for (auto& a : atoms_) {
        if (a.kind == Atom::MinusOne)
            c = -c;
        else if (a.kind == Atom::Prime)
            c *= Rat(a.p);
        else
            acc = acc * a.f;
    }
    return RatFunc(acc.scaled(c));
}

std::string SquareClass::str() const {
    if (opaque_) return rep_.str();
    if (atoms_.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < atoms_.size(); ++i) {
        if (i) s += "*";
        bool paren = atoms_[i].kind == Atom::Poly && atoms_[i].f.term_count() > 1;
        s += paren ? "(" + atoms_[i].str() + ")" : atoms_[i].str();
    }
    return s;
}

SquareClass square_class_normalize(const CtxPtr& ctx, const Rat& e) {
    return SquareClass::from_rat(ctx, e);
}

SquareClass square_class_normalize(const CtxPtr& ctx, const RatFunc& e) {
    return SquareClass::from_ratfunc(ctx, e);
}

}  // namespace qsb
