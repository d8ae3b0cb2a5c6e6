#pragma once

#include <vector>

#include "qsb/factor.hpp"
#include "qsb/field_ctx.hpp"

namespace qsb {

struct zero_element : std::domain_error {
    using std::domain_error::domain_error;
};
struct mixed_context : std::domain_error {
    using std::domain_error::domain_error;
};

// A canonical generator of F*/F*^2: -1, a rational prime, or an irreducible
// primitive integer polynomial with positive leading coefficient.
struct Atom {
    enum Kind { MinusOne = 0, Prime = 1, Poly = 2 };
    Kind kind = MinusOne;
    Int p;     // Prime
    MPoly f;   // Poly

    static Atom minus_one() { return Atom{}; }
    static Atom prime(Int q) { return Atom{Prime, std::move(q), MPoly()}; }
    static Atom poly(MPoly g) { return Atom{Poly, Int(), std::move(g)}; }

    bool operator==(const Atom& o) const;
    bool operator<(const Atom& o) const;
    std::string str() const;
};

// Element of F*/F*^2 in fully factored canonical form (a set of atoms, each
// appearing once). Residue-field elements, which have no such factorization,
// are carried as opaque representatives instead.
class SquareClass {
public:
    SquareClass() = default;

    static SquareClass one(const CtxPtr& ctx);
    static SquareClass from_rat(const CtxPtr& ctx, const Rat& value);
    static SquareClass from_ratfunc(const CtxPtr& ctx, const RatFunc& value);
    static SquareClass from_poly(const CtxPtr& ctx, const MPoly& value);
    static SquareClass from_atoms(const CtxPtr& ctx, std::vector<Atom> atoms);
    // residue-field element kept as a representative (class equality may be
    // undecidable there; see opaque())
    static SquareClass opaque_rep(const CtxPtr& ctx, const RatFunc& rep);

    const CtxPtr& ctx() const { return ctx_; }
    bool opaque() const { return opaque_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const RatFunc& rep() const { return rep_; }

    bool is_one() const { return !opaque_ && atoms_.empty(); }
    // sign at the real place; requires a constant-sign representative (always
    // true over Q; over function fields only when the class is constant)
    bool is_negative_rational() const;

    SquareClass operator*(const SquareClass& o) const;  // symmetric difference
    bool operator==(const SquareClass& o) const;
    bool operator!=(const SquareClass& o) const { return !(*this == o); }
    bool operator<(const SquareClass& o) const;

    // squarefree integer representative (ctx = Q)
    Int rational_value() const;
    // representative as a rational function over the ctx ring
    RatFunc value_func() const;

    std::string str() const;

private:
    CtxPtr ctx_;
    bool opaque_ = false;
    std::vector<Atom> atoms_;
    RatFunc rep_;
};

// spec surface: canonical square-class representative (squarefree part over Q)
SquareClass square_class_normalize(const CtxPtr& ctx, const Rat& e);
SquareClass square_class_normalize(const CtxPtr& ctx, const RatFunc& e);

}  // namespace qsb
