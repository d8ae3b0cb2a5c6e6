#pragma once

#include <optional>

#include "qsb/square_class.hpp"

namespace qsb {

struct mixed_degree : std::domain_error {
    using std::domain_error::domain_error;
};
struct wrong_degree : std::domain_error {
    using std::domain_error::domain_error;
};
struct not_a_valuation : std::domain_error {
    using std::domain_error::domain_error;
};
struct residue_field_unsupported : std::domain_error {
    using std::domain_error::domain_error;
};

// cup product of square classes, degree 1..3
struct Symbol {
    std::vector<SquareClass> slots;

    bool operator==(const Symbol& o) const { return slots == o.slots; }
    bool operator<(const Symbol& o) const {
        return std::lexicographical_compare(slots.begin(), slots.end(), o.slots.begin(),
                                            o.slots.end());
    }
    std::string str() const;
};

// formal mod-2 sum of symbols of a fixed degree over a fixed context
class SymbolSum {
public:
    SymbolSum() = default;
    SymbolSum(CtxPtr ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {}

    static SymbolSum zero(const CtxPtr& ctx, int degree) { return SymbolSum(ctx, degree); }
    static SymbolSum single(const CtxPtr& ctx, std::vector<SquareClass> slots);

    const CtxPtr& ctx() const { return ctx_; }
    int degree() const { return degree_; }
    const std::vector<Symbol>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_symbol(std::vector<SquareClass> slots);  // unnormalized insert
    SymbolSum operator+(const SymbolSum& o) const;    // mod-2 sum (then normalize)

    bool operator==(const SymbolSum& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

    std::string str() const;

private:
    friend SymbolSum symbol_sum_normalize(const SymbolSum&);
    CtxPtr ctx_;
    int degree_ = 0;
    std::vector<Symbol> terms_;
    bool normalized_ = false;
};

// Fixed point of: multilinear expansion of every slot into its atoms,
// (..,a,a,..) -> (..,-1,a,..), symbols with a slot equal to 1 dropped,
// slot sorting, and mod-2 cancellation. Canonical and order-independent.
SymbolSum symbol_sum_normalize(const SymbolSum& s);

// ---- places -------------------------------------------------------------------

struct Place {
    enum Kind { FinitePrime, RealPlace, CurveValuation, LineAtInfinity } kind;
    Int p;     // FinitePrime
    MPoly pi;  // CurveValuation: irreducible primitive, positive lead

    static Place finite(Int prime) { return {FinitePrime, std::move(prime), MPoly()}; }
    static Place real() { return {RealPlace, Int(), MPoly()}; }
    static Place curve(MPoly f) { return {CurveValuation, Int(), std::move(f)}; }
    static Place infinity() { return {LineAtInfinity, Int(), MPoly()}; }

    std::string str() const;
};

// ---- local and global decisions over Q -----------------------------------------

// Hilbert symbol (a,b)_v in {+1,-1}; v finite (any prime, including 2) or real
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

// class of a normalized degree-2 sum in Br(Q)[2]: trivial iff every local
// invariant vanishes (quadratic reciprocity makes the check finite)
bool is_trivial_H2_Q(const SymbolSum& s);

// degree-3 triviality over Q: detected by the real place (Meyer's theorem via
// the associated Pfister form); a normalized sum is trivial iff an even number
// of its symbols have all slots negative
bool is_trivial_H3_Q(const SymbolSum& s);

// ---- residues -------------------------------------------------------------------

// residue (tame symbol) of a normalized sum at a discrete valuation; degree
// drops by one. Degree-2 sums are supported at every place kind; degree-3
// sums at CurveValuation/FinitePrime (where at most one slot meets the
// uniformizer after normalization).
SymbolSum tame_residue(const SymbolSum& s, const Place& v);

// residue field context of a place over the given field
CtxPtr residue_ctx(const CtxPtr& ctx, const Place& v);

// valuation of a square class at a place of a function field (mod 2)
int place_valuation(const SquareClass& c, const Place& v);

// corestriction kappa(pi)*/sq -> Q*/sq for a finite place of Q(t): the field
// norm of a representative, computed by a resultant
SquareClass corestrict_to_Q(const SquareClass& residue_class, const MPoly& pi);

// Faddeev reciprocity over Q(t): the corestrictions of the residues at all
// places of P^1 (finite and infinite) multiply to the trivial class
bool faddeev_reciprocity_check(const SymbolSum& s);

}  // namespace qsb
