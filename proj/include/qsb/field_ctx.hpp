#pragma once

#include <memory>

#include "qsb/ratfunc.hpp"

namespace qsb {

enum class FieldTag { Rationals, Reals, PrimeField, FunctionField, QuadExt, ResidueField };

class FieldCtx;
using CtxPtr = std::shared_ptr<const FieldCtx>;

// Fields the calculus runs over: Q, R, F_p (p odd), rational function fields
// over Q, quadratic extensions, and residue fields of curve valuations.
// Characteristic 2 is rejected everywhere.
class FieldCtx {
public:
    static CtxPtr rationals();
    static CtxPtr reals();
    static CtxPtr prime_field(uint64_t p);
    static CtxPtr function_field(const RingPtr& vars);
    // discriminant extension base(sqrt(d)); d supplied as a representative
    static CtxPtr quad_ext(const CtxPtr& base, const RatFunc& d);
    static CtxPtr residue_field(const CtxPtr& function_field, const MPoly& pi);

    FieldTag tag() const { return tag_; }
    uint64_t prime() const { return prime_; }
    const CtxPtr& base() const { return base_; }
    const RingPtr& ring() const { return ring_; }
    const RatFunc& quad_d() const { return quad_d_; }
    const MPoly& modulus() const { return modulus_; }

    bool equals(const FieldCtx& o) const;

private:
    FieldCtx() = default;
    FieldTag tag_ = FieldTag::Rationals;
    uint64_t prime_ = 0;
    CtxPtr base_;
    RingPtr ring_;
    RatFunc quad_d_;
    MPoly modulus_;
};

inline bool same_ctx(const CtxPtr& a, const CtxPtr& b) {
    return a && b && a->equals(*b);
}

}  // namespace qsb
