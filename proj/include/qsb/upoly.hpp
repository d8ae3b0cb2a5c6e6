#pragma once

#include <utility>
#include <vector>

#include "qsb/numeric.hpp"

namespace qsb {

// ---- dense univariate over Q -------------------------------------------------
// Coefficient vectors are kept trimmed: back() != 0 unless empty (the zero poly).

using UPoly = std::vector<Rat>;

UPoly up_trim(UPoly f);
int up_deg(const UPoly& f);  // -1 for zero
UPoly up_add(const UPoly& a, const UPoly& b);
UPoly up_sub(const UPoly& a, const UPoly& b);
UPoly up_mul(const UPoly& a, const UPoly& b);
UPoly up_scale(const UPoly& a, const Rat& c);
UPoly up_monic(const UPoly& a);
std::pair<UPoly, UPoly> up_divmod(const UPoly& a, const UPoly& b);
UPoly up_gcd(const UPoly& a, const UPoly& b);  // monic
UPoly up_derivative(const UPoly& a);
Rat up_eval(const UPoly& a, const Rat& x);
Rat up_resultant(const UPoly& a, const UPoly& b);
UPoly up_pow_mod(const UPoly& a, const Int& e, const UPoly& mod);
UPoly up_rem(const UPoly& a, const UPoly& mod);

// ---- dense univariate over Z ---------------------------------------------------

using ZPoly = std::vector<Int>;

ZPoly zp_trim(ZPoly f);
int zp_deg(const ZPoly& f);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
Int zp_content(const ZPoly& f);
ZPoly zp_primitive(const ZPoly& f);  // positive leading coefficient
// exact division in Z[x]; nullopt if not divisible
std::optional<ZPoly> zp_divexact(const ZPoly& a, const ZPoly& b);
UPoly zp_to_up(const ZPoly& f);
// clears denominators; returns primitive part with positive lead
ZPoly up_to_zp_primitive(const UPoly& f);

// ---- dense univariate over F_p ---------------------------------------------------

struct FpPoly {
    Fp fp;
    std::vector<uint64_t> c;

    explicit FpPoly(const Fp& f) : fp(f) {}
    FpPoly(const Fp& f, std::vector<uint64_t> coeffs) : fp(f), c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int deg() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
    uint64_t lead() const { return c.back(); }
};

FpPoly fp_from_zpoly(const ZPoly& f, const Fp& fp);
FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_scale(const FpPoly& a, uint64_t k);
FpPoly fp_monic(const FpPoly& a);
std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b);
FpPoly fp_gcd(const FpPoly& a, const FpPoly& b);  // monic
// g = gcd(a,b) together with s,t: s*a + t*b = g
struct FpBezout {
    FpPoly g, s, t;
};
FpBezout fp_ext_gcd(const FpPoly& a, const FpPoly& b);
FpPoly fp_pow_mod(const FpPoly& a, const Int& e, const FpPoly& mod);
FpPoly fp_derivative(const FpPoly& a);
uint64_t fp_eval(const FpPoly& a, uint64_t x);

// monic irreducible factors with multiplicity; deterministic given seed
std::vector<std::pair<FpPoly, unsigned>> fp_factor(const FpPoly& f, uint64_t seed);
// roots in F_p (each once; multiplicity ignored)
std::vector<uint64_t> fp_roots(const FpPoly& f, uint64_t seed);

}  // namespace qsb
