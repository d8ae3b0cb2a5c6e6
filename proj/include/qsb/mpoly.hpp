#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsb/numeric.hpp"

namespace qsb {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// Ordered list of variable names; shared immutably by all polynomials over it.
class PolyRing {
public:
    static RingPtr make(std::vector<std::string> vars);

    size_t nvars() const { return vars_.size(); }
    const std::string& var(size_t i) const { return vars_.at(i); }
    const std::vector<std::string>& vars() const { return vars_; }
    std::optional<size_t> index_of(const std::string& name) const;
    bool same_vars(const PolyRing& other) const { return vars_ == other.vars_; }

private:
    explicit PolyRing(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    std::vector<std::string> vars_;
};

using Mono = std::vector<uint32_t>;

inline uint32_t mono_degree(const Mono& m) {
    uint32_t d = 0;
    for (auto e : m) d += e;
    return d;
}

// Graded lexicographic: total degree first, then lex with the first variable
// strongest. Fixed as the canonical term order for serialization and hashing.
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

class MPoly {
public:
    using TermMap = std::map<Mono, Rat, GrlexLess>;

    MPoly() = default;  // zero over a null ring; only for containers
    explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static MPoly constant(RingPtr ring, const Rat& c);
    static MPoly variable(RingPtr ring, size_t i);
    static MPoly monomial(RingPtr ring, Mono m, const Rat& c);

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // requires is_constant
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    int total_degree() const;  // -1 for zero
    int degree_in(size_t var) const;
    bool is_homogeneous() const;
    bool depends_on(size_t var) const;
    std::vector<size_t> effective_vars() const;

    const Rat& coeff(const Mono& m) const;  // zero if absent
    void set_coeff(const Mono& m, const Rat& c);

    // leading term under grlex (requires nonzero)
    const std::pair<const Mono, Rat>& leading() const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }
    // total order compatible with the canonical term order; used to sort factor lists
    bool operator<(const MPoly& o) const;

    MPoly scaled(const Rat& c) const;
    MPoly pow(unsigned e) const;
    MPoly derivative(size_t var) const;

    // full substitution: images[i] replaces variable i; all images share a ring
    MPoly substituted(const std::vector<MPoly>& images) const;
    // set one variable to a constant (result stays in the same ring)
    MPoly with_var_set(size_t var, const Rat& value) const;
    // project into a smaller ring dropping `var` (requires degree_in(var)==0
    // unless setting it to 1 first via dehomogenize)
    MPoly dehomogenized(size_t var) const;  // var := 1, then drop it
    MPoly lifted(const RingPtr& big, const std::vector<size_t>& where) const;
    // homogenize with respect to `var` (which must not occur) to total degree d
    MPoly homogenized(size_t var, unsigned d) const;

    Rat eval(const std::vector<Rat>& point) const;
    uint64_t eval_mod(const std::vector<uint64_t>& point, const Fp& fp) const;

    // dense coefficient list in `var`: c[k] is the coefficient of var^k
    std::vector<MPoly> coeffs_in(size_t var) const;
    static MPoly from_coeffs_in(const RingPtr& ring, size_t var, const std::vector<MPoly>& cs);

    // integer-primitive scaling: f = unit * primitive where primitive has
    // coprime integer coefficients and positive leading coefficient
    struct Primitive;
    Primitive primitive_scaled() const;  // requires nonzero

    std::string str() const;

private:
    void trim(const Mono& m);  // drop a zero coefficient
    RingPtr ring_;
    TermMap terms_;
    friend MPoly mul_term(const MPoly&, const Mono&, const Rat&);
};

struct MPoly::Primitive {
    Rat unit;
    MPoly poly;
};

MPoly mul_term(const MPoly& f, const Mono& m, const Rat& c);

// exact division; nullopt when g does not divide f
std::optional<MPoly> divexact(const MPoly& f, const MPoly& g);

// gcd over Q[x...], normalized integer-primitive with positive leading coefficient
MPoly gcd(const MPoly& f, const MPoly& g);

// product of the distinct irreducible factors (unit-normalized); f nonzero
MPoly squarefree_part(const MPoly& f);

// resultant of f and g with respect to `var` (an element not involving var)
MPoly resultant(const MPoly& f, const MPoly& g, size_t var);

// ---- parsing ----------------------------------------------------------------

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(size_t pos, const std::string& what)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Signed sums of terms `coeff*var^e*...` with rational coefficients; whitespace
// is ignored; variables must come from the ring's declared list.
MPoly parse_poly(const RingPtr& ring, const std::string& text);

}  // namespace qsb
