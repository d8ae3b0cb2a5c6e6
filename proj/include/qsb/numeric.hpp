#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qsb {

using Int = mpz_class;
using Rat = mpq_class;

// Exact rational with canonicalized representation (gcd 1, positive denominator).
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline int sign_of(const Rat& r) { return sgn(r); }
inline int sign_of(const Int& n) { return sgn(n); }

Rat parse_rat(const std::string& s);  // "a/b" or "a"

// ---- integer squares and factorization -------------------------------------

bool is_square(const Int& n, Int* root = nullptr);
bool is_square(const Rat& q);

// Prime factorization of |n| (n != 0). Trial division, then BPSW-certified
// Pollard rho for anything that survives.
std::map<Int, unsigned> factor_integer(const Int& n);

// sign(q) * product of primes appearing to odd order in q.
Int squarefree_part(const Rat& q);

bool is_probable_prime(const Int& n);
Int next_prime_above(const Int& n);

// Legendre symbol (a|p) for odd prime p: +1, -1, or 0.
int legendre(const Int& a, const Int& p);

// ---- word-size prime field --------------------------------------------------

// Arithmetic mod an odd prime p < 2^31.
struct Fp {
    uint64_t p;

    explicit Fp(uint64_t prime) : p(prime) {
        if (prime < 3 || prime >= (1ull << 31)) throw std::domain_error("Fp: prime out of range");
    }

    uint64_t add(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p ? s - p : s; }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t mul(uint64_t a, uint64_t b) const { return (unsigned __int128)a * b % p; }
    uint64_t neg(uint64_t a) const { return a ? p - a : 0; }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const;
    // a reduced from an exact rational; throws qsb::bad_prime if the denominator
    // vanishes mod p.
    uint64_t from_rat(const Rat& q) const;
    uint64_t from_int(const Int& n) const;
    bool is_square(uint64_t a) const;  // 0 counts as square
};

struct bad_prime : std::domain_error {
    using std::domain_error::domain_error;
};

// Deterministic stream of odd primes used for modular checks; starts at `start`.
std::vector<uint64_t> modular_primes(uint64_t start, int count);

// ---- seeded randomness ------------------------------------------------------

class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}
    uint64_t u64() { return gen_(); }
    // inclusive bounds
    long rand_long(long lo, long hi);
    Int rand_int(const Int& lo, const Int& hi);
    // uniform over {lo..hi} \ {0}
    long rand_nonzero(long lo, long hi);

private:
    std::mt19937_64 gen_;
};

}  // namespace qsb
