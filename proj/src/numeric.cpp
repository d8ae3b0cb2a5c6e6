#include "qsb/numeric.hpp"

#include <algorithm>

namespace qsb {

Rat parse_rat(const std::string& s) {
    auto bad = [&]() { return std::invalid_argument("parse_rat: bad rational '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return make_rat(Int(s), Int(1));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

bool is_square(const Int& n, Int* root) {
    if (sgn(n) < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        if (root) {
            Int r;
            mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
            *root = r;
        }
        return true;
    }
    return false;
}

bool is_square(const Rat& q) {
    return sgn(q) >= 0 && is_square(Int(q.get_num())) && is_square(Int(q.get_den()));
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int next_prime_above(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

namespace {

Int pollard_rho(const Int& n, unsigned long c0) {
    // n odd composite, not a prime power handled by caller loop
    Int x(2), y(2), d(1), c(c0);
    auto f = [&](const Int& v) { return Int((v * v + c) % n); };
    while (d == 1) {
        x = f(x);
        y = f(f(y));
        Int diff = x - y;
        if (diff == 0) return 0;  // cycle without factor; caller retries with new c
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    return d == n ? Int(0) : d;
}

void factor_rec(Int n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    // perfect power?
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned e = 2; e <= mpz_sizeinbase(n.get_mpz_t(), 2); ++e) {
            Int r;
            if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                std::map<Int, unsigned> sub;
                factor_rec(r, sub);
                for (auto& [p, m] : sub) out[p] += m * e;
                return;
            }
        }
    }
    Int d = 0;
    for (unsigned long c = 1; d == 0; ++c) d = pollard_rho(n, c);
    factor_rec(d, out);
    factor_rec(Int(n / d), out);
}

}  // namespace

std::map<Int, unsigned> factor_integer(const Int& n) {
    if (n == 0) throw std::domain_error("factor_integer: zero");
    Int m = abs(n);
    std::map<Int, unsigned> out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
        while (m % p == 0) {
            out[Int(p)] += 1;
            m /= p;
        }
    }
    Int p(53);
    while (m > 1 && p * p <= m && p < 100000) {
        while (m % p == 0) {
            out[p] += 1;
            m /= p;
        }
        p += 2;
    }
    if (m > 1) factor_rec(m, out);
    return out;
}

Int squarefree_part(const Rat& q) {
    if (sgn(q) == 0) throw std::domain_error("squarefree_part: zero");
    Int v(1);
    // num*den differs from q by the square den^2
    for (auto& [p, m] : factor_integer(Int(q.get_num() * q.get_den())))
        if (m % 2) v *= p;
    return sgn(q) < 0 ? Int(-v) : v;
}

int legendre(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

uint64_t Fp::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t Fp::inv(uint64_t a) const {
    a %= p;
    if (a == 0) throw std::domain_error("Fp::inv: zero");
    return pow(a, p - 2);
}

uint64_t Fp::from_int(const Int& n) const {
    Int r = n % Int((unsigned long)p);
    if (sgn(r) < 0) r += Int((unsigned long)p);
    return r.get_ui();
}

uint64_t Fp::from_rat(const Rat& q) const {
    uint64_t den = from_int(Int(q.get_den()));
    if (den == 0) throw bad_prime("denominator vanishes mod p");
    return mul(from_int(Int(q.get_num())), inv(den));
}

bool Fp::is_square(uint64_t a) const {
    a %= p;
    if (a == 0) return true;
    return pow(a, (p - 1) / 2) == 1;
}

std::vector<uint64_t> modular_primes(uint64_t start, int count) {
    std::vector<uint64_t> out;
    Int p(static_cast<unsigned long>(start));
    while ((int)out.size() < count) {
        p = next_prime_above(p);
        if (p == 2) continue;
        out.push_back(p.get_ui());
    }
    return out;
}

long Rng::rand_long(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(gen_);
}

Int Rng::rand_int(const Int& lo, const Int& hi) {
    Int span = hi - lo + 1;
    // rejection-free: span assumed to fit in 64 bits for test usage
    return lo + Int(static_cast<unsigned long>(u64() % span.get_ui()));
}

long Rng::rand_nonzero(long lo, long hi) {
    long v = 0;
    do {
        v = rand_long(lo, hi);
    } while (v == 0);
    return v;
}

}  // namespace qsb
