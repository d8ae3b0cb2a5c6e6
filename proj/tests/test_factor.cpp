#include "doctest.h"

#include "qsb/factor.hpp"

using namespace qsb;

namespace {
RingPtr ring2() { return PolyRing::make({"x", "y"}); }

MPoly multiply_back(const MFactorization& f, const RingPtr& ring) { return f.product(ring); }
}  // namespace

TEST_CASE("univariate factorization over Q") {
    // (2x-3)(x^2+x+1)(x-1)^2
    UPoly f = up_mul(up_mul(UPoly{Rat(-3), Rat(2)}, UPoly{Rat(1), Rat(1), Rat(1)}),
                     up_mul(UPoly{Rat(-1), Rat(1)}, UPoly{Rat(-1), Rat(1)}));
    auto fac = factor_univ_q(f);
    CHECK(fac.factors.size() == 3);
    unsigned total = 0;
    UPoly back{fac.unit};
    for (auto& [z, m] : fac.factors) {
        total += m * (unsigned)zp_deg(z);
        for (unsigned i = 0; i < m; ++i) back = up_mul(back, zp_to_up(z));
    }
    CHECK(total == (unsigned)up_deg(f));
    CHECK(back == f);

    auto roots = rational_roots(f);
    CHECK(roots == std::vector<Rat>{Rat(1), make_rat(3, 2)});

    // cyclotomic-style irreducible stays whole
    CHECK(zpoly_is_irreducible_q(ZPoly{Int(1), Int(1), Int(1), Int(1), Int(1)}));
    CHECK(zpoly_is_irreducible_q(ZPoly{Int(1), Int(0), Int(1)}));  // x^2+1
    CHECK(!zpoly_is_irreducible_q(ZPoly{Int(-1), Int(0), Int(1)}));
}

TEST_CASE("univariate: degree-8 stress with repeated and close factors") {
    // (x^3-2)(x^3-2x-1)(x+5)^2 -- note x^3-2x-1 = (x+1)(x^2-x-1)
    UPoly a{Rat(-2), Rat(0), Rat(0), Rat(1)};
    UPoly b{Rat(-1), Rat(-2), Rat(0), Rat(1)};
    UPoly c{Rat(5), Rat(1)};
    UPoly f = up_mul(a, up_mul(b, up_mul(c, c)));
    auto fac = factor_univ_q(f);
    UPoly back{fac.unit};
    for (auto& [z, m] : fac.factors)
        for (unsigned i = 0; i < m; ++i) back = up_mul(back, zp_to_up(z));
    CHECK(back == f);
    // x^3-2 irreducible, x+1, x^2-x-1, (x+5)^2
    CHECK(fac.factors.size() == 4);
}

TEST_CASE("bivariate factorization: spec examples") {
    auto R = ring2();
    MPoly x = MPoly::variable(R, 0), y = MPoly::variable(R, 1);

    SUBCASE("x^2 - y^2 splits into the two lines") {
        auto fac = factor_mpoly(x * x - y * y);
        REQUIRE(fac.factors.size() == 2);
        CHECK(fac.factors[0].second == 1);
        CHECK(fac.factors[1].second == 1);
        CHECK(multiply_back(fac, R) == x * x - y * y);
        for (auto& [g, m] : fac.factors) CHECK(g.total_degree() == 1);
    }

    SUBCASE("x^2 + y^2 is irreducible over Q") {
        auto fac = factor_mpoly(x * x + y * y);
        REQUIRE(fac.factors.size() == 1);
        CHECK(fac.factors[0].second == 1);
        CHECK(fac.factors[0].first == x * x + y * y);
    }

    SUBCASE("(x^2+y+1)^2 (x-3): multiplicities recovered") {
        MPoly q = x * x + y + MPoly::constant(R, Rat(1));
        MPoly lin = x - MPoly::constant(R, Rat(3));
        MPoly f = q * q * lin;

        // oracle: squarefree part should drop exactly one power of q
        MPoly sf = squarefree_part(f);
        CHECK(sf == (q * lin).primitive_scaled().poly);

        auto fac = factor_mpoly(f);
        REQUIRE(fac.factors.size() == 2);
        CHECK(multiply_back(fac, R) == f);
        bool saw_q = false, saw_lin = false;
        for (auto& [g, m] : fac.factors) {
            if (g == q) {
                CHECK(m == 2);
                saw_q = true;
            }
            if (g == lin) {
                CHECK(m == 1);
                saw_lin = true;
            }
        }
        CHECK(saw_q);
        CHECK(saw_lin);
    }

    SUBCASE("three essential variables are rejected") {
        auto R3 = PolyRing::make({"x", "y", "z"});
        MPoly g = MPoly::variable(R3, 0) + MPoly::variable(R3, 1) * MPoly::variable(R3, 2);
        CHECK_THROWS_AS(factor_mpoly(g + g * g), unsupported_arity);
        // ... but a pure monomial in three variables is fine
        MPoly mono = MPoly::variable(R3, 0) * MPoly::variable(R3, 1) * MPoly::variable(R3, 2);
        auto fac = factor_mpoly(mono.scaled(Rat(6)));
        CHECK(fac.factors.size() == 3);
        CHECK(fac.unit == Rat(6));
    }
}

TEST_CASE("bivariate factorization properties on random products") {
    auto R = ring2();
    MPoly x = MPoly::variable(R, 0), y = MPoly::variable(R, 1);
    Rng rng(11);
    auto rnd = [&](int deg) {
        MPoly f(R);
        while (f.is_zero()) {
            for (int i = 0; i <= deg; ++i)
                for (int j = 0; i + j <= deg; ++j)
                    f += MPoly::monomial(R, Mono{(uint32_t)i, (uint32_t)j},
                                         Rat(rng.rand_long(-4, 4)));
        }
        return f;
    };
    for (int t = 0; t < 12; ++t) {
        MPoly f = rnd(2) * rnd(2) * rnd(1);
        if (f.is_zero()) continue;
        auto fac = factor_mpoly(f);
        CHECK(multiply_back(fac, R) == f);
        // reductions mod degree-preserving primes remain valid factorizations
        int checked = 0;
        for (uint64_t p : modular_primes(101, 10)) {
            if (checked >= 5) break;
            Fp fp(p);
            try {
                std::vector<uint64_t> pt{rng.u64() % p, rng.u64() % p};
                uint64_t lhs = f.eval_mod(pt, fp);
                uint64_t rhs = fp.from_rat(fac.unit);
                for (auto& [g, m] : fac.factors)
                    for (unsigned i = 0; i < m; ++i) rhs = fp.mul(rhs, g.eval_mod(pt, fp));
                CHECK(lhs == rhs);
                ++checked;
            } catch (const bad_prime&) {
                continue;
            }
        }
        CHECK(checked == 5);
    }
}

TEST_CASE("homogeneous sextic factorization via dehomogenization") {
    auto R3 = PolyRing::make({"x0", "x1", "x2"});
    MPoly x0 = MPoly::variable(R3, 0), x1 = MPoly::variable(R3, 1), x2 = MPoly::variable(R3, 2);
    MPoly conic = x0 * x0 + x1 * x2;
    MPoly quartic = x0.pow(4) + x1.pow(4) + x2.pow(4);
    MPoly sextic = conic * quartic;
    // dehomogenize by x0, factor in two variables, then match degrees
    MPoly dh = sextic.dehomogenized(0);
    auto fac = factor_mpoly(dh);
    CHECK(fac.factors.size() == 2);
    unsigned degs = 0;
    for (auto& [g, m] : fac.factors) degs += g.total_degree() * m;
    CHECK(degs == 6);
}
