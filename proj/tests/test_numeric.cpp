#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qsb/numeric.hpp"

using namespace qsb;

TEST_CASE("rational parsing and canonical form") {
    CHECK(parse_rat("3/6") == make_rat(1, 2));
    CHECK(parse_rat("-4/2") == make_rat(-2, 1));
    CHECK(parse_rat("7") == Rat(7));
    CHECK_THROWS(parse_rat("1/0"));
    CHECK_THROWS(parse_rat("x"));
}

TEST_CASE("integer factorization and squarefree parts") {
    auto f = factor_integer(Int(2 * 2 * 3 * 49));
    CHECK(f[Int(2)] == 2);
    CHECK(f[Int(3)] == 1);
    CHECK(f[Int(7)] == 2);
    CHECK(squarefree_part(Rat(18)) == 2);
    CHECK(squarefree_part(Rat(49)) == 1);
    CHECK(squarefree_part(Rat(-50)) == -2);
    CHECK(squarefree_part(make_rat(2, 3)) == 6);  // 2/3 ~ 6 mod squares

    // moderately large semiprime exercises the rho path
    Int n = Int(1000003) * Int(1000033);
    auto g = factor_integer(n);
    CHECK(g.size() == 2);
    CHECK(g[Int(1000003)] == 1);
}

TEST_CASE("legendre and Fp arithmetic") {
    CHECK(legendre(Int(2), Int(7)) == 1);
    CHECK(legendre(Int(3), Int(7)) == -1);
    Fp fp(10007);
    CHECK(fp.mul(fp.inv(1234), 1234) == 1);
    CHECK(fp.is_square(fp.mul(55, 55)));
    CHECK(fp.from_rat(make_rat(1, 2)) == fp.inv(2));
    CHECK_THROWS_AS(Fp(2), std::domain_error);  // p = 2 rejected everywhere
}

TEST_CASE("deterministic rng bounds") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        long v = rng.rand_nonzero(-50, 50);
        CHECK(v != 0);
        CHECK(v >= -50);
        CHECK(v <= 50);
    }
}
