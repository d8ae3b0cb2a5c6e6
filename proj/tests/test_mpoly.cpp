#include "doctest.h"

#include "qsb/mpoly.hpp"
#include "qsb/poly_matrix.hpp"
#include "qsb/ratfunc.hpp"

using namespace qsb;

namespace {
RingPtr ring2() { return PolyRing::make({"x", "y"}); }
RingPtr ring3() { return PolyRing::make({"x0", "x1", "x2"}); }
}  // namespace

TEST_CASE("parser round trips the grammar") {
    auto R = ring2();
    MPoly f = parse_poly(R, "3/2*x^2*y - y + 1");
    CHECK(f.total_degree() == 3);
    CHECK(f.coeff({2, 1}) == make_rat(3, 2));
    CHECK(f.coeff({0, 1}) == Rat(-1));
    CHECK(f.coeff({0, 0}) == Rat(1));
    CHECK(parse_poly(R, f.str()) == f);
    CHECK(parse_poly(R, "  x *x* y") == parse_poly(R, "x^2*y"));

    CHECK_THROWS_AS(parse_poly(R, "x + z"), ParseError);
    CHECK_THROWS_AS(parse_poly(R, "x + "), ParseError);
    CHECK_THROWS_AS(parse_poly(R, ""), ParseError);
    try {
        parse_poly(R, "x + q*y");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("arithmetic, substitution and evaluation") {
    auto R = ring2();
    MPoly x = MPoly::variable(R, 0), y = MPoly::variable(R, 1);
    MPoly f = (x + y) * (x - y);
    CHECK(f == x * x - y * y);
    CHECK(f.eval({Rat(3), Rat(2)}) == Rat(5));
    CHECK(f.derivative(0) == x.scaled(Rat(2)));
    CHECK(f.is_homogeneous());

    MPoly g = f.substituted({y, x});  // swap variables
    CHECK(g == y * y - x * x);

    Fp fp(11);
    CHECK(f.eval_mod({5, 1}, fp) == (25 - 1) % 11);
}

TEST_CASE("gcd, exact division and squarefree part") {
    auto R = ring2();
    MPoly x = MPoly::variable(R, 0), y = MPoly::variable(R, 1);
    MPoly a = (x + y).pow(2) * (x - y);
    MPoly b = (x + y) * (x + y + MPoly::constant(R, Rat(1)));
    MPoly g = gcd(a, b);
    CHECK(g == x + y);
    CHECK(*divexact(a, g) == (x + y) * (x - y));
    CHECK(!divexact(b, x - y).has_value());
    CHECK(squarefree_part(a) == (x + y) * (x - y));
}

TEST_CASE("resultant eliminates the chosen variable") {
    auto R = ring2();
    MPoly x = MPoly::variable(R, 0), y = MPoly::variable(R, 1);
    // res_y(y - x^2, y - 2x) = (2x - x^2) up to sign
    MPoly r = resultant(y - x * x, y - x.scaled(Rat(2)), 1);
    CHECK((r == x.scaled(Rat(2)) - x * x || r == x * x - x.scaled(Rat(2))));
}

TEST_CASE("determinant: spec examples") {
    auto R4 = PolyRing::make({"a00", "a01", "a11"});
    MPoly a00 = MPoly::variable(R4, 0), a01 = MPoly::variable(R4, 1), a11 = MPoly::variable(R4, 2);
    PolyMatrix m(2, R4, true);
    m.set(0, 0, a00.scaled(Rat(2)));
    m.set(0, 1, a01);
    m.set(1, 1, a11.scaled(Rat(2)));
    CHECK(determinant(m) == a00 * a11.scaled(Rat(4)) - a01 * a01);

    auto R = ring3();
    PolyMatrix id(4, R);
    for (int i = 0; i < 4; ++i) id.set(i, i, MPoly::constant(R, Rat(1)));
    CHECK(determinant(id) == MPoly::constant(R, Rat(1)));
}

TEST_CASE("determinant commutes with evaluation (random points and primes)") {
    auto R = ring3();
    Rng rng(7);
    // a generic 4x4 with the eq-(4.2) degree layout: linear block, quadric
    // border, cubic corner
    auto rnd_poly = [&](int deg) {
        MPoly f(R);
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; i + j <= deg; ++j) {
                Mono m{(uint32_t)i, (uint32_t)j, (uint32_t)(deg - i - j)};
                f += MPoly::monomial(R, m, Rat(rng.rand_long(-3, 3)));
            }
        return f;
    };
    PolyMatrix g(4, R, true);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) g.set(i, j, rnd_poly(1));
    for (int i = 0; i < 3; ++i) g.set(i, 3, rnd_poly(2));
    g.set(3, 3, rnd_poly(3));
    MPoly det = determinant(g);
    CHECK((det.is_zero() || det.total_degree() == 6));
    CHECK(det.is_homogeneous());

    auto num_det = [](std::vector<std::vector<Rat>> a) {
        Rat d(1);
        size_t n = a.size();
        for (size_t k = 0; k < n; ++k) {
            size_t piv = k;
            while (piv < n && sgn(a[piv][k]) == 0) ++piv;
            if (piv == n) return Rat(0);
            if (piv != k) {
                std::swap(a[piv], a[k]);
                d = -d;
            }
            d *= a[k][k];
            for (size_t i = k + 1; i < n; ++i) {
                Rat f = a[i][k] / a[k][k];
                for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            }
        }
        return d;
    };

    for (int t = 0; t < 100; ++t) {
        std::vector<Rat> pt{Rat(rng.rand_long(-9, 9)), Rat(rng.rand_long(-9, 9)),
                            Rat(rng.rand_long(-9, 9))};
        CHECK(det.eval(pt) == num_det(g.eval(pt)));
    }
    // and through a prime field
    Fp fp(10007);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rat> pt{Rat(rng.rand_long(-9, 9)), Rat(rng.rand_long(-9, 9)),
                            Rat(rng.rand_long(-9, 9))};
        CHECK(det.eval_mod({fp.from_rat(pt[0]), fp.from_rat(pt[1]), fp.from_rat(pt[2])}, fp) ==
              fp.from_rat(det.eval(pt)));
    }
}

TEST_CASE("ratfunc normal form and specialization") {
    auto R = PolyRing::make({"x"});
    MPoly x = MPoly::variable(R, 0);
    MPoly one = MPoly::constant(R, Rat(1));
    // (x^2-1)/(x-1) normalizes to x+1; the stored form has no pole at 1
    RatFunc f(x * x - one, x - one);
    CHECK(f.num() == x + one);
    CHECK(f.den() == one);
    CHECK(f.eval({Rat(1)}) == Rat(2));

    RatFunc g(one, x - one);
    CHECK(!g.eval({Rat(1)}).has_value());  // genuine pole

    RatFunc h = RatFunc(x, x + one) + RatFunc(one, x + one);
    CHECK(h == RatFunc(one));

    // denominator kept integer-primitive with positive lead
    RatFunc k(x, (x + one).scaled(make_rat(-3, 2)));
    CHECK(k.den() == x + one);
    CHECK(k.num() == x.scaled(make_rat(-2, 3)));
}
