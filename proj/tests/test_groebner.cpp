#include "doctest.h"

#include "qsb/groebner.hpp"

using namespace qsb;

namespace {

RingPtr ring3() { return PolyRing::make({"x0", "x1", "x2"}); }

// brute-force oracle: does f=0 have a singular point over F_p?
bool singular_point_mod_p(const MPoly& f, uint64_t p) {
    Fp fp(p);
    MPoly fx = f.derivative(0), fy = f.derivative(1), fz = f.derivative(2);
    auto is_sing = [&](uint64_t a, uint64_t b, uint64_t c) {
        std::vector<uint64_t> pt{a, b, c};
        return fx.eval_mod(pt, fp) == 0 && fy.eval_mod(pt, fp) == 0 && fz.eval_mod(pt, fp) == 0 &&
               f.eval_mod(pt, fp) == 0;
    };
    for (uint64_t a = 0; a < p; ++a)
        for (uint64_t b = 0; b < p; ++b)
            if (is_sing(a, b, 1)) return true;
    for (uint64_t a = 0; a < p; ++a)
        if (is_sing(a, 1, 0)) return true;
    return is_sing(1, 0, 0);
}

}  // namespace

TEST_CASE("groebner basics") {
    auto R = PolyRing::make({"x", "y"});
    MPoly x = MPoly::variable(R, 0), y = MPoly::variable(R, 1);
    // <x^2, xy + y^2>: leading terms generate (x^2, xy, y^3)
    auto gb = groebner_basis_q({x * x, x * y + y * y});
    CHECK(gb.size() >= 2);
    // y^3 = y*(xy+y^2) - x*... must reduce to zero; check membership via the
    // empty-locus test instead: V(x^2, xy+y^2) is only the origin
    CHECK(projective_locus_empty([&] {
        auto g = gb;
        return g;
    }()));
}

TEST_CASE("smoothness: spec examples") {
    auto R = ring3();
    MPoly x0 = MPoly::variable(R, 0), x1 = MPoly::variable(R, 1), x2 = MPoly::variable(R, 2);

    SUBCASE("Fermat sextic is smooth") {
        auto res = is_smooth_plane_curve(x0.pow(6) + x1.pow(6) + x2.pow(6));
        CHECK(res.verdict == SmoothVerdict::Smooth);
    }

    SUBCASE("x0^6 + x1^6 is singular at (0:0:1)") {
        auto res = is_smooth_plane_curve(x0.pow(6) + x1.pow(6));
        REQUIRE(res.verdict == SmoothVerdict::Singular);
        REQUIRE(res.witness.has_value());
        auto w = *res.witness;
        CHECK(sgn(w[0]) == 0);
        CHECK(sgn(w[1]) == 0);
        CHECK(sgn(w[2]) != 0);
    }

    SUBCASE("multiple component reports NotReduced") {
        MPoly g = x1.pow(4) + x0 * x2 * x2 * x2 + x0 * x0 * x1 * x1;
        auto res = is_smooth_plane_curve(x0 * x0 * g);
        CHECK(res.verdict == SmoothVerdict::NotReduced);
    }

    SUBCASE("error paths") {
        CHECK_THROWS_AS(is_smooth_plane_curve(x0 * x0 + x1), not_homogeneous);
        auto R2 = PolyRing::make({"x", "y"});
        CHECK_THROWS_AS(is_smooth_plane_curve(MPoly::variable(R2, 0)), wrong_variable_count);
    }
}

TEST_CASE("smoothness witness for a nodal cubic") {
    auto R = ring3();
    MPoly x = MPoly::variable(R, 0), y = MPoly::variable(R, 1), z = MPoly::variable(R, 2);
    // y^2 z = x^2 (x + z): node at (0:0:1)
    MPoly f = y * y * z - x * x * (x + z);
    auto res = is_smooth_plane_curve(f);
    REQUIRE(res.verdict == SmoothVerdict::Singular);
    REQUIRE(res.witness.has_value());
    auto w = *res.witness;
    // witness really is a singular projective point
    MPoly fx = f.derivative(0), fy = f.derivative(1), fz = f.derivative(2);
    CHECK(sgn(fx.eval(w)) == 0);
    CHECK(sgn(fy.eval(w)) == 0);
    CHECK(sgn(fz.eval(w)) == 0);
}

TEST_CASE("smoothness agrees with brute force mod p on degree <= 4 curves") {
    auto R = ring3();
    MPoly x = MPoly::variable(R, 0), y = MPoly::variable(R, 1), z = MPoly::variable(R, 2);
    struct Case {
        MPoly f;
        bool smooth;
    };
    std::vector<Case> cases = {
        {x * x + y * y + z * z, true},
        {x.pow(4) + y.pow(4) + z.pow(4), true},
        {x * x * x + y * y * y + z * z * z, true},
        {y * y * z - x * x * (x + z), false},       // node
        {y * y * z - x * x * x, false},             // cusp
        {x.pow(4) + y.pow(4) + x * x * y * y, false},  // singular at (0:0:1)
    };
    auto primes = modular_primes(11, 10);
    for (auto& c : cases) {
        auto verdict = is_smooth_plane_curve(c.f);
        CHECK((verdict.verdict == SmoothVerdict::Smooth) == c.smooth);
        int disagree = 0;
        for (uint64_t p : primes)
            if (singular_point_mod_p(c.f, p) == c.smooth) ++disagree;
        // singular over Q implies singular mod almost all p; smooth over Q can
        // only degenerate at bad primes. Flag (fail) if more than 2 of 10
        // primes disagree with the exact verdict.
        CHECK(disagree <= 2);
    }
}
