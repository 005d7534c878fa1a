#include <doctest.h>

#include <map>

#include "polyfib/modpoly.hpp"

using namespace polyfib;

namespace {
const int64_t P = 2147483647;
}

TEST_CASE("polynomial arithmetic round trips") {
    ModPoly f(P, {1, 2, 3});       // 3u^2 + 2u + 1
    ModPoly g(P, {5, 0, 0, 7});    // 7u^3 + 5
    auto [q, r] = (f * g).divmod(g);
    CHECK(q.coeffs() == f.coeffs());
    CHECK(r.is_zero());
    CHECK((f + g - g).coeffs() == f.coeffs());
    CHECK(f.eval(2) == (3 * 4 + 2 * 2 + 1));
}

TEST_CASE("gcd picks up common factors") {
    ModPoly a(P, {-1, 0, 1});  // (u-1)(u+1)
    ModPoly b(P, {-1, 1});     // u - 1
    ModPoly g = gcd(a, b);
    CHECK(g.degree() == 1);
    CHECK(g.eval(1) == 0);
}

TEST_CASE("squarefree decomposition recovers multiplicities") {
    // f = (u-2)^3 (u-5)^2 (u-7)
    ModPoly u2(P, {-2, 1}), u5(P, {-5, 1}), u7(P, {-7, 1});
    ModPoly f = u2 * u2 * u2 * u5 * u5 * u7;
    auto parts = squarefree_decomposition(f);
    REQUIRE(parts.size() == 3);
    std::map<int64_t, int64_t> roots;  // multiplicity -> root count
    for (auto& [g, k] : parts) roots[k] = g.degree();
    CHECK(roots[1] == 1);
    CHECK(roots[2] == 1);
    CHECK(roots[3] == 1);
    for (auto& [g, k] : parts) {
        if (k == 3) CHECK(g.eval(2) == 0);
        if (k == 2) CHECK(g.eval(5) == 0);
        if (k == 1) CHECK(g.eval(7) == 0);
    }
}

TEST_CASE("binary form orders at the torus-fixed points") {
    BinaryForm f = BinaryForm::zero(P, 5);
    f.c[2] = 3;
    f.c[4] = 9;
    CHECK(f.order_at_s0() == 2);
    CHECK(f.order_at_t0() == 1);
    ModPoly d = f.dehomogenized();
    CHECK(d.degree() == 4);
}

TEST_CASE("sampler respects supports and is reproducible") {
    ModSampler s1(P, 99), s2(P, 99);
    BinaryForm a = s1.form(8, {0, 3, 8});
    BinaryForm b = s2.form(8, {0, 3, 8});
    CHECK(a.c == b.c);
    CHECK(a.c[1] == 0);
    CHECK(a.c[0] != 0);
    CHECK(a.c[3] != 0);
    CHECK(a.c[8] != 0);
}
