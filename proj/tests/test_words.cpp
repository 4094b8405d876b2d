#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "repknot/words.hpp"

using namespace repknot;

namespace {

std::mt19937 rng(424242);

GroupWord random_word(int len) {
    std::uniform_int_distribution<int> coin(0, 1);
    GroupWord w;
    for (int i = 0; i < len; ++i) {
        Gen g = coin(rng) ? Gen::X : Gen::Y;
        int e = coin(rng) ? 1 : -1;
        w = w * GroupWord::generator(g, e);
    }
    return w;
}

Quat random_unit() {
    std::normal_distribution<double> g(0, 1);
    Quat q{g(rng), g(rng), g(rng), g(rng)};
    return q.renormalize();
}

}  // namespace

TEST_CASE("free reduction") {
    GroupWord x = GroupWord::generator(Gen::X);
    GroupWord yinv = GroupWord::generator(Gen::Y, -1);
    GroupWord w = x * yinv;
    CHECK(w.str() == "x y^-1");
    CHECK((w * w.inverse()).empty());
    CHECK((w * w.inverse()).str() == "1");

    // (x y)(y^-1 x) reduces to x x.
    GroupWord y = GroupWord::generator(Gen::Y);
    CHECK(((x * y) * (yinv * x)).str() == "x x");
}

TEST_CASE("parse round trip") {
    CHECK(GroupWord::parse("1").empty());
    CHECK(GroupWord::parse("x y^-1 x^-1 y").str() == "x y^-1 x^-1 y");
    for (int it = 0; it < 30; ++it) {
        GroupWord w = random_word(12);
        CHECK(GroupWord::parse(w.str()) == w);
    }
}

TEST_CASE("knot parameter validation") {
    CHECK_THROWS_AS(TwoBridgeKnot(2, 2), InvalidInput);   // k even
    CHECK_THROWS_AS(TwoBridgeKnot(2, 5), InvalidInput);   // k out of range
    CHECK_THROWS_AS(TwoBridgeKnot(4, 3), InvalidInput);   // gcd(3, 9) > 1
    CHECK_THROWS_AS(TorusKnot(2, 4), InvalidInput);       // not coprime
    CHECK_THROWS_AS(TorusKnot(3, 2), InvalidInput);       // p < q required
    CHECK_NOTHROW(TwoBridgeKnot(2, 3));
    CHECK_NOTHROW(TorusKnot(2, 3));
}

TEST_CASE("relator word construction") {
    CHECK(build_W(TwoBridgeKnot(1, 1)).str() == "x y");
    CHECK(build_W(TwoBridgeKnot(2, 3)).str() == "x y^-1 x^-1 y");

    // Exponent symmetry e(2n+1-i) = e(i) for all knots up to determinant 15.
    for (int n = 1; 2 * n + 1 <= 15; ++n)
        for (int k = 1; k < 2 * n + 1; k += 2) {
            if (std::gcd(k, 2 * n + 1) != 1) continue;
            GroupWord W = build_W(TwoBridgeKnot(n, k));
            const auto& L = W.letters();
            REQUIRE(L.size() == std::size_t(2 * n));
            for (int i = 1; i <= 2 * n; ++i)
                CHECK(L[i - 1].exp == L[2 * n - i].exp);
        }
}

TEST_CASE("star and generator inversion") {
    GroupWord xy = GroupWord::parse("x y");
    CHECK(xy.star().str() == "y x");
    CHECK(build_W(TwoBridgeKnot(2, 3)).star().str() == "y x^-1 y^-1 x");
    CHECK(GroupWord::parse("x").invert_generators().str() == "x^-1");

    for (int it = 0; it < 30; ++it) {
        GroupWord w = random_word(10);
        CHECK(w.star().star() == w);
    }

    // The two relator-word identities, as exact reduced-word equalities.
    for (int n = 1; 2 * n + 1 <= 15; ++n)
        for (int k = 1; k < 2 * n + 1; k += 2) {
            if (std::gcd(k, 2 * n + 1) != 1) continue;
            GroupWord W = build_W(TwoBridgeKnot(n, k));
            CHECK(W.invert_generators() == W.star().inverse());
            CHECK(W.star().invert_generators() == W.inverse());
        }
}

TEST_CASE("peripheral words") {
    CHECK(beta(TwoBridgeKnot(1, 1)).str() == "y x x y");
    CHECK(beta(TwoBridgeKnot(2, 3)).str() == "y x^-1 y^-1 x x y^-1 x^-1 y");
    CHECK(beta(TwoBridgeKnot(1, 1)).exponent_sum() == 4);
    CHECK(beta(TwoBridgeKnot(2, 3)).exponent_sum() == 0);
    CHECK(GroupWord::parse("x y").exponent_sum() == 2);
    CHECK(GroupWord::parse("x y^-1").exponent_sum() == 0);

    // Longitude abelianizes to zero.
    for (auto [n, k] : {std::pair{1, 1}, {2, 3}, {3, 5}})
        CHECK(longitude(TwoBridgeKnot(n, k)).exponent_sum() == 0);
}

TEST_CASE("evaluation") {
    Quat q = random_unit();
    CHECK(qdist(GroupWord().evaluate(q, q), identityQ()) < 1e-12);
    CHECK(qdist(GroupWord::parse("x y^-1").evaluate(q, q), identityQ()) < 1e-12);

    // Multiplicative over concatenation.
    for (int it = 0; it < 20; ++it) {
        GroupWord a = random_word(8), b = random_word(8);
        Quat qx = random_unit(), qy = random_unit();
        CHECK(qdist((a * b).evaluate(qx, qy),
                    qmul(a.evaluate(qx, qy), b.evaluate(qx, qy))) < 1e-10);
    }

    // Conjugation equivariance.
    for (int it = 0; it < 20; ++it) {
        GroupWord w = random_word(10);
        Quat qx = random_unit(), qy = random_unit(), g = random_unit();
        Quat lhs = w.evaluate(qmul(qmul(g, qx), qinv(g)), qmul(qmul(g, qy), qinv(g)));
        Quat rhs = qmul(qmul(g, w.evaluate(qx, qy)), qinv(g));
        CHECK(qdist(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("trefoil relator at its dihedral representation") {
    // rho(x), rho(y) trace-zero with axis separation 2pi/3.
    TwoBridgeKnot K(1, 1);
    GroupWord W = build_W(K);
    double psi = 2 * M_PI / 3;
    Quat qx = qrot({1, 0, 0}, M_PI / 2);
    Quat qy = qrot({std::cos(psi), std::sin(psi), 0}, M_PI / 2);
    GroupWord x = GroupWord::generator(Gen::X), y = GroupWord::generator(Gen::Y);
    CHECK(qdist((W * x).evaluate(qx, qy), (y * W).evaluate(qx, qy)) < 1e-9);

    // beta commutes with the meridian image there.
    Quat qb = beta(K).evaluate(qx, qy);
    CHECK(qdist(qmul(qb, qx), qmul(qx, qb)) < 1e-9);
}

TEST_CASE("torus meridian") {
    CHECK(torus_meridian(TorusKnot(2, 3)).str() == "x y^-1");
    CHECK(torus_meridian(TorusKnot(3, 5)).str() == "x x y^-1 y^-1 y^-1");

    // q*u + p*v = 1 abelianization for all desk-scale torus knots.
    for (int p = 2; p <= 8; ++p)
        for (int q = p + 1; q <= 9; ++q) {
            if (std::gcd(p, q) != 1) continue;
            GroupWord mu = torus_meridian(TorusKnot(p, q));
            long u = 0, v = 0;
            for (const Letter& l : mu.letters())
                (l.gen == Gen::X ? u : v) += l.exp;
            CHECK(q * u + p * v == 1);
            CHECK(u > 0);
        }
}
