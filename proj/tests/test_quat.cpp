#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "repknot/quat.hpp"

using namespace repknot;

namespace {

std::mt19937 rng(987654321);

Quat random_unit() {
    std::normal_distribution<double> g(0, 1);
    Quat q{g(rng), g(rng), g(rng), g(rng)};
    return q.renormalize();
}

Vec3 random_axis() {
    std::normal_distribution<double> g(0, 1);
    Vec3 v{g(rng), g(rng), g(rng)};
    return v.normalized();
}

}  // namespace

TEST_CASE("qrot basics") {
    Quat e = qrot({1, 0, 0}, 0);
    CHECK(qdist(e, identityQ()) < 1e-15);

    // Primitive 6th root: x^3 = -1.
    Quat x = qrot({1, 0, 0}, M_PI / 3);
    CHECK(qdist(qpow(x, 3), minusIdentityQ()) < 1e-12);

    Quat j = qrot({0, 1, 0}, M_PI / 2);
    CHECK(std::abs(j.w) < 1e-15);
    CHECK(std::abs(j.y - 1.0) < 1e-15);

    CHECK_THROWS_AS(qrot({1, 1, 0}, 0.5), InvalidInput);
}

TEST_CASE("qmul table and inverses") {
    Quat i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    CHECK(qdist(qmul(i, j), k) < 1e-15);

    for (int it = 0; it < 50; ++it) {
        Quat q = random_unit();
        CHECK(qdist(qmul(q, qinv(q)), identityQ()) < 1e-12);
    }

    // One-parameter subgroup.
    Vec3 u = random_axis();
    CHECK(qdist(qmul(qrot(u, 0.7), qrot(u, 0.4)), qrot(u, 1.1)) < 1e-12);
}

TEST_CASE("group laws") {
    for (int it = 0; it < 50; ++it) {
        Quat a = random_unit(), b = random_unit(), c = random_unit();
        CHECK(qdist(qmul(qmul(a, b), c), qmul(a, qmul(b, c))) < 1e-12);
        CHECK(qdist(qmul(a, identityQ()), a) < 1e-12);
    }
}

TEST_CASE("trace") {
    CHECK(trace_of(identityQ()) == 2.0);
    CHECK(trace_of(minusIdentityQ()) == -2.0);
    CHECK(std::abs(trace_of(qrot({1, 0, 0}, M_PI / 2))) < 1e-15);

    // Conjugation invariance.
    for (int it = 0; it < 50; ++it) {
        Quat q = random_unit(), g = random_unit();
        Quat c = qmul(qmul(g, q), qinv(g));
        CHECK(std::abs(trace_of(c) - trace_of(q)) < 1e-12);
    }
}

TEST_CASE("rotate") {
    Vec3 p{0.3, -0.8, 0.5};
    Vec3 r = rotate(identityQ(), p);
    CHECK((r - p).norm() < 1e-15);

    // Quaternion angle pi/2 about z is SO(3) rotation by pi.
    Vec3 m = rotate(qrot({0, 0, 1}, M_PI / 2), {1, 0, 0});
    CHECK((m - Vec3{-1, 0, 0}).norm() < 1e-12);

    for (int it = 0; it < 50; ++it) {
        Quat q = random_unit();
        Quat a = random_unit(), b = random_unit();
        Vec3 p2 = random_axis();
        CHECK((rotate(qmul(a, b), p2) - rotate(a, rotate(b, p2))).norm() < 1e-10);
        if (q.imag().norm() > 1e-6) {
            Vec3 ax = axis_of(q);
            CHECK((rotate(q, ax) - ax).norm() < 1e-10);
        }
    }
}

TEST_CASE("double cover") {
    for (int it = 0; it < 20; ++it) {
        Vec3 u = random_axis();
        double t = 0.1 + 0.8 * double(it) / 20;
        Quat a = qrot(u, t), b = qrot(u, t + M_PI);
        CHECK(qdist(b, Quat{-a.w, -a.x, -a.y, -a.z}) < 1e-12);
        Vec3 p = random_axis();
        CHECK((rotate(a, p) - rotate(b, p)).norm() < 1e-10);
    }
}

TEST_CASE("axis_of") {
    Vec3 a = axis_of(qrot({0, 1, 0}, 0.3));
    CHECK((a - Vec3{0, 1, 0}).norm() < 1e-12);

    CHECK_THROWS_AS(axis_of(identityQ()), CentralElement);
    CHECK_THROWS_AS(axis_of(minusIdentityQ()), CentralElement);

    Vec3 s = axis_of(qmul(qrot({1, 0, 0}, M_PI / 2), qrot({1, 0, 0}, M_PI / 4)));
    CHECK((s - Vec3{1, 0, 0}).norm() < 1e-12);

    // Sign is preserved as stored, no canonicalization.
    Vec3 neg = axis_of(qrot({0, 0, -1}, 0.4));
    CHECK((neg - Vec3{0, 0, -1}).norm() < 1e-12);
}

TEST_CASE("circle_angle") {
    CHECK(circle_angle(identityQ(), {1, 0, 0}) == 0.0);
    CHECK(std::abs(circle_angle(qrot({1, 0, 0}, 2.0), {1, 0, 0}) - 2.0) < 1e-12);
    CHECK(std::abs(circle_angle(qrot({1, 0, 0}, -2.0), {1, 0, 0}) + 2.0) < 1e-12);
    CHECK_THROWS_AS(circle_angle(qrot({0, 1, 0}, 1.0), {1, 0, 0}), OffCircle);

    // Round trip within the principal range.
    for (int it = 0; it < 40; ++it) {
        Vec3 u = random_axis();
        double t = -M_PI + 2 * M_PI * (it + 0.5) / 40;
        CHECK(std::abs(circle_angle(qrot(u, t), u) - t) < 1e-12);
    }
}

TEST_CASE("axis-angle round trip") {
    for (int it = 0; it < 50; ++it) {
        Quat q = random_unit();
        if (q.imag().norm() < 1e-6) continue;
        AxisAngle aa = to_axis_angle(q);
        CHECK(aa.t >= 0);
        CHECK(aa.t <= M_PI);
        CHECK(qdist(qrot(aa.axis, aa.t), q) < 1e-10);
    }
}

TEST_CASE("qpow") {
    Quat q = qrot(random_axis(), 0.37);
    Quat byhand = identityQ();
    for (int e = 0; e <= 12; ++e) {
        CHECK(qdist(qpow(q, e), byhand) < 1e-12);
        CHECK(qdist(qpow(q, -e), qinv(byhand)) < 1e-12);
        byhand = qmul(byhand, q);
    }
}

TEST_CASE("commutator distance") {
    Vec3 u = random_axis();
    CHECK(commutator_distance(qrot(u, 0.5), qrot(u, 1.2)) < 1e-12);
    CHECK(commutator_distance(qrot({1, 0, 0}, M_PI / 2), qrot({0, 1, 0}, M_PI / 2)) > 0.5);
}
