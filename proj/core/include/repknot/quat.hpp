#pragma once

#include <cmath>
#include <string>

#include "repknot/errors.hpp"

namespace repknot {

// Tolerance ladder used throughout: algebra / geometry / tracked paths.
inline constexpr double kTolAlgebra = 1e-12;
inline constexpr double kTolGeometry = 1e-9;
inline constexpr double kTolTracking = 1e-6;

struct Vec3 {
    double x = 0, y = 0, z = 0;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    Vec3 normalized() const {
        double n = norm();
        if (n < kTolGeometry) throw InvalidInput("cannot normalize near-zero vector");
        return {x / n, y / n, z / n};
    }
};

// Element of SU(2) stored as a unit quaternion w + x i + y j + z k.
// The SU(2) trace is 2w; the induced SO(3) rotation angle about the
// imaginary axis is twice the quaternion angle.
struct Quat {
    double w = 1, x = 0, y = 0, z = 0;

    double normSq() const { return w * w + x * x + y * y + z * z; }
    Vec3 imag() const { return {x, y, z}; }
    Quat conjugate() const { return {w, -x, -y, -z}; }

    Quat& renormalize() {
        double n = std::sqrt(normSq());
        w /= n;
        x /= n;
        y /= n;
        z /= n;
        return *this;
    }
};

inline Quat qmul(const Quat& a, const Quat& b) {
    Quat r{a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
           a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
           a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
           a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    return r.renormalize();
}

inline Quat qinv(const Quat& q) { return q.conjugate(); }

// cos(t) + sin(t) * (axis . (i,j,k)).  SO(3) rotation angle is 2t.
inline Quat qrot(const Vec3& axis, double t) {
    if (std::abs(axis.norm() - 1.0) > 1e-9)
        throw InvalidInput("qrot: axis is not a unit vector");
    double c = std::cos(t), s = std::sin(t);
    Quat r{c, s * axis.x, s * axis.y, s * axis.z};
    return r.renormalize();
}

inline double trace_of(const Quat& q) { return 2.0 * q.w; }

// Image of p under the SO(3) rotation induced by q.
inline Vec3 rotate(const Quat& q, const Vec3& p) {
    Quat pv{0, p.x, p.y, p.z};
    // q p q^-1 without the unit renormalization of qmul (pv is pure).
    auto mul = [](const Quat& a, const Quat& b) {
        return Quat{a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                    a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                    a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                    a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    };
    Quat r = mul(mul(q, pv), q.conjugate());
    return {r.x, r.y, r.z};
}

// Unit imaginary direction, sign as stored (no canonicalization: the
// rhombus bookkeeping needs to distinguish antipodal fixed points).
inline Vec3 axis_of(const Quat& q) {
    Vec3 v = q.imag();
    double n = v.norm();
    if (n <= 1e-9) throw CentralElement("axis_of: quaternion is +-1");
    return {v.x / n, v.y / n, v.z / n};
}

// Principal angle theta in (-pi, pi] with q = cos(theta) + sin(theta)*axis.
// Requires q to lie on the circle subgroup through axis.
inline double circle_angle(const Quat& q, const Vec3& axis, double tol = 1e-8) {
    Vec3 v = q.imag();
    double s = v.dot(axis);
    Vec3 perp = v - axis * s;
    if (perp.norm() > tol)
        throw OffCircle("circle_angle: imaginary part not parallel to axis");
    double theta = std::atan2(s, q.w);
    if (theta <= -M_PI) theta = M_PI;
    return theta;
}

struct AxisAngle {
    Vec3 axis;
    double t = 0;  // quaternion angle in [0, pi]
};

inline AxisAngle to_axis_angle(const Quat& q) {
    Vec3 a = axis_of(q);  // throws CentralElement on +-1
    double t = std::atan2(q.imag().norm(), q.w);
    return {a, t};
}

// Integer power by repeated squaring on the group.
inline Quat qpow(Quat q, long e) {
    if (e < 0) {
        q = qinv(q);
        e = -e;
    }
    Quat r{};
    while (e > 0) {
        if (e & 1) r = qmul(r, q);
        q = qmul(q, q);
        e >>= 1;
    }
    return r;
}

inline double qdist(const Quat& a, const Quat& b) {
    return std::sqrt((a.w - b.w) * (a.w - b.w) + (a.x - b.x) * (a.x - b.x) +
                     (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

inline Quat identityQ() { return {1, 0, 0, 0}; }
inline Quat minusIdentityQ() { return {-1, 0, 0, 0}; }

// |[a,b] - 1|: zero iff the images commute.
inline double commutator_distance(const Quat& a, const Quat& b) {
    Quat c = qmul(qmul(a, b), qmul(qinv(a), qinv(b)));
    return qdist(c, identityQ());
}

}  // namespace repknot
