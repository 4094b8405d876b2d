#include "repknot/tb_variety.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace repknot {

namespace {

constexpr Vec3 kE1{1, 0, 0};

// Cached relator machinery for one knot.
struct SliceSystem {
    GroupWord W;

    explicit SliceSystem(const TwoBridgeKnot& K) : W(build_W(K)) {}

    Residual eval(const SlicePoint& s) const {
        Quat qx = slice_x(s);
        Quat qy = slice_y(s);
        Quat qW = W.evaluate(qx, qy);
        Quat g = qmul(qmul(qW, qx), qmul(qinv(qW), qinv(qy)));
        return {{g.x, g.y, g.z}, g.w};
    }

    // 3x2 Jacobian by central finite differences.
    std::array<std::array<double, 2>, 3> jacobian(const SlicePoint& s, double h) const {
        std::array<std::array<double, 2>, 3> J{};
        for (int c = 0; c < 2; ++c) {
            SlicePoint sp = s, sm = s;
            (c == 0 ? sp.phi : sp.psi) += h;
            (c == 0 ? sm.phi : sm.psi) -= h;
            Residual rp = eval(sp), rm = eval(sm);
            for (int r = 0; r < 3; ++r) J[r][c] = (rp.v[r] - rm.v[r]) / (2 * h);
        }
        return J;
    }

    // Null direction of the Jacobian: eigenvector of the smaller eigenvalue
    // of J^T J.
    std::array<double, 2> tangent(const SlicePoint& s, double h) const {
        auto J = jacobian(s, h);
        double a = 0, b = 0, c = 0;
        for (int r = 0; r < 3; ++r) {
            a += J[r][0] * J[r][0];
            b += J[r][0] * J[r][1];
            c += J[r][1] * J[r][1];
        }
        double lmin = 0.5 * ((a + c) - std::sqrt((a - c) * (a - c) + 4 * b * b));
        std::array<double, 2> t{};
        // Pick the better-conditioned eigenvector formula.
        if (std::abs(a - lmin) >= std::abs(c - lmin)) {
            t = {b, lmin - a};
        } else {
            t = {lmin - c, b};
        }
        double n = std::hypot(t[0], t[1]);
        if (n < 1e-14) return {1, 0};
        return {t[0] / n, t[1] / n};
    }

    // Newton correction along the fixed direction `dir` (unit 2-vector).
    // Returns false if it fails to reach tol in 25 iterations.
    bool correct(SlicePoint& p, std::array<double, 2> dir, double tol, double fd) const {
        for (int it = 0; it < 25; ++it) {
            Residual R = eval(p);
            if (R.norm() < tol) return true;
            auto J = jacobian(p, fd);
            double jd[3], num = 0, den = 0;
            for (int r = 0; r < 3; ++r) {
                jd[r] = J[r][0] * dir[0] + J[r][1] * dir[1];
                num += jd[r] * R.v[r];
                den += jd[r] * jd[r];
            }
            if (den < 1e-20) return false;
            double s = -num / den;
            p.phi += s * dir[0];
            p.psi += s * dir[1];
            if (std::abs(s) > 0.5) return false;
        }
        return eval(p).norm() < tol;
    }
};

Vec3 continued_axis(const Quat& q, const Vec3& prev) {
    Vec3 v = q.imag();
    if (v.norm() <= 1e-9) return prev;  // near-central: keep last axis
    Vec3 a = v.normalized();
    return a.dot(prev) >= 0 ? a : -a;
}

}  // namespace

Residual residual(const TwoBridgeKnot& K, const SlicePoint& s) {
    return SliceSystem(K).eval(s);
}

std::vector<SlicePoint> find_dihedral(const TwoBridgeKnot& K, int samples) {
    SliceSystem sys(K);

    // At phi = pi/2 every generator image is a pure quaternion with axis in
    // the xy-plane, so rho(W) rotates about the z-axis and W(A) stays in the
    // plane.  The scalar f(psi) = (W(A) x C).z vanishes exactly when
    // W(A) = +-C; the dot product separates the +1 branch from the spurious
    // -1 branch.
    auto WA = [&](double psi) {
        SlicePoint s{M_PI / 2, psi};
        Quat qW = sys.W.evaluate(slice_x(s), slice_y(s));
        return rotate(qW, kE1);
    };
    auto f = [&](double psi) {
        Vec3 wa = WA(psi);
        return wa.x * std::sin(psi) - wa.y * std::cos(psi);
    };
    auto on_plus_branch = [&](double psi) {
        Vec3 wa = WA(psi);
        return wa.x * std::cos(psi) + wa.y * std::sin(psi) > 0;
    };

    auto scan = [&](int N) {
        std::vector<double> roots;
        double lo = M_PI / double(N + 1);
        double hi = M_PI - lo;
        double prev_psi = lo, prev_f = f(lo);
        for (int i = 1; i <= N; ++i) {
            double psi = lo + (hi - lo) * double(i) / double(N);
            double fv = f(psi);
            if (prev_f == 0.0 || prev_f * fv < 0) {
                double a = prev_psi, b = psi, fa = prev_f;
                while (b - a > 1e-13) {
                    double m = 0.5 * (a + b);
                    double fm = f(m);
                    if (fa * fm <= 0) {
                        b = m;
                    } else {
                        a = m;
                        fa = fm;
                    }
                }
                double root = 0.5 * (a + b);
                if (on_plus_branch(root)) roots.push_back(root);
            }
            prev_psi = psi;
            prev_f = fv;
        }
        return roots;
    };

    std::vector<double> roots = scan(samples);
    std::vector<double> check = scan(2 * samples);
    if (roots.size() != check.size())
        throw ScanTooCoarse("find_dihedral: root count changed under refinement");

    std::vector<SlicePoint> out;
    for (double psi : roots) out.push_back({M_PI / 2, psi});
    std::sort(out.begin(), out.end(),
              [](const SlicePoint& a, const SlicePoint& b) { return a.psi < b.psi; });
    return out;
}

TrackedArc track_arc(const TwoBridgeKnot& K, const SlicePoint& start, int direction,
                     const TrackOptions& opts) {
    SliceSystem sys(K);
    if (sys.eval(start).norm() > 1e-8)
        throw InvalidInput("track_arc: start point is not on the curve");

    TrackedArc arc;
    arc.pts.push_back(start);

    auto qW_at = [&](const SlicePoint& s) {
        return sys.W.evaluate(slice_x(s), slice_y(s));
    };

    // Continuity-tracked fixed point of rho(W), first point in the closed
    // upper hemisphere.
    Vec3 b = continued_axis(qW_at(start), {0, 0, 1});
    arc.b_start = b;

    auto T = sys.tangent(start, opts.fd_step);
    double lead = std::abs(T[0]) >= std::abs(T[1]) ? T[0] : T[1];
    if (lead * direction < 0) T = {-T[0], -T[1]};

    double h = opts.step;
    bool have_left = false;
    double prev_side = 0;

    auto finish_dihedral = [&](SlicePoint a, SlicePoint c) {
        // Bisection between the bracketing on-curve points a, c for the
        // phi = pi/2 crossing, then a psi-only polish at phi = pi/2 exactly.
        std::array<double, 2> dir{c.phi - a.phi, c.psi - a.psi};
        double n = std::hypot(dir[0], dir[1]);
        std::array<double, 2> nrm{-dir[1] / n, dir[0] / n};
        double fa = a.phi - M_PI / 2;
        SlicePoint mid = a;
        for (int it = 0; it < 80; ++it) {
            mid = {0.5 * (a.phi + c.phi), 0.5 * (a.psi + c.psi)};
            if (!sys.correct(mid, nrm, opts.residual_tol, opts.fd_step)) break;
            double fm = mid.phi - M_PI / 2;
            if (std::abs(fm) < 1e-11) break;
            if (fa * fm <= 0) {
                c = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        mid.phi = M_PI / 2;
        sys.correct(mid, {0, 1}, opts.residual_tol, opts.fd_step);
        return mid;
    };

    for (int step = 0; step < opts.max_steps; ++step) {
        SlicePoint cur = arc.pts.back();
        SlicePoint next{};
        bool ok = false;
        while (h >= 1e-6 * opts.step) {
            next = {cur.phi + h * T[0], cur.psi + h * T[1]};
            std::array<double, 2> nrm{-T[1], T[0]};
            SlicePoint corrected = next;
            if (sys.correct(corrected, nrm, opts.residual_tol, opts.fd_step)) {
                next = corrected;
                ok = true;
                break;
            }
            h *= 0.5;
        }
        if (!ok) {
            std::ostringstream os;
            os << "track_arc: corrector diverged near (phi=" << cur.phi
               << ", psi=" << cur.psi << ")";
            throw CorrectorDiverged(os.str());
        }

        auto Tn = sys.tangent(next, opts.fd_step);
        if (Tn[0] * T[0] + Tn[1] * T[1] < 0) Tn = {-Tn[0], -Tn[1]};
        T = Tn;
        if (h < opts.step) h = std::min(opts.step, 2 * h);

        b = continued_axis(qW_at(next), b);

        double side = next.phi - M_PI / 2;
        if (have_left && prev_side * side < 0) {
            SlicePoint end = finish_dihedral(cur, next);
            b = continued_axis(qW_at(end), b);
            arc.pts.push_back(end);
            arc.end_tag = ArcEnd::Dihedral;
            arc.b_end = b;
            arc.pole_switch = (arc.b_start.z > 0) != (b.z > 0);
            return arc;
        }
        if (std::abs(side) > 0.02) {
            have_left = true;
            prev_side = side;
        } else if (have_left) {
            prev_side = side;
        }

        arc.pts.push_back(next);

        if (next.phi < opts.boundary_margin || next.phi > M_PI - opts.boundary_margin ||
            next.psi < opts.boundary_margin || next.psi > M_PI - opts.boundary_margin) {
            arc.end_tag = ArcEnd::ReducibleBoundary;
            arc.b_end = b;
            return arc;
        }
    }
    arc.end_tag = ArcEnd::StepLimit;
    arc.b_end = b;
    return arc;
}

ClosedLoop build_gamma(const TwoBridgeKnot& K, const TrackOptions& opts) {
    std::vector<SlicePoint> dihedrals = find_dihedral(K);
    std::ostringstream report;
    for (const SlicePoint& d : dihedrals) {
        for (int dir : {+1, -1}) {
            TrackedArc arc;
            try {
                arc = track_arc(K, d, dir, opts);
            } catch (const CorrectorDiverged& e) {
                report << "start psi=" << d.psi << " dir=" << dir << ": " << e.what()
                       << "; ";
                continue;
            }
            if (arc.end_tag == ArcEnd::Dihedral && arc.pole_switch) {
                ClosedLoop loop;
                loop.pts = arc.pts;
                loop.arc_samples = arc.pts.size();
                for (std::size_t i = arc.pts.size() - 1; i-- > 0;)
                    loop.pts.push_back(mirror(arc.pts[i]));
                return loop;
            }
            report << "start psi=" << d.psi << " dir=" << dir << ": "
                   << (arc.end_tag == ArcEnd::Dihedral
                           ? "dihedral end, no pole switch"
                           : arc.end_tag == ArcEnd::ReducibleBoundary
                                 ? "reducible boundary"
                                 : "step limit")
                   << "; ";
        }
    }
    throw NoPoleSwitchFound("build_gamma: no pole-switching arc found: " + report.str());
}

RhombusData rhombus(const TwoBridgeKnot& K, const SlicePoint& s, const RhombusData* prev) {
    GroupWord W = build_W(K);
    Quat qx = slice_x(s);
    Quat qy = slice_y(s);
    Quat qW = W.evaluate(qx, qy);
    Quat qWs = W.star().evaluate(qx, qy);

    RhombusData r;
    r.A = kE1;
    r.C = {std::cos(s.psi), std::sin(s.psi), 0};
    if (std::abs(r.A.dot(r.C)) > 1 - 1e-12)
        throw DegenerateRhombus("rhombus: A = +-C");
    Vec3 B, D;
    try {
        B = axis_of(qW);
        D = axis_of(qWs);
    } catch (const CentralElement&) {
        throw DegenerateRhombus("rhombus: rho(W) or rho(W*) is central");
    }
    if (prev) {
        if (B.dot(prev->B) < 0) B = -B;
        if (D.dot(prev->D) < 0) D = -D;
    } else {
        if (B.z < 0 || (std::abs(B.z) < 1e-12 && (B.y < 0 || (B.y == 0 && B.x < 0))))
            B = -B;
        // Pick the sign of D making the four sides equal.
        double ab = std::acos(std::clamp(r.A.dot(B), -1.0, 1.0));
        double adp = std::acos(std::clamp(r.A.dot(D), -1.0, 1.0));
        if (std::abs(M_PI - adp - ab) < std::abs(adp - ab)) D = -D;
    }
    r.B = B;
    r.D = D;

    // Signed angle at A from the arc A->B to the arc A->D, measured about A.
    // With this orientation the rotation angle of rho(W*W), which is twice
    // its circle angle, equals 2*theta mod 2*pi.
    Vec3 bp = (B - r.A * B.dot(r.A));
    Vec3 dp = (D - r.A * D.dot(r.A));
    if (bp.norm() < 1e-12 || dp.norm() < 1e-12)
        throw DegenerateRhombus("rhombus: B or D coincides with +-A");
    bp = bp.normalized();
    dp = dp.normalized();
    r.theta = std::atan2(r.A.dot(bp.cross(dp)), bp.dot(dp));
    return r;
}

RepLoop peripheral_restriction(const TwoBridgeKnot& K, const ClosedLoop& loop) {
    GroupWord W = build_W(K);
    GroupWord betaw = beta(K);
    long e = W.exponent_sum();

    const std::size_t N = loop.pts.size();
    RepLoop out;
    out.provenance = LoopProvenance::TwoBridgeGamma;
    out.theta_mu.resize(N);
    out.theta_lambda.resize(N);

    double theta_b = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const SlicePoint& s = loop.pts[i];
        Quat qb = betaw.evaluate(slice_x(s), slice_y(s));
        double raw = circle_angle(qb, kE1);
        theta_b = (i == 0) ? raw : unwrap_step(theta_b, raw);
        out.theta_mu[i] = s.phi;
        out.theta_lambda[i] = theta_b - 2.0 * double(e) * s.phi;
    }

    auto pts = std::make_shared<std::vector<SlicePoint>>(loop.pts);
    auto sys = std::make_shared<SliceSystem>(K);
    out.point_at = [pts, sys, betaw, e](double t) {
        const auto& P = *pts;
        double u = std::clamp(t, 0.0, 1.0) * double(P.size() - 1);
        std::size_t j = std::min<std::size_t>(std::size_t(u), P.size() - 2);
        double frac = u - double(j);
        SlicePoint p{P[j].phi + frac * (P[j + 1].phi - P[j].phi),
                     P[j].psi + frac * (P[j + 1].psi - P[j].psi)};
        double dx = P[j + 1].phi - P[j].phi, dy = P[j + 1].psi - P[j].psi;
        double n = std::hypot(dx, dy);
        if (n > 1e-15 && frac > 0 && frac < 1)
            sys->correct(p, {-dy / n, dx / n}, 1e-10, 1e-6);
        LoopPoint lp;
        lp.qx = slice_x(p);
        lp.qy = slice_y(p);
        lp.mu_angle = p.phi;
        Quat ql = qmul(betaw.evaluate(lp.qx, lp.qy), qpow(lp.qx, -2 * e));
        lp.lambda_angle = circle_angle(ql, kE1, 1e-6);
        return lp;
    };
    out.eval_mu = [](const Quat& qx, const Quat&) { return qx; };
    out.eval_lambda = [betaw, e](const Quat& qx, const Quat& qy) {
        return qmul(betaw.evaluate(qx, qy), qpow(qx, -2 * e));
    };
    return out;
}

}  // namespace repknot
