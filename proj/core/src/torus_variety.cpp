#include "repknot/torus_variety.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

namespace repknot {

namespace {

constexpr Vec3 kE1{1, 0, 0};

long mod_inverse(long a, long m) {
    long t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
    while (newr != 0) {
        long q = r / newr;
        long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw InvalidInput("mod_inverse: not invertible");
    return ((t % m) + m) % m;
}

// Unique solution mod 2pq of s = sa mod 2p, s = sb mod 2q (sa = sb mod 2).
long solve_congruence_pair(long p, long q, long sa, long sb) {
    // s = sa + 2p*t with p*t = (sb - sa)/2 mod q.
    long diff = sb - sa;
    long half = diff / 2;  // sa = sb mod 2 by construction
    long t = (mod_inverse(p, q) * (((half % q) + q) % q)) % q;
    long m = 2 * p * q;
    return (((sa + 2 * p * t) % m) + m) % m;
}

// Conjugator g with g u g^-1 supported on the (1,0,0) axis.
Quat align_to_e1(const Vec3& u) {
    double c = u.dot(kE1);
    if (c > 1 - 1e-14) return identityQ();
    if (c < -1 + 1e-14) return qrot({0, 0, 1}, M_PI / 2);  // rotation by pi about z
    Vec3 axis = u.cross(kE1).normalized();
    return qrot(axis, 0.5 * std::acos(std::clamp(c, -1.0, 1.0)));
}

Quat conj_by(const Quat& g, const Quat& q) { return qmul(qmul(g, q), qinv(g)); }

double quat_angle(const Quat& q) { return std::atan2(q.imag().norm(), q.w); }

}  // namespace

std::pair<long, long> arc_endpoints(const TorusKnot& T, int a, int b) {
    if (a < 1 || a > T.p - 1 || b < 1 || b > T.q - 1 || (a - b) % 2 != 0)
        throw InvalidInput("arc_endpoints: invalid arc label");
    std::set<long> in_range;
    for (int sa : {+a, -a}) {
        for (int sb : {+b, -b}) {
            long s = solve_congruence_pair(T.p, T.q, sa, sb);
            if (s >= 1 && s <= long(T.p) * T.q - 1) in_range.insert(s);
        }
    }
    if (in_range.size() != 2)
        throw Error("arc_endpoints: expected exactly two solutions in range");
    auto it = in_range.begin();
    long c = *it++;
    long d = *it;
    return {c, d};
}

std::vector<ArcDescriptor> enumerate_arcs(const TorusKnot& T) {
    std::vector<ArcDescriptor> arcs;
    for (int a = 1; a <= T.p - 1; ++a) {
        for (int b = 1; b <= T.q - 1; ++b) {
            if ((a - b) % 2 != 0) continue;
            auto [c, d] = arc_endpoints(T, a, b);
            arcs.push_back({a, b, c, d});
        }
    }
    return arcs;
}

std::pair<Quat, Quat> arc_rep(const TorusKnot& T, const ArcDescriptor& arc, double psi) {
    Quat qx = qrot(kE1, double(arc.a) * M_PI / double(T.p));
    Quat qy = qrot({std::cos(psi), std::sin(psi), 0}, double(arc.b) * M_PI / double(T.q));
    return {qx, qy};
}

double meridian_trace_angle(const TorusKnot& T, const ArcDescriptor& arc, double psi) {
    auto [qx, qy] = arc_rep(T, arc, psi);
    Quat qm = torus_meridian(T).evaluate(qx, qy);
    if (qm.imag().norm() <= 1e-9)
        throw CentralElement("meridian_trace_angle: meridian image is central");
    return quat_angle(qm);
}

RepLoop build_zeta_loop(const TorusKnot& T, const ArcDescriptor& arc, int samples) {
    const long pq = long(T.p) * T.q;
    const double eps = 1e-4;
    const int N = std::max(samples, 16);
    GroupWord muw = torus_meridian(T);

    std::vector<double> psis(N);
    std::vector<double> thetas(N);
    for (int i = 0; i < N; ++i) {
        psis[i] = eps + (M_PI - 2 * eps) * double(i) / double(N - 1);
        thetas[i] = meridian_trace_angle(T, arc, psis[i]);
    }

    double c_theta = double(arc.c) * M_PI / double(pq);
    double d_theta = double(arc.d) * M_PI / double(pq);

    // Traverse the arc from the d endpoint down to the c endpoint, then the
    // reducible interval from c back up to d.
    bool starts_at_d = std::abs(thetas.front() - d_theta) < std::abs(thetas.front() - c_theta);
    if (!starts_at_d) {
        std::reverse(psis.begin(), psis.end());
        std::reverse(thetas.begin(), thetas.end());
    }
    if (std::abs(thetas.front() - d_theta) > 1e-6 || std::abs(thetas.back() - c_theta) > 1e-6) {
        std::ostringstream os;
        os << "build_zeta_loop: junction mismatch " << std::abs(thetas.front() - d_theta)
           << " / " << std::abs(thetas.back() - c_theta);
        throw JunctionMismatch(os.str());
    }

    double zeta0 = (arc.a % 2 == 0) ? 0.0 : M_PI;

    RepLoop out;
    out.provenance = LoopProvenance::TorusZeta;
    out.theta_mu.reserve(2 * N);
    out.theta_lambda.reserve(2 * N);
    for (int i = 0; i < N; ++i) {
        out.theta_mu.push_back(thetas[i]);
        out.theta_lambda.push_back(zeta0 - double(pq) * thetas[i]);
    }
    for (int j = 1; j <= N; ++j) {
        double s = double(arc.c) + double(arc.d - arc.c) * double(j) / double(N);
        double mu = s * M_PI / double(pq);
        double zeta = zeta0 + (s - double(arc.c)) * M_PI;
        out.theta_mu.push_back(mu);
        out.theta_lambda.push_back(zeta - double(pq) * mu);
    }

    auto psis_sp = std::make_shared<std::vector<double>>(psis);
    TorusKnot Tc = T;
    ArcDescriptor ac = arc;
    out.point_at = [psis_sp, Tc, ac, muw, pq, N](double t) {
        const auto& P = *psis_sp;
        double u = std::clamp(t, 0.0, 1.0) * double(2 * N - 1);
        LoopPoint lp;
        if (u <= double(N - 1)) {
            std::size_t j = std::min<std::size_t>(std::size_t(u), N - 2);
            double frac = u - double(j);
            double psi = P[j] + frac * (P[j + 1] - P[j]);
            auto [qx, qy] = arc_rep(Tc, ac, psi);
            Quat qm = muw.evaluate(qx, qy);
            Quat g = align_to_e1(axis_of(qm));
            lp.qx = conj_by(g, qx);
            lp.qy = conj_by(g, qy);
            lp.mu_angle = quat_angle(qm);
        } else {
            double v = (u - double(N - 1)) / double(N);  // 0..1 across reducible part
            double s = double(ac.c) + double(ac.d - ac.c) * std::clamp(v, 0.0, 1.0);
            double mu = s * M_PI / double(pq);
            lp.qx = qrot(kE1, double(Tc.q) * mu);
            lp.qy = qrot(kE1, double(Tc.p) * mu);
            lp.mu_angle = mu;
        }
        Quat qzeta = qpow(lp.qx, Tc.p);
        Quat qmu = muw.evaluate(lp.qx, lp.qy);
        Quat ql = qmul(qzeta, qpow(qmu, -pq));
        lp.lambda_angle = circle_angle(ql, kE1, 1e-6);
        return lp;
    };
    out.eval_mu = [muw](const Quat& qx, const Quat& qy) { return muw.evaluate(qx, qy); };
    int p = T.p;
    out.eval_lambda = [muw, p, pq](const Quat& qx, const Quat& qy) {
        return qmul(qpow(qx, p), qpow(muw.evaluate(qx, qy), -pq));
    };
    return out;
}

TorusSlope TorusSlope::make(const TorusKnot& T, long m, long n) {
    if (n < 0) {
        m = -m;
        n = -n;
    }
    if (std::gcd(std::abs(m), n) != 1)
        throw InvalidInput("slope: m/n must be in lowest terms");
    if (n == 0) m = 1;  // meridian
    TorusSlope s;
    s.m = m;
    s.n = n;
    s.g = m - long(T.p) * T.q * n;
    s.h = n;
    return s;
}

Witness construct_witness(const TorusKnot& T, const TorusSlope& slope) {
    const long pq = long(T.p) * T.q;
    const long g = slope.g, h = slope.h;
    if (std::abs(g) < 2)
        throw InvalidInput("construct_witness: need |g| >= 2");
    const long absg = std::abs(g);
    GroupWord muw = torus_meridian(T);

    // rho(alpha) = rho(mu)^g rho(zeta)^h with rho(zeta) = (-1)^a, so a
    // meridian angle k*pi/|g| gives rho(alpha) = (-1)^(k + a*h): the target
    // multiple must satisfy k = a*h mod 2 and lie inside the arc's endpoint
    // interval.
    auto try_arc = [&](const ArcDescriptor& arc) -> std::optional<Witness> {
        double lo = double(arc.c) * M_PI / double(pq);
        double hi = double(arc.d) * M_PI / double(pq);
        long k = std::lround(std::ceil(lo * double(absg) / M_PI));
        long parity = ((long(arc.a) * h) % 2 + 2) % 2;
        if ((k % 2 + 2) % 2 != parity) ++k;

        // Among admissible multiples take the one farthest from the endpoints:
        // targets near an endpoint are nearly reducible and make a poor
        // witness.
        long best_k = -1;
        double best_margin = 0;
        for (long kk = k; double(kk) * M_PI / double(absg) <= hi + 1e-12; kk += 2) {
            double target = double(kk) * M_PI / double(absg);
            double margin = std::min(target - lo, hi - target);
            if (margin > best_margin + 1e-12) {
                best_margin = margin;
                best_k = kk;
            }
        }

        const int B = 1024;
        const double eps = 1e-6;
        if (best_k >= 0) {
            long kcur = best_k;
            double target = double(kcur) * M_PI / double(absg);
            if (target <= lo + 1e-12 || target >= hi - 1e-12) return std::nullopt;
            // First bracket from the left, then bisection.
            double prev_psi = eps, prev_f = meridian_trace_angle(T, arc, eps) - target;
            for (int i = 1; i <= B; ++i) {
                double psi = eps + (M_PI - 2 * eps) * double(i) / double(B);
                double f = meridian_trace_angle(T, arc, psi) - target;
                if (prev_f * f <= 0) {
                    double a = prev_psi, b = psi, fa = prev_f;
                    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
                        double m = 0.5 * (a + b);
                        double fm = meridian_trace_angle(T, arc, m) - target;
                        if (fa * fm <= 0) {
                            b = m;
                        } else {
                            a = m;
                            fa = fm;
                        }
                    }
                    double psi_star = 0.5 * (a + b);
                    Witness w;
                    w.arc = arc;
                    w.psi = psi_star;
                    w.theta = target;
                    auto [qx, qy] = arc_rep(T, arc, psi_star);
                    w.qx = qx;
                    w.qy = qy;
                    Quat qmu = muw.evaluate(qx, qy);
                    Quat qzeta = qpow(qx, T.p);
                    Quat qalpha = qmul(qpow(qmu, g), qpow(qzeta, h));
                    w.alpha_error = qdist(qalpha, identityQ());
                    w.commutator_dist = commutator_distance(qx, qy);
                    return w;
                }
                prev_psi = psi;
                prev_f = f;
            }
        }
        return std::nullopt;
    };

    // Preferred arc: A_(1,1) for pq even, else the A_(a,c) built from the odd
    // element c of {(q+p)/2, (q-p)/2}.  Some slopes admit no suitable angle
    // multiple there (e.g. |g| = 3 on the (3,4) knot, whose A_(1,1) interval
    // is [pi/12, 7pi/12]); fall back to the remaining arcs in lex order.
    std::vector<ArcDescriptor> candidates;
    if (pq % 2 == 0) {
        auto [c, d] = arc_endpoints(T, 1, 1);
        candidates.push_back({1, 1, c, d});
    } else {
        long c1 = (T.q + T.p) / 2, c2 = (T.q - T.p) / 2;
        long b = (c1 % 2 == 1) ? c1 : c2;
        long am = ((b % T.p) + T.p) % T.p;
        long a = (am % 2 == 1) ? am : T.p - am;
        auto [c, d] = arc_endpoints(T, int(a), int(b));
        candidates.push_back({int(a), int(b), c, d});
    }
    for (const ArcDescriptor& arc : enumerate_arcs(T))
        if (!(arc == candidates.front())) candidates.push_back(arc);

    for (const ArcDescriptor& arc : candidates)
        if (auto w = try_arc(arc)) return *w;
    throw NoParityMultiple("construct_witness: no admissible multiple of pi/|g| in any arc interval");
}

SurgeryVerdict classify_surgery(const TorusKnot& T, const TorusSlope& slope) {
    SurgeryVerdict v;
    if (slope.n == 0) {
        v.kind = VerdictKind::MeridianExcluded;
        v.case_number = 0;
        return v;
    }
    GroupWord muw = torus_meridian(T);
    const long pq = long(T.p) * T.q;
    auto central_witness = [&](const ArcDescriptor& arc, const Quat& expected) {
        Witness w;
        w.arc = arc;
        w.psi = M_PI / 2;
        auto [qx, qy] = arc_rep(T, arc, w.psi);
        w.qx = qx;
        w.qy = qy;
        w.theta = meridian_trace_angle(T, arc, w.psi);
        Quat qmu = muw.evaluate(qx, qy);
        Quat qlambda = qmul(qpow(qx, T.p), qpow(qmu, -pq));
        Quat qalpha = qmul(qpow(qmu, slope.m), qpow(qlambda, slope.n));
        w.alpha_error = qdist(qalpha, expected);
        w.commutator_dist = commutator_distance(qx, qy);
        return w;
    };

    if (slope.g == 0) {
        if (T.p > 2) {
            v.kind = VerdictKind::IrreducibleSU2;
            v.case_number = 1;
            auto [c, d] = arc_endpoints(T, 2, 2);
            v.witness = central_witness({2, 2, c, d}, identityQ());
        } else {
            v.kind = VerdictKind::NonabelianSO3Only;
            v.case_number = 2;
            auto [c, d] = arc_endpoints(T, 1, 1);
            v.witness = central_witness({1, 1, c, d}, minusIdentityQ());
        }
        return v;
    }
    if (std::abs(slope.g) == 1) {
        v.kind = VerdictKind::AllSO3Abelian;
        v.case_number = 3;
        return v;
    }
    v.kind = VerdictKind::IrreducibleSU2;
    v.case_number = 4;
    v.witness = construct_witness(T, slope);
    return v;
}

}  // namespace repknot
