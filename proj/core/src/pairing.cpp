#include "repknot/pairing.hpp"

#include <algorithm>
#include <cmath>

namespace repknot {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

long winding_number(std::span<const double> angles) {
    if (angles.size() < 2) throw NotClosed("winding_number: need at least 2 samples");
    for (std::size_t i = 1; i < angles.size(); ++i) {
        if (std::abs(angles[i] - angles[i - 1]) >= M_PI / 2)
            throw StepTooLarge("winding_number: step exceeds pi/2; refine the loop");
    }
    double total = angles.back() - angles.front();
    long value = std::lround(total / kTwoPi);
    double residue = std::abs(total / kTwoPi - double(value));
    if (residue * kTwoPi > 1e-6)
        throw NotClosed("winding_number: endpoints not congruent mod 2pi");
    return value;
}

WindingCertificate nu(const RepLoop& loop, const PeripheralElement& a) {
    std::vector<double> combo(loop.samples());
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = double(a.m) * loop.theta_mu[i] + double(a.n) * loop.theta_lambda[i];
    WindingCertificate cert;
    cert.element = a;
    cert.samples = combo.size();
    cert.value = winding_number(combo);
    for (std::size_t i = 1; i < combo.size(); ++i)
        cert.max_step = std::max(cert.max_step, std::abs(combo[i] - combo[i - 1]));
    double total = combo.back() - combo.front();
    cert.residue = std::abs(total / kTwoPi - double(cert.value));
    return cert;
}

KernelClass kernel_classify(const RepLoop& loop) {
    long c = nu(loop, {0, 1}).value;
    return {c == 0, c};
}

FilledRep dehn_fill_solve(const RepLoop& loop, const PeripheralElement& alpha) {
    WindingCertificate cert = nu(loop, alpha);
    if (cert.value == 0)
        throw ZeroWinding("dehn_fill_solve: nu(loop, alpha) = 0");
    if (!loop.point_at)
        throw InvalidInput("dehn_fill_solve: loop carries no parametric back-reference");

    const std::size_t N = loop.samples();
    std::vector<double> theta(N);
    for (std::size_t i = 0; i < N; ++i)
        theta[i] = double(alpha.m) * loop.theta_mu[i] + double(alpha.n) * loop.theta_lambda[i];

    auto lifted = [&](double t, double near_value) {
        LoopPoint p = loop.point_at(t);
        double raw = double(alpha.m) * p.mu_angle + double(alpha.n) * p.lambda_angle;
        return unwrap_step(near_value, raw);
    };

    auto refine = [&](std::size_t idx, double target) -> std::optional<FilledRep> {
        double t_lo = double(idx) / double(N - 1);
        double t_hi = double(idx + 1) / double(N - 1);
        double f_lo = theta[idx] - target;
        double f_hi = theta[idx + 1] - target;
        double t_mid = t_lo, f_mid = f_lo;
        for (int iter = 0; iter < 200; ++iter) {
            t_mid = 0.5 * (t_lo + t_hi);
            f_mid = lifted(t_mid, target + 0.5 * (f_lo + f_hi)) - target;
            if (std::abs(f_mid) < 1e-10) break;
            if (f_lo * f_mid <= 0) {
                t_hi = t_mid;
                f_hi = f_mid;
            } else {
                t_lo = t_mid;
                f_lo = f_mid;
            }
        }
        if (std::abs(f_mid) >= 1e-9) return std::nullopt;
        LoopPoint p = loop.point_at(t_mid);
        FilledRep out;
        out.qx = p.qx;
        out.qy = p.qy;
        out.t = t_mid;
        if (loop.eval_mu && loop.eval_lambda) {
            Quat qa = qmul(qpow(loop.eval_mu(p.qx, p.qy), alpha.m),
                           qpow(loop.eval_lambda(p.qx, p.qy), alpha.n));
            out.alpha_error = qdist(qa, identityQ());
        } else {
            out.alpha_error = std::abs(f_mid);
        }
        out.commutator_dist = commutator_distance(p.qx, p.qy);
        return out;
    };

    // Nonzero winding guarantees at least one multiple of 2pi inside the
    // range of the lifted angle.  A loop may also pass through reducible
    // representations, so refine every crossing and keep the most
    // nonabelian solution (ties broken by smaller t).
    double lo = *std::min_element(theta.begin(), theta.end());
    double hi = *std::max_element(theta.begin(), theta.end());
    long k_lo = std::lround(std::ceil(lo / kTwoPi));
    long k_hi = std::lround(std::floor(hi / kTwoPi));
    std::optional<FilledRep> best;
    for (long k = k_lo; k <= k_hi; ++k) {
        double target = double(k) * kTwoPi;
        if (target <= lo || target >= hi) continue;
        for (std::size_t i = 0; i + 1 < N; ++i) {
            if ((theta[i] - target) * (theta[i + 1] - target) > 0) continue;
            auto cand = refine(i, target);
            if (!cand) continue;
            if (!best || cand->commutator_dist > best->commutator_dist + 1e-12)
                best = cand;
        }
    }
    if (!best)
        throw RefinementStalled("dehn_fill_solve: no crossing refined to tolerance");
    return *best;
}

}  // namespace repknot
