#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repknot/quat.hpp"

namespace repknot {

// Element m*mu + n*lambda of the peripheral subgroup A = Z^2.
struct PeripheralElement {
    long m = 0;
    long n = 0;

    PeripheralElement operator+(const PeripheralElement& o) const {
        return {m + o.m, n + o.n};
    }
    bool operator==(const PeripheralElement&) const = default;
};

enum class LoopProvenance { TwoBridgeGamma, TorusZeta, UserSupplied };

// A point of a representation loop: generator images (conjugated so the
// meridian lies on the (1,0,0) circle) plus raw principal angles.
struct LoopPoint {
    Quat qx, qy;
    double mu_angle = 0;      // principal value in (-pi, pi]
    double lambda_angle = 0;  // principal value in (-pi, pi]
};

// Sampled closed path of peripheral restrictions.  theta_mu / theta_lambda
// are continuous (unwrapped) lifts; sample i sits at parameter i/(N-1).
struct RepLoop {
    std::vector<double> theta_mu;
    std::vector<double> theta_lambda;
    LoopProvenance provenance = LoopProvenance::UserSupplied;

    // Optional parametric access for refinement (dehn_fill_solve).
    std::function<LoopPoint(double)> point_at;
    // Optional word evaluators for honest verification of rho(alpha).
    std::function<Quat(const Quat&, const Quat&)> eval_mu;
    std::function<Quat(const Quat&, const Quat&)> eval_lambda;

    std::size_t samples() const { return theta_mu.size(); }
};

struct WindingCertificate {
    PeripheralElement element;
    long value = 0;
    double max_step = 0;        // largest |delta theta| along the combination
    double residue = 0;         // |total/2pi - value| before rounding
    std::size_t samples = 0;
};

// (last - first)/2pi rounded to the nearest integer.  The sequence must be
// closed mod 2pi and satisfy the per-step bound |delta| < pi/2.
long winding_number(std::span<const double> angles);

WindingCertificate nu(const RepLoop& loop, const PeripheralElement& a);

struct KernelClass {
    bool full_kernel = false;
    long c = 0;  // nu(loop, lambda); zero iff full_kernel
};

KernelClass kernel_classify(const RepLoop& loop);

struct FilledRep {
    Quat qx, qy;
    double t = 0;               // loop parameter of the solution
    double alpha_error = 0;     // |rho(alpha) - 1|
    double commutator_dist = 0; // |[rho(x), rho(y)] - 1|
};

// Locate t* on the loop with rho(alpha) = 1 (guaranteed by nonzero winding)
// and return the representation there.
FilledRep dehn_fill_solve(const RepLoop& loop, const PeripheralElement& alpha);

// Nearest-branch continuation: lift `raw` (principal value) to the branch
// closest to `prev`.
inline double unwrap_step(double prev, double raw) {
    double two_pi = 2.0 * M_PI;
    double d = raw - std::fmod(prev, two_pi);
    d -= two_pi * std::round(d / two_pi);
    return prev + d;
}

}  // namespace repknot
