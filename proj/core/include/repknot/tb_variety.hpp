#pragma once

#include <array>
#include <optional>
#include <vector>

#include "repknot/pairing.hpp"
#include "repknot/quat.hpp"
#include "repknot/words.hpp"

namespace repknot {

// Burde's slice: rho(x) = qrot((1,0,0), phi), rho(y) = qrot((cos psi, sin psi, 0), phi).
struct SlicePoint {
    double phi = 0;
    double psi = 0;
};

inline Quat slice_x(const SlicePoint& s) { return qrot({1, 0, 0}, s.phi); }
inline Quat slice_y(const SlicePoint& s) {
    return qrot({std::cos(s.psi), std::sin(s.psi), 0}, s.phi);
}

// Imaginary part of rho(W) rho(x) rho(W)^-1 rho(y)^-1, plus its real part
// for branch checking (+1 is the relator branch, -1 is spurious).
struct Residual {
    std::array<double, 3> v{};
    double w = 0;

    double norm() const {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    }
};

Residual residual(const TwoBridgeKnot& K, const SlicePoint& s);

// All dihedral representations: psi in (0, pi) with residual(pi/2, psi) = 0
// on the +1 branch.  Sign-change scan at `samples` points plus bisection.
std::vector<SlicePoint> find_dihedral(const TwoBridgeKnot& K, int samples = 4096);

enum class ArcEnd { Dihedral, ReducibleBoundary, StepLimit };

struct TrackedArc {
    std::vector<SlicePoint> pts;
    ArcEnd end_tag = ArcEnd::StepLimit;
    // Continuity-tracked fixed point of rho(W) at the two ends.
    Vec3 b_start{0, 0, 1};
    Vec3 b_end{0, 0, 1};
    bool pole_switch = false;
};

struct TrackOptions {
    double step = 1e-3;
    int max_steps = 100000;
    double residual_tol = 1e-10;
    double boundary_margin = 1e-4;
    double fd_step = 1e-6;
};

// Predictor-corrector continuation of the residual zero-curve from a
// dihedral (or other on-curve) start point.
TrackedArc track_arc(const TwoBridgeKnot& K, const SlicePoint& start, int direction,
                     const TrackOptions& opts = {});

struct ClosedLoop {
    std::vector<SlicePoint> pts;   // arc then mirrored arc reversed
    std::size_t arc_samples = 0;   // length of the forward arc prefix
};

// Mirror (phi, psi) -> (pi - phi, psi), realizing the sign-flipped
// conjugate-inverse representation in slice coordinates.
inline SlicePoint mirror(const SlicePoint& s) { return {M_PI - s.phi, s.psi}; }

// Find a dihedral-to-dihedral tracked arc with pole switch and close it up
// with its mirror image traversed in reverse.
ClosedLoop build_gamma(const TwoBridgeKnot& K, const TrackOptions& opts = {});

// Spherical rhombus of fixed points A, B, C, D of rho(x), rho(W), rho(y),
// rho(W*); theta is the signed angle at vertex A from arc A->B to arc A->D,
// oriented so the rotation angle of rho(W*W) is 2*theta mod 2*pi.
struct RhombusData {
    Vec3 A, B, C, D;
    double theta = 0;
};

RhombusData rhombus(const TwoBridgeKnot& K, const SlicePoint& s,
                    const RhombusData* prev = nullptr);

// Per-sample circle angles of rho(mu) = rho(x) and rho(beta) on the
// (1,0,0)-axis; lambda angle derived as theta_beta - 2e*phi.
RepLoop peripheral_restriction(const TwoBridgeKnot& K, const ClosedLoop& loop);

}  // namespace repknot
