#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "repknot/pairing.hpp"
#include "repknot/quat.hpp"
#include "repknot/words.hpp"

namespace repknot {

// Character arc A_(a,b) with reducible endpoint residues (c, d), c < d.
struct ArcDescriptor {
    int a = 1;
    int b = 1;
    long c = 0;
    long d = 0;
    bool operator==(const ArcDescriptor&) const = default;
};

// Solve the four sign-combination congruence systems
//   s = +-a mod 2p, s = +-b mod 2q
// exactly, returning the two solutions in {1, ..., pq-1}, ascending.
std::pair<long, long> arc_endpoints(const TorusKnot& T, int a, int b);

// All (p-1)(q-1)/2 arcs, sorted lexicographically by (a, b).
std::vector<ArcDescriptor> enumerate_arcs(const TorusKnot& T);

// rho(x) = qrot((1,0,0), a pi/p), rho(y) = qrot((cos psi, sin psi, 0), b pi/q).
std::pair<Quat, Quat> arc_rep(const TorusKnot& T, const ArcDescriptor& arc, double psi);

// Quaternion angle of the meridian image in (0, pi).
double meridian_trace_angle(const TorusKnot& T, const ArcDescriptor& arc, double psi);

// Closed loop through the arc and the reducible interval, with ints winding
// nu(zeta) = (d - c)/2.
RepLoop build_zeta_loop(const TorusKnot& T, const ArcDescriptor& arc, int samples = 1024);

// Slope alpha = mu^m lambda^n = mu^g zeta^h with g = m - pq*n, h = n.
struct TorusSlope {
    long m = 1;
    long n = 0;
    long g = 0;
    long h = 0;

    static TorusSlope make(const TorusKnot& T, long m, long n);
};

enum class VerdictKind {
    IrreducibleSU2,
    NonabelianSO3Only,
    AllSO3Abelian,
    MeridianExcluded,
};

struct Witness {
    Quat qx, qy;
    ArcDescriptor arc;
    double psi = 0;
    double theta = 0;        // target meridian angle
    double alpha_error = 0;  // |rho(alpha) -+ 1| per the case contract
    double commutator_dist = 0;
};

struct SurgeryVerdict {
    VerdictKind kind = VerdictKind::MeridianExcluded;
    int case_number = 0;  // 1-4 per the surgery trichotomy, 0 for meridian
    std::optional<Witness> witness;
};

SurgeryVerdict classify_surgery(const TorusKnot& T, const TorusSlope& slope);

// Explicit representation with rho(alpha) = 1 for |g| >= 2.
Witness construct_witness(const TorusKnot& T, const TorusSlope& slope);

}  // namespace repknot
