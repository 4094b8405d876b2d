#pragma once

#include <stdexcept>
#include <string>

namespace repknot {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied data (non-unit axis, invalid knot parameters, ...).
struct InvalidInput : Error {
    using Error::Error;
};

// axis_of / circle-angle extraction on a central element +-1.
struct CentralElement : Error {
    using Error::Error;
};

// Quaternion does not lie on the requested circle subgroup.
struct OffCircle : Error {
    using Error::Error;
};

// Sign-change scan could not separate two roots at the refinement limit.
struct ScanTooCoarse : Error {
    using Error::Error;
};

// rho(W) central or A = +-C: the spherical rhombus has collapsed.
struct DegenerateRhombus : Error {
    using Error::Error;
};

// Path-tracking corrector failed to converge; the message carries the last
// good point.
struct CorrectorDiverged : Error {
    using Error::Error;
};

// No dihedral-to-dihedral arc with a pole switch was found.
struct NoPoleSwitchFound : Error {
    using Error::Error;
};

// Arc/reducible junction of a zeta-loop exceeded tolerance.
struct JunctionMismatch : Error {
    using Error::Error;
};

// Angle sequence endpoints are not congruent mod 2*pi.
struct NotClosed : Error {
    using Error::Error;
};

// Adjacent angle samples differ by more than the step bound.
struct StepTooLarge : Error {
    using Error::Error;
};

// dehn_fill_solve called with an element of zero winding.
struct ZeroWinding : Error {
    using Error::Error;
};

// Bisection refinement failed to reach the requested tolerance.
struct RefinementStalled : Error {
    using Error::Error;
};

// No multiple of pi/|g| with the required parity lies in the arc interval.
struct NoParityMultiple : Error {
    using Error::Error;
};

}  // namespace repknot
