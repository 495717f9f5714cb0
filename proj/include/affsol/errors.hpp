#pragma once

#include <stdexcept>
#include <string>

namespace affsol {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Frenet frame was requested where the discrete speed estimate vanishes.
struct DegenerateSample : Error {
    using Error::Error;
};

/// An affine map with (numerically) singular linear part was applied.
struct SingularMap : Error {
    using Error::Error;
};

/// Evaluation time outside [0, t_max).
struct TimeOutOfRange : Error {
    using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance.
struct QuadratureFailure : Error {
    QuadratureFailure(const std::string& msg, double achieved)
        : Error(msg), achieved_error(achieved) {}
    double achieved_error;
};

/// A required normal-form parameter was absent or out of range.
struct MissingParameter : Error {
    using Error::Error;
};

/// Family constants violate the constraints of the solution family.
struct InvalidConstants : Error {
    using Error::Error;
};

/// Parametrization window too close to the w = 1 pole of the scooper family.
struct WindowTouchesPole : Error {
    using Error::Error;
};

/// Adaptive step size underflowed (stiffness or finite-time blow-up).
struct StepUnderflow : Error {
    using Error::Error;
};

/// Phase trajectory started at the singular point of the vector field.
struct SingularStart : Error {
    using Error::Error;
};

/// Trajectory too short to extract the requested oscillation data.
struct TooFewOscillations : Error {
    using Error::Error;
};

/// Trajectory is not in the regime the check applies to.
struct WrongRegime : Error {
    using Error::Error;
};

/// Separatrix bisection endpoints classify identically.
struct BracketFailure : Error {
    using Error::Error;
};

/// Curve could not be verified as a soliton before a flow-residual run.
struct NotASoliton : Error {
    using Error::Error;
};

/// Malformed input file (CSV and friends).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace affsol
