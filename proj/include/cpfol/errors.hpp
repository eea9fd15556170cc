#pragma once

#include <stdexcept>
#include <string>

namespace cpfol {

// Contract violations detected before (or instead of) running numerics:
// bad input data, unsatisfied structural preconditions.  CLI maps these
// to exit code 3.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failures inside numeric routines: tolerance not reached, step size
// collapse, degeneracy that survived the structural checks.  CLI maps
// these to exit code 4.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files or option values.  CLI maps these to exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- polynomial layer ---
struct ZeroPolynomial : PreconditionError {
    using PreconditionError::PreconditionError;
};

// --- foliation layer ---
struct BothZero : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NotRelativelyPrime : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct LineIsLeaf : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct ConstantK : PreconditionError {
    using PreconditionError::PreconditionError;
};

// --- singularity layer ---
struct InfinityNotLeaf : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NonSimpleRoot : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct ResultantDegenerate : NumericError {
    using NumericError::NumericError;
};
struct NotHyperbolic : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct ResonantDivisor : PreconditionError {
    using PreconditionError::PreconditionError;
};

// --- transport layer ---
struct PoleEncountered : NumericError {
    using NumericError::NumericError;
};
struct StepUnderflow : NumericError {
    using NumericError::NumericError;
};
struct ToleranceNotMet : NumericError {
    using NumericError::NumericError;
};
struct RadiusTooLarge : PreconditionError {
    using PreconditionError::PreconditionError;
};

// --- germ layer ---
struct ContractionRadiusNotFound : NumericError {
    using NumericError::NumericError;
};

// --- metric layer ---
struct SingularPoint : PreconditionError {
    using PreconditionError::PreconditionError;
};

} // namespace cpfol
