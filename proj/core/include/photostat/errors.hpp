#pragma once

#include <stdexcept>

namespace photostat {

/// Argument outside the mathematical domain of a function.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Band too wide for the narrow-band mode-count approximation.
struct NarrowBandError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical evaluation produced a non-finite or otherwise unusable value.
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Entropy curvature had the wrong sign for a stable equilibrium.
struct CurvatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Time-scale ordering required by a synthesis was not satisfied.
struct SeparationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested problem exceeds a size budget.
struct SizeError : std::length_error {
    using std::length_error::length_error;
};

/// Probability mass lost to a Fock-space cutoff exceeds the allowed bound.
struct LeakageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal invariant that should hold by construction was violated.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Occupancy above the exclusion cap.
struct ExclusionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace photostat
