#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace newtonpoly {

enum class ErrorKind {
    Parse,
    InvalidArgument,
    // eval oracle
    NotGeneric,
    NoUniqueCandidate,
    EvaluationZero,
    NoConvergence,
    Unbounded,
    // witness oracle
    GenericityFailure,
    DegreeMismatch,
    RootCoincidence,
    PathCrossing,
    TrackingFailure,
    Indeterminate,
    AmbiguousCluster,
    RateViolation,
    // reconstruction
    OracleExhausted,
    Inconsistent,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for an error kind: 2 input error, 3 algorithmic
/// indeterminacy, 4 internal inconsistency.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace newtonpoly
