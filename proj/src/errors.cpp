#include "newtonpoly/errors.hpp"

namespace newtonpoly {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NotGeneric: return "NotGeneric";
        case ErrorKind::NoUniqueCandidate: return "NoUniqueCandidate";
        case ErrorKind::EvaluationZero: return "EvaluationZero";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::Unbounded: return "Unbounded";
        case ErrorKind::GenericityFailure: return "GenericityFailure";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::RootCoincidence: return "RootCoincidence";
        case ErrorKind::PathCrossing: return "PathCrossing";
        case ErrorKind::TrackingFailure: return "TrackingFailure";
        case ErrorKind::Indeterminate: return "Indeterminate";
        case ErrorKind::AmbiguousCluster: return "AmbiguousCluster";
        case ErrorKind::RateViolation: return "RateViolation";
        case ErrorKind::OracleExhausted: return "OracleExhausted";
        case ErrorKind::Inconsistent: return "Inconsistent";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse:
        case ErrorKind::InvalidArgument:
        case ErrorKind::Unbounded:
            return 2;
        case ErrorKind::Inconsistent:
        case ErrorKind::AmbiguousCluster:
            return 4;
        default:
            return 3;
    }
}

}  // namespace newtonpoly
