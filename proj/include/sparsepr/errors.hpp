#pragma once

#include <stdexcept>
#include <string>

namespace sparsepr {

// Base classes map onto CLI exit codes: AlgorithmError -> 2,
// ResourceError -> 3, IoError -> 4. Everything else is a usage bug.
struct AlgorithmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EmptyMeasurement : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};
struct TooFewDistances : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};
struct GraphStepDeficient : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};
struct VerificationFailed : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};
struct OracleTooLarge : ResourceError {
    using ResourceError::ResourceError;
};
struct NoAnchorPair : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};
struct SupportIncomplete : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};
struct CompletionInfeasible : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};
struct NonConvergence : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};
struct DegenerateMatrix : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};
struct RecoveryFailed : AlgorithmError {
    using AlgorithmError::AlgorithmError;
};

} // namespace sparsepr
