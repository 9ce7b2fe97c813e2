#pragma once

#include <stdexcept>
#include <string>

namespace bsa {

// Dimension mismatch between tensors; message names both shapes.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration or argument values.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures: missing files, unwritable paths.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weights-file load failures, kept distinct so callers can tell them apart.
struct LoadError : DataError {
    using DataError::DataError;
};
struct WeightsVersionError : LoadError {
    using LoadError::LoadError;
};
struct WeightsDimensionError : LoadError {
    using LoadError::LoadError;
};
struct WeightsFormatError : LoadError {
    using LoadError::LoadError;
};

// Sequence too short for an operation that needs real tokens.
struct InsufficientLengthError : DataError {
    using DataError::DataError;
};

}  // namespace bsa
