#pragma once

#include <stdexcept>

namespace needletkit {

/// Malformed or unsupported input data (files, schemas, payloads).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure (NaN/Inf mid-iteration, divergence).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace needletkit
