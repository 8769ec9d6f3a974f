#pragma once

#include <stdexcept>
#include <string>

namespace unicorn {

/// Invalid argument values: bad k, impossible embedding, malformed config.
struct ParameterError : std::invalid_argument {
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Problems with the data itself: unreadable files, mismatched lengths,
/// non-uniform sampling.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Inputs on which the requested quantity is undefined (constant series,
/// all-duplicate point sets).
struct DegenerateInputError : DataError {
  explicit DegenerateInputError(const std::string& what) : DataError(what) {}
};

/// Runtime numeric failures: diverging integration, repeated generation
/// failures.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace unicorn
