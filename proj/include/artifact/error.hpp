#pragma once

#include <stdexcept>
#include <string>

namespace artifact {

// Error taxonomy maps onto CLI exit codes: ValidationError -> 1,
// IoError / BackendError -> 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data, invariant violations, bad configuration.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Filesystem and stream failures.
struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

// External translation backend failures (non-zero exit, missing table
// entry, protocol violation).
struct BackendError : Error {
  explicit BackendError(const std::string& msg) : Error(msg) {}
};

}  // namespace artifact
