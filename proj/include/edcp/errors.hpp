#pragma once

#include <stdexcept>
#include <string>

namespace edcp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input data (CSV parse failures, NaN coordinates).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A tuning parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Split index k outside 2 <= k <= n-2.
class SplitError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Sample too small for the requested statistic.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Parameters are individually valid but leave nothing to scan.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// All pairwise distances are (numerically) zero, so the studentized
/// statistic is undefined.
class DegenerateScaleError : public Error {
 public:
  using Error::Error;
};

}  // namespace edcp
