#pragma once

#include <stdexcept>
#include <string>

namespace bdfeas {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar argument is outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share an alphabet (or dimension) do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured resource cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A dataset contains a symbol with zero probability under every hypothesis.
class ImpossibleSampleError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent experiment configuration (prior vs. flavor, unknown detector id, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometric or statistical input (e.g. single-class training data).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace bdfeas
