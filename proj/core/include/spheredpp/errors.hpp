#pragma once

#include <stdexcept>

namespace spheredpp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument lies outside its admissible range.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Operands live on spheres of different dimension, or the dimension is unsupported.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// The kernel spectrum leaves [0,1], so the point process does not exist.
class ExistenceError : public Error {
public:
  using Error::Error;
};

/// An iterative or adaptive numerical procedure failed to converge.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// The exact sampler detected an inconsistent state (bound or normalization).
class SamplingError : public Error {
public:
  using Error::Error;
};

} // namespace spheredpp
