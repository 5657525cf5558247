#pragma once

#include <stdexcept>
#include <string>

namespace schwarzflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// curve_geometry
class DegenerateCurveError : public Error {
 public:
  using Error::Error;
};
class InsufficientStencilError : public Error {
 public:
  using Error::Error;
};
class TopologyError : public Error {
 public:
  using Error::Error;
};

// exact_solutions / schwarz_calculus
class OutOfWindowError : public Error {
 public:
  using Error::Error;
};
class SingularParameterError : public Error {
 public:
  using Error::Error;
};
class DomainError : public Error {
 public:
  using Error::Error;
};
class ResolutionError : public Error {
 public:
  using Error::Error;
};
class SingularDerivativeError : public Error {
 public:
  using Error::Error;
};

// flow_engine
class NeedsResampleError : public Error {
 public:
  using Error::Error;
};
class NumericalBlowupError : public Error {
 public:
  using Error::Error;
};

}  // namespace schwarzflow
