#pragma once

#include <stdexcept>
#include <string>

namespace anneal_probe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Pauli word or term list that does not describe a valid operator.
class MalformedOperatorError : public Error {
 public:
  using Error::Error;
};

/// An argument broke a documented precondition (non-Hermitian input,
/// non-uniform grid, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A time or frequency outside the range an operation is defined on.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The fixed-step integrator drifted beyond tolerance; use a smaller dt.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// A requested energy level is degenerate with a neighbour.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Too few data points or an otherwise under-determined request.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// No dispersion curve could be identified in the measured spectra.
class UnidentifiableError : public Error {
 public:
  using Error::Error;
};

/// Invalid or unreadable configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace anneal_probe
