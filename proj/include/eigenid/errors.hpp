#pragma once

#include <stdexcept>
#include <string>

namespace eigenid {

// Base class for all library errors. Subclasses are typed so callers can
// distinguish recoverable conditions (DegenerateEigenvalue) from bugs
// (InternalInconsistency).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class AsymmetricInput : public Error {
 public:
  using Error::Error;
};

class NonFiniteEntry : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class MatrixTooSmall : public Error {
 public:
  using Error::Error;
};

class FileNotFound : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// The spectrum has a repeated eigenvalue at the requested index; individual
// eigenvector components are not uniquely determined.
class DegenerateEigenvalue : public Error {
 public:
  DegenerateEigenvalue(const std::string& msg, double gap)
      : Error(msg), gap_(gap) {}
  double gap() const { return gap_; }

 private:
  double gap_ = 0.0;
};

// A running product in the naive sequential evaluation left the finite range.
class NonFiniteIntermediate : public Error {
 public:
  using Error::Error;
};

class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class SignRecoveryFailure : public Error {
 public:
  using Error::Error;
};

class VariantDisagreement : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MissingReference : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class OracleCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace eigenid
