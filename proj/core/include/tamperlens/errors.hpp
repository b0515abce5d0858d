#pragma once

#include <stdexcept>
#include <string>

namespace tamperlens {

// Base class for every error raised by this library. Argument-domain
// violations (negative sigma, out-of-range coverage, ...) throw
// std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed Netpbm input. Each failure mode carries its own kind so a wrong
// magic number can be told apart from a truncated raster.
class ParseError : public Error {
 public:
  enum class Kind { BadMagic, BadHeader, BadDimensions, BadMaxval, Truncated };

  ParseError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Geometric estimation failure (DLT, RANSAC, rotation-angle extraction).
class EstimationError : public Error {
 public:
  enum class Kind { TooFewPairs, Degenerate, NoConsensus, UndefinedAngle };

  EstimationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Reference-set problems during threshold calibration.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Persisted-profile or dataset-layout violations.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Filesystem access or per-file decode failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tamperlens
