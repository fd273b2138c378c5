#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hehucc {

// Base for every error thrown by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedElementError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

class BasisFileError : public Error {
 public:
  using Error::Error;
};

class SectorViolationError : public Error {
 public:
  SectorViolationError(const std::string& what, double leakage)
      : Error(what), leakage_(leakage) {}
  double leakage() const noexcept { return leakage_; }

 private:
  double leakage_;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  using Error::Error;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Thrown when the objective returns NaN/inf. Carries the point that produced it.
class OptimizerError : public Error {
 public:
  OptimizerError(const std::string& what, std::vector<double> point)
      : Error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

}  // namespace hehucc
