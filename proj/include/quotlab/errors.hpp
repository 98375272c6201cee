#pragma once

#include <stdexcept>
#include <string>

namespace quotlab {

// Mixing incompatible coefficient domains (different moduli, or rational
// with prime-field), or dividing by zero.
struct ArithmeticDomainError : std::runtime_error {
  explicit ArithmeticDomainError(const std::string& what) : std::runtime_error(what) {}
};

// Dimension mismatch between operands.
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Eigenvalue data does not split over the base field, or support is not
// reduced to the origin where required.
struct SupportNotSplit : std::runtime_error {
  explicit SupportNotSplit(const std::string& what) : std::runtime_error(what) {}
};

struct StabilityError : std::runtime_error {
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires a graded (homogeneous) input.
struct GradingError : std::runtime_error {
  explicit GradingError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct NotFoundError : std::runtime_error {
  explicit NotFoundError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfCatalogError : std::runtime_error {
  explicit OutOfCatalogError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input files or command lines (CLI exit code 2).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quotlab
