#pragma once

#include <stdexcept>
#include <string>

namespace kee {

/// Input outside the admissible parameter domain (cone angles, τ range, n).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Query outside the tabulated hull of a TauSMap or a stencil leaving it.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A quadrature did not meet its requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric matrix failed to be positive definite. Indicates a bug.
class PositivityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kee
