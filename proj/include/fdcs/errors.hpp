#pragma once

#include <stdexcept>
#include <string>

namespace fdcs {

/// Argument outside the mathematical domain of an operation (bad level index,
/// tangent pole, dimension beyond the invariant block, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A requested value cannot be reached (e.g. a target occupation above the
/// supremum of the alpha -> <n> map).
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// A numerical procedure did not converge (tail mass, grid decay, root bracket).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fdcs
