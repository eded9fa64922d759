#pragma once

#include <stdexcept>

namespace xdiscord {

// A state or argument lies outside the domain where a formula is defined
// (off the tetrahedron, negative eigenvalue, log of a negative number).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input: non-finite numbers, grid sizes below the minimum.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation produced a non-finite value after all limit handling.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xdiscord
