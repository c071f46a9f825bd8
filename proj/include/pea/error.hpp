#pragma once

#include <stdexcept>
#include <string>

namespace pea {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element was used with a group whose carrier has a different shape.
class carrier_mismatch : public error {
 public:
  using error::error;
};

/// Checked integer arithmetic left the int64 range.
class overflow_error : public error {
 public:
  using error::error;
};

/// An enumeration would exceed its caller-supplied budget (or is infinite).
class budget_exceeded : public error {
 public:
  using error::error;
};

/// Malformed input text: descriptors, element literals, `pea v1` files.
class parse_error : public error {
 public:
  using error::error;
};

/// A documented precondition of an operation does not hold.
class precondition_error : public error {
 public:
  using error::error;
};

/// A refinement oracle could not supply a table or a lower bound.
class oracle_failure : public error {
 public:
  using error::error;
};

}  // namespace pea
