#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible shapes (wrong factor count, vector length, design).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (empty fraction, strength out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input: design strings, counting vectors, run lists, matrices, bases.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A coefficient table does not reconstruct to nonnegative integer counts.
class NotCountingFunction : public Error {
 public:
  using Error::Error;
};

/// Hilbert basis search hit its element or wall-clock budget. No partial basis is returned.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t frontier_size)
      : Error(what + " (frontier size " + std::to_string(frontier_size) + ")"),
        frontier_size_(frontier_size) {}

  std::size_t frontier_size() const noexcept { return frontier_size_; }

 private:
  std::size_t frontier_size_;
};

}  // namespace oa
