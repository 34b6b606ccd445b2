#pragma once

#include <stdexcept>
#include <string>

namespace kregret {

/// Malformed or unreadable input (CSV problems, unknown ids, empty files).
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// CSV cell that cannot be parsed; carries row/column location in the message.
class parse_error : public input_error {
 public:
  parse_error(const std::string& what, std::size_t row, std::size_t col)
      : input_error(what + " (row " + std::to_string(row) + ", column " +
                    std::to_string(col) + ")"),
        row(row),
        col(col) {}
  std::size_t row;
  std::size_t col;
};

/// Violated mathematical precondition (non-positive coordinate, k out of
/// range, dimension mismatch, ...).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Operation only defined in two dimensions was asked for d != 2.
class unsupported_dimension_error : public domain_error {
 public:
  explicit unsupported_dimension_error(std::size_t dim)
      : domain_error("operation requires a two-dimensional dataset, got d=" +
                     std::to_string(dim)) {}
};

/// A resource guard refused to run (e.g. brute-force enumeration too large).
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

/// Broken internal invariant; indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kregret
