#pragma once

#include <stdexcept>
#include <string>

namespace bandwagon {

/// A matrix or parameter violates a model precondition (zero rows, entries
/// outside {-1,0,1}, non-finite values, malformed CSV content, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bandwagon
