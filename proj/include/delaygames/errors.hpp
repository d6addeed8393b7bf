#pragma once

#include <stdexcept>
#include <string>

namespace delaygames {

/// Malformed input document (invalid JSON, missing or mistyped fields).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed input violating a semantic invariant (duplicate or missing
/// transition, out-of-range state, unknown symbol, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured budget (vertex count, layer count, enumeration size) was
/// exceeded before the computation finished.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace delaygames
