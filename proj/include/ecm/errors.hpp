#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecm {

/// Malformed input file. `location` is a byte offset or a 1-based line
/// number depending on the format.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t location)
      : std::runtime_error(what), location_(location) {}
  std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

/// A structural invariant of the ECM machinery was violated (no fitting
/// element, ambiguous fit, conflicting repair write, dangling facet...).
/// Always a bug or a broken precondition, never bad user data.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NoElementFits : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

class AmbiguousFit : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

/// derive_bp could not find guards separating two cells.
class AmbiguityUnresolvable : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

}  // namespace ecm
