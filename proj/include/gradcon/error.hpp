#pragma once

#include <stdexcept>
#include <string>

namespace gradcon {

/// Malformed user input: group strings, JSON files, pair keys.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class FileError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An object failed a mathematical validity check (closure, relations,
/// Jacobi identity, grading compatibility).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments of an operation does not hold.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace gradcon
