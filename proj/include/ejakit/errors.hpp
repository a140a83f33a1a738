#pragma once

#include <stdexcept>
#include <string>

namespace ejakit {

// Operands live in different algebras, or a map/element shape does not match.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input violates a precondition (not an effect, not sharp, not atomic, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Real and complex matrix factors cannot be tensored together.
class MixedKindError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

// Malformed serialized input. `pointer` is a JSON pointer to the offending value.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string pointer, const std::string& message)
      : std::runtime_error(pointer.empty() ? message : pointer + ": " + message),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

// An algorithmic invariant was breached; indicates a bug rather than bad input.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ejakit
