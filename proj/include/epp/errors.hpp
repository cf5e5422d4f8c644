#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: unknown names, arity or alphabet
/// mismatches, bad files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a regex or formula. `position` is a byte offset into the
/// source text.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A formula or action model lies outside the fragment a procedure handles
/// (modal conditions, quantified post-conditions for the decision procedure).
class FragmentError : public Error {
 public:
  using Error::Error;
};

/// A configurable cap (determinization states, class count, label space)
/// was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Product update filtered out every world.
class EmptyModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace epp
