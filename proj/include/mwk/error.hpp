#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mwk {

/// Raised when an operation's precondition is violated (bad field spec,
/// division by zero, mixed fields, failed certificate, ...).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the element and expression parsers. `position()` is a byte
/// offset into the text that was being parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error("at " + std::to_string(position) + ": " + what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mwk
