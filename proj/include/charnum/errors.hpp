#ifndef CHARNUM_ERRORS_HPP
#define CHARNUM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charnum {

/// Bad user input: malformed spec, invalid index, violated precondition.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error while parsing polynomial text; carries the byte offset.
class ParseError : public InputError {
public:
  ParseError(const std::string& msg, std::size_t position)
      : InputError(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// A configured budget (pair reductions, monomial operations, retries) ran out.
class ResourceLimitError : public std::runtime_error {
public:
  explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Independent runs that must agree did not; signals an engine bug or
/// persistently unlucky randomness.
class DisagreementError : public std::runtime_error {
public:
  explicit DisagreementError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace charnum

#endif
