#ifndef CORANK_ERROR_HPP_
#define CORANK_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corank {

/// Malformed user input (germ text, ranges, configuration).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t position, const std::string& message)
      : InputError("parse error at position " + std::to_string(position) + ": " + message),
        position_(position),
        detail_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

/// The germ is well formed but violates a mathematical precondition
/// (corank other than 1, non-prenormal input).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace corank

#endif  // CORANK_ERROR_HPP_
