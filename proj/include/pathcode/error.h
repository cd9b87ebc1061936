#ifndef PATHCODE_ERROR_H_
#define PATHCODE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathcode {

// Bad user input: malformed files, invalid instances, undecodable packets.
// The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax or validation error at a specific line of a text input.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// An internal invariant did not hold (e.g. Kraft violated after rounding).
// The CLI maps these to exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pathcode

#endif  // PATHCODE_ERROR_H_
