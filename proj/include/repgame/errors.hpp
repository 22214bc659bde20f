#pragma once

#include <stdexcept>
#include <string>

namespace repgame {

// Input text did not conform to a grammar. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A precondition of an operation was violated (caller error, not input text).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ciphertext or key material that cannot be decoded by the scheme.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace repgame
