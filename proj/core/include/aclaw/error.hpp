#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aclaw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Code { syntax, undeclared_identifier, non_dependent_derivative };
  ParseError(Code code, std::size_t position, const std::string& what)
      : Error(what + " at position " + std::to_string(position)), code_(code), position_(position) {}
  Code code() const noexcept { return code_; }
  std::size_t position() const noexcept { return position_; }

 private:
  Code code_;
  std::size_t position_;
};

// Laurent power of a compound base, function of a compound argument, mixed jets...
class UnsupportedForm : public Error {
 public:
  using Error::Error;
};

// Malformed problem definitions and problem files.
class InputError : public Error {
 public:
  using Error::Error;
};

// Division by zero or an unbound atom during exact evaluation.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class ReconstructionFailed : public Error {
 public:
  using Error::Error;
};

// On-solution elimination would need differential consequences beyond the depth bound.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

}  // namespace aclaw
