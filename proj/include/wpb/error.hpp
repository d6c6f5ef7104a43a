#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wpb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// An evaluation left the real domain of an operation.
class DomainError : public Error {
 public:
  enum class Kind {
    argument,  // function argument outside its domain (sqrt(-1), arccos(2), ...)
    pole,      // division by zero or 0^negative
    overflow,  // result not finite
  };

  DomainError(Kind kind, const std::string& subexpression, double argument,
              const std::string& context = {});

  Kind kind() const noexcept { return kind_; }
  const std::string& subexpression() const noexcept { return subexpression_; }
  double argument() const noexcept { return argument_; }

 private:
  Kind kind_;
  std::string subexpression_;
  double argument_;
};

/// A problem description that cannot be acted on (bad interval, stray variable, ...).
class InvalidProblem : public Error {
 public:
  using Error::Error;
};

}  // namespace wpb
