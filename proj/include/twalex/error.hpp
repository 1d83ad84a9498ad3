#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twalex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a semantic requirement.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A mathematical operation called outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Results must not be trusted.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace twalex
