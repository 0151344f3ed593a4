#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jseg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (empty sequence, out-of-range field).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Timestamps or intervals arrived out of order.
class OrderingError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace jseg
