#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stateop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Register width outside [1, cap].
class InvalidWidthError : public Error {
 public:
  using Error::Error;
};

/// Two operands disagree on register width or length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its documented domain (zero shots, zero target, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The search routines only accept oracles with exactly one marked input.
class UniquenessError : public Error {
 public:
  explicit UniquenessError(std::size_t solution_count)
      : Error("oracle must have exactly one solution, found " +
              std::to_string(solution_count)),
        solution_count_(solution_count) {}

  std::size_t solution_count() const noexcept { return solution_count_; }

 private:
  std::size_t solution_count_;
};

class ScheduleError : public Error {
 public:
  using Error::Error;
};

/// State does not lie in the two-dimensional Grover plane.
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace stateop
