#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphlim {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph file could not be read.
class ParseError : public Error {
 public:
  enum class Kind { Malformed, Loop, DuplicateLabel, NodeOutOfRange };

  ParseError(Kind kind, std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// A step graphon failed validation.
class InvalidGraphon : public Error {
 public:
  enum class Kind { Shape, NegativeWeight, WeightSum, Asymmetric, OutOfRange, BadRange, Domain };

  InvalidGraphon(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Bad argument to an operation (absent edge, missing anchor, length mismatch, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured size limit would be exceeded.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Jacobi iteration hit its sweep cap before reaching tolerance.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace graphlim
