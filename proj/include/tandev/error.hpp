#pragma once

#include <stdexcept>
#include <string>

namespace tandev {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two jets expanded at different parameter values were combined.
class BasepointMismatch : public Error {
 public:
  using Error::Error;
};

// Division by a jet whose value vanishes, or normalization of a zero vector.
class ZeroDivision : public Error {
 public:
  using Error::Error;
};

// An exact (rational) computation was requested for data that has no exact
// Taylor expansion at the requested point, e.g. sin(t) at t = 1/2.
class ExactUnavailable : public Error {
 public:
  using Error::Error;
};

// The tangent frame is singular (kappa = 0) at `t`.
class InflectionError : public Error {
 public:
  InflectionError(double t, const std::string& what)
      : Error(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

// A curve has no continuous unit tangent at `t`.
class NotFrontalError : public Error {
 public:
  NotFrontalError(double t, const std::string& what)
      : Error(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

// Wronskian ranks did not reach full rank within the jet-order budget.
class TypeUndetermined : public Error {
 public:
  using Error::Error;
};

// Malformed expression or curve specification. Line and column are 1-based;
// zero means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Argument outside a function's domain (range mismatch, bad dimension, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace tandev
