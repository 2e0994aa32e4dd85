#pragma once

#include <stdexcept>
#include <string>

namespace qhopf {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class NoSuchRoot : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// A property guaranteed by a theorem failed on the given datum. This means the
/// datum violates an axiom in a way the caller did not detect; re-run the full
/// verifier on it.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class MissingR : public Error {
 public:
  MissingR() : Error("datum has no R-matrix") {}
};

class InvalidTwist : public Error {
 public:
  using Error::Error;
};

class Exhausted : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, double required)
      : Error(std::move(what)), required_(required) {}
  double required() const noexcept { return required_; }

 private:
  double required_;
};

class ParseError : public Error {
 public:
  ParseError(std::string reason, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
              reason),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class UndefinedName : public Error {
 public:
  using Error::Error;
};

}  // namespace qhopf
