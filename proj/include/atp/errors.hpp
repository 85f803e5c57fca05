#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atp {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Errors that signal a mathematically invalid request (wrong degree, failed
/// precondition, ...). The CLI maps these to exit code 1.
class MathError : public Error {
 public:
  using Error::Error;
};

/// Errors caused by malformed input. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

#define ATP_DEFINE_ERROR(Name, Base)            \
  class Name : public Base {                    \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Base(std::string(#Name ": ") + what) {} \
  };

ATP_DEFINE_ERROR(DivisionByZero, MathError)
ATP_DEFINE_ERROR(ChartMismatch, MathError)
ATP_DEFINE_ERROR(KindMismatch, MathError)
ATP_DEFINE_ERROR(DegreeError, MathError)
ATP_DEFINE_ERROR(ArityError, MathError)
ATP_DEFINE_ERROR(PreconditionViolated, MathError)
ATP_DEFINE_ERROR(NotInvertible, MathError)
ATP_DEFINE_ERROR(DimensionError, MathError)
ATP_DEFINE_ERROR(UnverifiedStructure, MathError)
ATP_DEFINE_ERROR(NonPolynomialStructure, MathError)
ATP_DEFINE_ERROR(UnknownCoordinate, InputError)
ATP_DEFINE_ERROR(InvalidChart, InputError)

#undef ATP_DEFINE_ERROR

/// Positioned error raised by the expression and spec-file parser.
class ParseError : public InputError {
 public:
  enum class Kind { syntax, unknown_symbol, degree_inference, non_closed_aux_table, degree };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + kind_name(kind) + ": " +
                   message),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  static const char* kind_name(Kind kind) noexcept {
    switch (kind) {
      case Kind::syntax: return "SyntaxError";
      case Kind::unknown_symbol: return "UnknownSymbol";
      case Kind::degree_inference: return "DegreeInferenceError";
      case Kind::non_closed_aux_table: return "NonClosedAuxTable";
      case Kind::degree: return "DegreeError";
    }
    return "ParseError";
  }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace atp
