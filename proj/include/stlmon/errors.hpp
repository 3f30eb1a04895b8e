#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stlmon {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 1-based position inside a specification text.
struct SourcePos {
  int line = 0;
  int column = 0;

  bool valid() const { return line > 0 && column > 0; }
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, std::string message, std::vector<std::string> expected = {});

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourcePos pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

struct Diagnostic {
  SourcePos pos;
  std::string message;
};

std::string to_string(const Diagnostic& d);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class UnboundedFuture : public Error {
 public:
  using Error::Error;
};

/// Raised when a construct has no meaning in the selected time domain.
class UnsupportedOperator : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class MissingVariable : public Error {
 public:
  using Error::Error;
};

class DuplicateVariable : public Error {
 public:
  using Error::Error;
};

class OutOfOrderUpdate : public Error {
 public:
  using Error::Error;
};

class NonMonotoneTime : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Arithmetic produced a non-finite number or touched a pole.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  FormatError(std::size_t row, std::size_t column, const std::string& message);

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class NonUniformTime : public Error {
 public:
  using Error::Error;
};

}  // namespace stlmon
