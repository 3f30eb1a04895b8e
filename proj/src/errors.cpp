#include "stlmon/errors.hpp"

#include <sstream>

namespace stlmon {

namespace {

std::string render(SourcePos pos, const std::string& message, const std::vector<std::string>& expected) {
  std::ostringstream out;
  out << pos.line << ":" << pos.column << ": " << message;
  if (!expected.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      out << (i ? ", " : "") << expected[i];
    }
    out << ")";
  }
  return out.str();
}

std::string render_all(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "\n";
    out += to_string(d);
  }
  return out;
}

}  // namespace

ParseError::ParseError(SourcePos pos, std::string message, std::vector<std::string> expected)
    : Error(render(pos, message, expected)),
      pos_(pos),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::string to_string(const Diagnostic& d) {
  if (!d.pos.valid()) return d.message;
  return std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column) + ": " + d.message;
}

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(render_all(diagnostics)), diagnostics_(std::move(diagnostics)) {}

FormatError::FormatError(std::size_t row, std::size_t column, const std::string& message)
    : Error("row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + message),
      row_(row),
      column_(column) {}

}  // namespace stlmon
