#include "stlmon/spec_model.hpp"

#include <stdexcept>

namespace stlmon {

void IoSignature::declare(const std::string& path, IoKind kind) {
  auto [it, inserted] = kinds_.emplace(path, kind);
  if (!inserted && it->second != kind) {
    throw std::invalid_argument("variable '" + path + "' declared as both input and output");
  }
}

std::optional<IoKind> IoSignature::lookup(const std::string& path) const {
  std::string prefix = path;
  while (true) {
    if (auto it = kinds_.find(prefix); it != kinds_.end()) return it->second;
    auto dot = prefix.rfind('.');
    if (dot == std::string::npos) return std::nullopt;
    prefix.resize(dot);
  }
}

std::optional<SemanticsMode> parse_semantics_mode(std::string_view text) {
  if (text == "standard") return SemanticsMode::standard;
  if (text == "output-robustness") return SemanticsMode::output_robustness;
  if (text == "input-vacuity") return SemanticsMode::input_vacuity;
  return std::nullopt;
}

std::string_view to_string(SemanticsMode mode) {
  switch (mode) {
    case SemanticsMode::standard: return "standard";
    case SemanticsMode::output_robustness: return "output-robustness";
    case SemanticsMode::input_vacuity: return "input-vacuity";
  }
  return "?";
}

const NamedFormula* SpecModel::find(const std::string& name) const {
  for (const auto& f : formulas) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::set<std::string> SpecModel::variables() const {
  std::set<std::string> out;
  for (const auto& f : formulas) f.formula.collect_variables(out);
  return out;
}

}  // namespace stlmon
