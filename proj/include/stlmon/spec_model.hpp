#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "stlmon/duration.hpp"
#include "stlmon/formula.hpp"

namespace stlmon {

enum class IoKind { input, output };

/// Input/output signature of variables. A declared root such as `cmd`
/// covers every dotted path below it (`cmd.linear.x`).
class IoSignature {
 public:
  /// Throws std::invalid_argument if `path` is already declared with the
  /// other kind.
  void declare(const std::string& path, IoKind kind);

  /// Kind of the closest declared prefix of `path`, if any.
  std::optional<IoKind> lookup(const std::string& path) const;
  bool declared(const std::string& path) const { return lookup(path).has_value(); }

  bool empty() const { return kinds_.empty(); }
  const std::map<std::string, IoKind>& entries() const { return kinds_; }

  friend bool operator==(const IoSignature&, const IoSignature&) = default;

 private:
  std::map<std::string, IoKind> kinds_;
};

enum class SemanticsMode { standard, output_robustness, input_vacuity };

std::optional<SemanticsMode> parse_semantics_mode(std::string_view text);
std::string_view to_string(SemanticsMode mode);

struct DiscreteTime {
  Duration period = Duration::of(1, TimeUnit::s);

  friend bool operator==(const DiscreteTime&, const DiscreteTime&) = default;
};

struct DenseTime {
  friend bool operator==(const DenseTime&, const DenseTime&) = default;
};

using TimeDomain = std::variant<DiscreteTime, DenseTime>;

struct Annotation {
  std::string key;
  std::string text;
  SourcePos pos;

  friend bool operator==(const Annotation& a, const Annotation& b) { return a.key == b.key && a.text == b.text; }
};

struct NamedFormula {
  std::string name;
  Formula formula;
  SourcePos pos;
};

struct SpecModel {
  IoSignature io;
  std::vector<Annotation> annotations;
  std::vector<std::string> imports;
  SemanticsMode mode = SemanticsMode::standard;
  std::vector<NamedFormula> formulas;
  TimeDomain time_domain = DiscreteTime{};

  const NamedFormula* find(const std::string& name) const;

  /// Variables referenced by any formula, sorted.
  std::set<std::string> variables() const;

  bool dense() const { return std::holds_alternative<DenseTime>(time_domain); }
};

}  // namespace stlmon
