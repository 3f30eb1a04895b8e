#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stlmon/duration.hpp"
#include "stlmon/ext_real.hpp"
#include "stlmon/formula.hpp"
#include "stlmon/spec_model.hpp"

namespace stlmon {

/// Uniformly sampled trace: sample k is at time k * period.
struct DiscreteTrace {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  Duration period = Duration::of(1, TimeUnit::s);

  std::size_t length() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws UnknownVariable.
  const std::vector<double>& column(const std::string& name) const;
  void add(std::string name, std::vector<double> values);
};

/// How a predicate contributes under relative robustness.
enum class PredicateCase {
  zero,   ///< variables outside U and V
  value,  ///< f(w) itself
  pole,   ///< sign(f(w)) * inf
};

/// Three-case rule of U-robustness relative to V, for predicate variables Y.
PredicateCase relative_case(const std::set<std::string>& vars, const std::set<std::string>& u,
                            const std::set<std::string>& v);

/// Case for a predicate under a semantics mode. Standard mode always
/// yields `value`; output robustness uses U = outputs, V = everything
/// else; input vacuity uses U = inputs, V = empty.
PredicateCase predicate_case(const std::set<std::string>& vars, SemanticsMode mode, const IoSignature& io);

/// Applies a case to an already evaluated predicate expression.
ExtReal apply_case(PredicateCase c, double f_value);

/// Relative robustness of `f > 0` at one valuation. Throws UnknownVariable.
ExtReal relative_predicate(const Expr& expr, const std::map<std::string, double>& valuation,
                           const std::set<std::string>& u, const std::set<std::string>& v);

ExtReal eval_predicate(const Expr& expr, const std::map<std::string, double>& valuation, SemanticsMode mode,
                       const IoSignature& io);

/// Reference evaluation of every index. Interval bounds must be resolved
/// to whole sample counts (see resolve_bounds). Cost grows with nested
/// window sizes; this is a test fixture.
std::vector<ExtReal> offline_series(const Formula& f, const DiscreteTrace& w,
                                    SemanticsMode mode = SemanticsMode::standard, const IoSignature& io = {});

/// offline_series(...)[t]; throws IndexOutOfRange unless t < length.
ExtReal offline_robustness(const Formula& f, const DiscreteTrace& w, std::size_t t,
                           SemanticsMode mode = SemanticsMode::standard, const IoSignature& io = {});

}  // namespace stlmon
