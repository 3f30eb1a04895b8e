#include "stlmon/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "stlmon/errors.hpp"

namespace stlmon {

const std::vector<double>& DiscreteTrace::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return columns[i];
  }
  throw UnknownVariable("trace has no column '" + name + "'");
}

void DiscreteTrace::add(std::string name, std::vector<double> values) {
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

PredicateCase relative_case(const std::set<std::string>& vars, const std::set<std::string>& u,
                            const std::set<std::string>& v) {
  auto in = [](const std::set<std::string>& s, const std::string& x) { return s.count(x) > 0; };
  bool subset_uv = std::all_of(vars.begin(), vars.end(), [&](const auto& x) { return in(u, x) || in(v, x); });
  if (!subset_uv) return PredicateCase::zero;
  bool subset_v = std::all_of(vars.begin(), vars.end(), [&](const auto& x) { return in(v, x); });
  return subset_v ? PredicateCase::pole : PredicateCase::value;
}

PredicateCase predicate_case(const std::set<std::string>& vars, SemanticsMode mode, const IoSignature& io) {
  switch (mode) {
    case SemanticsMode::standard: return PredicateCase::value;
    case SemanticsMode::output_robustness: {
      // U = X_O, V = X \ X_O: always covered; a value iff some output occurs.
      bool any_output = std::any_of(vars.begin(), vars.end(),
                                    [&](const auto& x) { return io.lookup(x) == IoKind::output; });
      return any_output ? PredicateCase::value : PredicateCase::pole;
    }
    case SemanticsMode::input_vacuity: {
      // U = X_I, V = empty.
      bool all_inputs = std::all_of(vars.begin(), vars.end(),
                                    [&](const auto& x) { return io.lookup(x) == IoKind::input; });
      if (!all_inputs) return PredicateCase::zero;
      return vars.empty() ? PredicateCase::pole : PredicateCase::value;
    }
  }
  return PredicateCase::value;
}

ExtReal apply_case(PredicateCase c, double f_value) {
  switch (c) {
    case PredicateCase::zero: return ExtReal::finite(0.0);
    case PredicateCase::value: return ExtReal::finite(f_value);
    case PredicateCase::pole: return sign_inf(f_value);
  }
  return ExtReal::finite(f_value);
}

namespace {

double evaluate_at(const Expr& expr, const std::map<std::string, double>& valuation) {
  std::vector<std::string> order;
  std::vector<double> values;
  CompiledExpr compiled(expr, [&](const std::string& path) {
    auto it = valuation.find(path);
    if (it == valuation.end()) throw UnknownVariable("no value for variable '" + path + "'");
    order.push_back(path);
    values.push_back(it->second);
    return values.size() - 1;
  });
  return compiled.evaluate(values);
}

class Evaluator {
 public:
  Evaluator(const DiscreteTrace& w, SemanticsMode mode, const IoSignature& io)
      : w_(w), n_(static_cast<std::int64_t>(w.length())), mode_(mode), io_(io) {}

  std::vector<ExtReal> series(const Formula& f) const {
    switch (f.kind()) {
      case FormulaKind::predicate: return predicate(f);
      case FormulaKind::constant:
        return std::vector<ExtReal>(n_, f.constant_value() ? ExtReal::pos_inf() : ExtReal::neg_inf());
      default: break;
    }
    std::vector<std::vector<ExtReal>> kids;
    for (std::size_t i = 0; i < f.arity(); ++i) kids.push_back(series(f.child(i)));
    std::vector<ExtReal> out(n_);
    for (std::int64_t t = 0; t < n_; ++t) out[t] = at(f, kids, t);
    return out;
  }

 private:
  std::vector<ExtReal> predicate(const Formula& f) const {
    const Comparison& cmp = f.comparison();
    Expr rob = cmp.robustness_expr();
    std::set<std::string> vars = cmp.variables();
    PredicateCase c = predicate_case(vars, mode_, io_);
    std::vector<const std::vector<double>*> cols;
    std::vector<std::string> names(vars.begin(), vars.end());
    for (const auto& name : names) cols.push_back(&w_.column(name));
    CompiledExpr compiled(rob, [&](const std::string& path) {
      return static_cast<std::size_t>(std::find(names.begin(), names.end(), path) - names.begin());
    });
    std::vector<ExtReal> out(n_);
    std::vector<double> valuation(names.size());
    for (std::int64_t t = 0; t < n_; ++t) {
      for (std::size_t i = 0; i < cols.size(); ++i) valuation[i] = (*cols[i])[t];
      out[t] = apply_case(c, compiled.evaluate(valuation));
    }
    return out;
  }

  static std::int64_t steps(const Duration& d) { return d.whole_units(); }

  ExtReal at(const Formula& f, const std::vector<std::vector<ExtReal>>& k, std::int64_t t) const {
    const std::int64_t kNone = -1;
    std::int64_t a = has_interval(f.kind()) ? steps(f.interval().lo) : 0;
    std::int64_t b = has_interval(f.kind()) && f.interval().hi ? steps(*f.interval().hi) : kNone;
    switch (f.kind()) {
      case FormulaKind::negation: return -k[0][t];
      case FormulaKind::conjunction: return min(k[0][t], k[1][t]);
      case FormulaKind::disjunction: return max(k[0][t], k[1][t]);
      case FormulaKind::implication: return max(-k[0][t], k[1][t]);
      case FormulaKind::previous: return t >= 1 ? k[0][t - 1] : ExtReal::neg_inf();
      case FormulaKind::next: return t + 1 < n_ ? k[0][t + 1] : ExtReal::neg_inf();
      case FormulaKind::rise: {
        // prev(not f) and f
        ExtReal prev_not = t >= 1 ? -k[0][t - 1] : ExtReal::neg_inf();
        return min(prev_not, k[0][t]);
      }
      case FormulaKind::fall: {
        ExtReal prev = t >= 1 ? k[0][t - 1] : ExtReal::neg_inf();
        return min(prev, -k[0][t]);
      }
      case FormulaKind::once:
      case FormulaKind::historically: {
        const bool is_max = f.kind() == FormulaKind::once;
        ExtReal acc = is_max ? ExtReal::neg_inf() : ExtReal::pos_inf();
        std::int64_t from = b == kNone ? 0 : std::max<std::int64_t>(0, t - b);
        for (std::int64_t u = from; u <= t - a; ++u) acc = is_max ? max(acc, k[0][u]) : min(acc, k[0][u]);
        return acc;
      }
      case FormulaKind::eventually:
      case FormulaKind::always: {
        const bool is_max = f.kind() == FormulaKind::eventually;
        ExtReal acc = is_max ? ExtReal::neg_inf() : ExtReal::pos_inf();
        std::int64_t to = b == kNone ? n_ - 1 : std::min(n_ - 1, t + b);
        for (std::int64_t u = t + a; u <= to; ++u) acc = is_max ? max(acc, k[0][u]) : min(acc, k[0][u]);
        return acc;
      }
      case FormulaKind::since: {
        // max over t' in [t-b, t-a] of min(x2[t'], min over (t', t] of x1)
        ExtReal best = ExtReal::neg_inf();
        std::int64_t from = b == kNone ? 0 : std::max<std::int64_t>(0, t - b);
        for (std::int64_t tp = from; tp <= t - a; ++tp) {
          ExtReal inner = ExtReal::pos_inf();
          for (std::int64_t u = tp + 1; u <= t; ++u) inner = min(inner, k[0][u]);
          best = max(best, min(k[1][tp], inner));
        }
        return best;
      }
      case FormulaKind::until: {
        // max over t' in [t+a, t+b] of min(x2[t'], min over [t, t') of x1)
        ExtReal best = ExtReal::neg_inf();
        std::int64_t to = b == kNone ? n_ - 1 : std::min(n_ - 1, t + b);
        for (std::int64_t tp = t + a; tp <= to; ++tp) {
          ExtReal inner = ExtReal::pos_inf();
          for (std::int64_t u = t; u < tp; ++u) inner = min(inner, k[0][u]);
          best = max(best, min(k[1][tp], inner));
        }
        return best;
      }
      case FormulaKind::delay: return t >= a ? k[0][t - a] : ExtReal::neg_inf();
      case FormulaKind::delayed_until: {
        // Until over [a, b] at t - b, with the left operand arriving one
        // step late: max over r in [t-b+a, t] of min(y2[r], min over
        // (t-b, r] of y1).
        if (t < b) return ExtReal::neg_inf();
        ExtReal best = ExtReal::neg_inf();
        for (std::int64_t r = t - b + a; r <= t; ++r) {
          ExtReal inner = ExtReal::pos_inf();
          for (std::int64_t q = t - b + 1; q <= r; ++q) inner = min(inner, k[0][q]);
          best = max(best, min(k[1][r], inner));
        }
        return best;
      }
      default: break;
    }
    throw std::logic_error("oracle: unhandled formula kind");
  }

  const DiscreteTrace& w_;
  std::int64_t n_;
  SemanticsMode mode_;
  const IoSignature& io_;
};

}  // namespace

ExtReal relative_predicate(const Expr& expr, const std::map<std::string, double>& valuation,
                           const std::set<std::string>& u, const std::set<std::string>& v) {
  std::set<std::string> vars;
  expr.collect_variables(vars);
  double value = evaluate_at(expr, valuation);
  return apply_case(relative_case(vars, u, v), value);
}

ExtReal eval_predicate(const Expr& expr, const std::map<std::string, double>& valuation, SemanticsMode mode,
                       const IoSignature& io) {
  std::set<std::string> vars;
  expr.collect_variables(vars);
  double value = evaluate_at(expr, valuation);
  return apply_case(predicate_case(vars, mode, io), value);
}

std::vector<ExtReal> offline_series(const Formula& f, const DiscreteTrace& w, SemanticsMode mode,
                                    const IoSignature& io) {
  return Evaluator(w, mode, io).series(f);
}

ExtReal offline_robustness(const Formula& f, const DiscreteTrace& w, std::size_t t, SemanticsMode mode,
                           const IoSignature& io) {
  if (t >= w.length()) {
    throw IndexOutOfRange("index " + std::to_string(t) + " outside trace of length " + std::to_string(w.length()));
  }
  return offline_series(f, w, mode, io)[t];
}

}  // namespace stlmon
