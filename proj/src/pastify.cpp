#include "stlmon/pastify.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "stlmon/errors.hpp"
#include "stlmon/parser.hpp"

namespace stlmon {

namespace {

constexpr std::int64_t kStep = Duration::kScale;

Duration units(std::int64_t scaled) { return Duration::from_scaled(scaled, true); }

std::int64_t lo_of(const Formula& f) { return f.interval().lo.scaled(); }
std::int64_t hi_of(const Formula& f) { return f.interval().hi->scaled(); }

bool unbounded_root_future(const Formula& f) {
  return (f.kind() == FormulaKind::always || f.kind() == FormulaKind::eventually) && !f.interval().bounded();
}

Duration resolve_duration(const Duration& d, const TimeDomain& domain) {
  if (const auto* discrete = std::get_if<DiscreteTime>(&domain)) {
    return Duration::units(duration_to_samples(d, discrete->period));
  }
  // Dense: timed durations are stored in ns and unitless ones in 1e-9
  // seconds, so the scaled value is already in seconds * 1e9.
  return units(d.scaled());
}

std::int64_t future_horizon(const Formula& f, TimeKind kind) {
  switch (f.kind()) {
    case FormulaKind::predicate:
    case FormulaKind::constant: return 0;
    case FormulaKind::next: return future_horizon(f.operand(), kind) + kStep;
    case FormulaKind::eventually:
    case FormulaKind::always:
      if (!f.interval().bounded()) {
        throw UnboundedFuture(std::string(to_string(f.kind())) + " below the root must have a bounded interval");
      }
      return hi_of(f) + future_horizon(f.operand(), kind);
    case FormulaKind::until: {
      if (!f.interval().bounded()) throw UnboundedFuture("until must have a bounded interval");
      std::int64_t h1 = future_horizon(f.lhs(), kind);
      std::int64_t h2 = future_horizon(f.rhs(), kind);
      if (kind == TimeKind::discrete) h1 -= kStep;
      return hi_of(f) + std::max(h1, h2);
    }
    default: break;
  }
  std::int64_t h = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) h = std::max(h, future_horizon(f.child(i), kind));
  return h;
}

// Lookback of past operators that enclose future operators. Past-only
// subtrees are delayed whole by the pastifier and evaluate exactly, so they
// contribute nothing.
std::optional<std::int64_t> past_depth(const Formula& f) {
  if (!f.contains_future()) return 0;
  auto children_max = [&]() -> std::optional<std::int64_t> {
    std::int64_t m = 0;
    for (std::size_t i = 0; i < f.arity(); ++i) {
      auto l = past_depth(f.child(i));
      if (!l) return std::nullopt;
      m = std::max(m, *l);
    }
    return m;
  };
  auto inner = children_max();
  switch (f.kind()) {
    case FormulaKind::once:
    case FormulaKind::historically:
    case FormulaKind::since:
      if (!inner || !f.interval().bounded()) return std::nullopt;
      return hi_of(f) + *inner;
    case FormulaKind::previous:
    case FormulaKind::rise:
    case FormulaKind::fall:
      if (!inner) return std::nullopt;
      return kStep + *inner;
    case FormulaKind::next: {
      if (!inner) return std::nullopt;
      return std::max<std::int64_t>(*inner - kStep, 0);
    }
    case FormulaKind::eventually:
    case FormulaKind::always: {
      if (!inner) return std::nullopt;
      return std::max<std::int64_t>(*inner - lo_of(f), 0);
    }
    case FormulaKind::until: {
      auto l1 = past_depth(f.lhs());
      auto l2 = past_depth(f.rhs());
      if (!l1 || !l2) return std::nullopt;
      return std::max<std::int64_t>({*l1, *l2 - lo_of(f), 0});
    }
    default: return inner;
  }
}

// G[a,inf) f == G(G[a,a] f) and likewise for F, so the root rewrite only
// needs the [0,inf) case.
Formula normalize_root(const Formula& f) {
  if (!unbounded_root_future(f)) return f;
  if (f.interval().lo.is_zero()) return f;
  Interval point{f.interval().lo, f.interval().lo};
  return Formula::unary(f.kind(), Formula::unary(f.kind(), f.operand(), point));
}

Formula make_delay(std::int64_t d, const Formula& f) {
  assert(d >= 0);
  if (d == 0) return f;
  if (f.kind() == FormulaKind::delay) return make_delay(d + f.shift().scaled(), f.operand());
  return Formula::delay(units(d), f);
}

Formula make_window(FormulaKind kind, std::int64_t width, const Formula& f) {
  if (width == 0) return f;
  return Formula::unary(kind, f, Interval{Duration::zero(), units(width)});
}

class Pastifier {
 public:
  explicit Pastifier(TimeKind kind) : kind_(kind) {}

  Formula run(const Formula& f, std::int64_t d) const {
    if (d < 0) throw std::logic_error("negative pastification shift");
    switch (f.kind()) {
      case FormulaKind::predicate:
      case FormulaKind::constant:
      case FormulaKind::delay:
      case FormulaKind::delayed_until: return make_delay(d, f);
      case FormulaKind::negation: return Formula::negation(run(f.operand(), d));
      case FormulaKind::conjunction: return Formula::conjunction(run(f.lhs(), d), run(f.rhs(), d));
      case FormulaKind::disjunction: return Formula::disjunction(run(f.lhs(), d), run(f.rhs(), d));
      case FormulaKind::implication:
        return Formula::disjunction(Formula::negation(run(f.lhs(), d)), run(f.rhs(), d));
      case FormulaKind::next:
        // d covers the whole formula, so it is at least one step here.
        assert(d >= kStep);
        return run(f.operand(), d - kStep);
      case FormulaKind::eventually:
        return make_window(FormulaKind::once, hi_of(f) - lo_of(f), run(f.operand(), d - hi_of(f)));
      case FormulaKind::always:
        return make_window(FormulaKind::historically, hi_of(f) - lo_of(f), run(f.operand(), d - hi_of(f)));
      case FormulaKind::until: {
        std::int64_t b = hi_of(f);
        std::int64_t lag = kind_ == TimeKind::discrete ? kStep : 0;
        return Formula::delayed_until(f.interval(), run(f.lhs(), d - b + lag), run(f.rhs(), d - b));
      }
      default: break;
    }
    // Past temporal operators.
    if (!f.contains_future()) return make_delay(d, f);
    std::vector<Formula> children;
    for (std::size_t i = 0; i < f.arity(); ++i) children.push_back(run(f.child(i), d));
    return f.with_children(std::move(children));
  }

 private:
  TimeKind kind_;
};

}  // namespace

std::optional<Duration> HorizonReport::warmup() const {
  if (!past_depth) return std::nullopt;
  return units(horizon.scaled() + past_depth->scaled());
}

Formula resolve_bounds(const Formula& f, const TimeDomain& domain) {
  const bool dense = std::holds_alternative<DenseTime>(domain);
  if (dense && (f.kind() == FormulaKind::next || f.kind() == FormulaKind::previous ||
                f.kind() == FormulaKind::rise || f.kind() == FormulaKind::fall)) {
    throw UnsupportedOperator("'" + std::string(to_string(f.kind())) + "' has no meaning in dense time");
  }
  std::vector<Formula> children;
  for (std::size_t i = 0; i < f.arity(); ++i) children.push_back(resolve_bounds(f.child(i), domain));
  if (f.kind() == FormulaKind::predicate || f.kind() == FormulaKind::constant) return f;
  Formula out = f.with_children(std::move(children));
  if (!has_interval(f.kind())) return out;
  Interval iv{resolve_duration(f.interval().lo, domain), std::nullopt};
  if (f.interval().hi) iv.hi = resolve_duration(*f.interval().hi, domain);
  if (f.kind() == FormulaKind::delay) return Formula::delay(iv.lo, out.operand());
  if (is_binary_kind(f.kind())) return Formula::binary(f.kind(), out.lhs(), out.rhs(), iv).with_pos(f.pos());
  return Formula::unary(f.kind(), out.operand(), iv).with_pos(f.pos());
}

HorizonReport horizon(const Formula& f, TimeKind kind) {
  Formula root = normalize_root(f);
  HorizonReport report;
  if (unbounded_root_future(root)) {
    report.horizon = units(future_horizon(root.operand(), kind));
    auto l = past_depth(root.operand());
    if (l) report.past_depth = units(*l);
    return report;
  }
  report.horizon = units(future_horizon(root, kind));
  if (auto l = past_depth(root)) report.past_depth = units(*l);
  return report;
}

PastifiedFormula pastify_formula(const Formula& f, TimeKind kind) {
  HorizonReport report = horizon(f, kind);
  Formula root = normalize_root(f);
  Pastifier p(kind);
  const std::int64_t d = report.horizon.scaled();
  Formula out = [&] {
    if (unbounded_root_future(root)) {
      FormulaKind past = root.kind() == FormulaKind::always ? FormulaKind::historically : FormulaKind::once;
      return Formula::unary(past, p.run(root.operand(), d));
    }
    return p.run(root, d);
  }();
  return {out.with_pos(f.pos()), report};
}

SpecModel pastify(const SpecModel& model) {
  SpecModel out = model;
  for (auto& nf : out.formulas) {
    Formula resolved = resolve_bounds(nf.formula, model.time_domain);
    nf.formula = pastify_formula(resolved, time_kind(model)).formula;
  }
  return out;
}

std::vector<HorizonReport> horizons(const SpecModel& model) {
  std::vector<HorizonReport> out;
  for (const auto& nf : model.formulas) {
    out.push_back(horizon(resolve_bounds(nf.formula, model.time_domain), time_kind(model)));
  }
  return out;
}

}  // namespace stlmon
