#include "stlmon/dense.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "stlmon/errors.hpp"
#include "stlmon/expr.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/pastify.hpp"

namespace stlmon {

namespace {

using Nanos = std::int64_t;
constexpr Nanos kNone = -1;
constexpr Nanos kForever = std::numeric_limits<Nanos>::max();

struct Event {
  Nanos t;
  ExtReal v;
};
using Events = std::deque<Event>;

Nanos to_nanos(double seconds) {
  if (!std::isfinite(seconds) || std::fabs(seconds) > 9.2e9) {
    throw NonMonotoneTime("time " + format_double(seconds) + " is out of range");
  }
  return static_cast<Nanos>(std::llround(seconds * 1e9));
}

double to_seconds(Nanos t) { return static_cast<double>(t) / 1e9; }

// Index of the last event at or before t, or -1.
std::ptrdiff_t locate(const Events& x, Nanos t) {
  auto it = std::upper_bound(x.begin(), x.end(), t, [](Nanos v, const Event& e) { return v < e.t; });
  return (it - x.begin()) - 1;
}

ExtReal value_at(const Events& x, Nanos t) {
  auto i = locate(x, t);
  return i < 0 ? ExtReal::neg_inf() : x[static_cast<std::size_t>(i)].v;
}

ExtReal fold(bool is_max, ExtReal acc, ExtReal v) { return is_max ? max(acc, v) : min(acc, v); }
ExtReal identity(bool is_max) { return is_max ? ExtReal::neg_inf() : ExtReal::pos_inf(); }

// Extremum over the segments meeting [t - hi, t - lo]; hi == kNone is unbounded.
ExtReal window_extremum(bool is_max, const Events& x, Nanos t, Nanos lo, Nanos hi) {
  ExtReal acc = identity(is_max);
  if (t - lo < 0) return acc;
  for (auto i = locate(x, t - lo); i >= 0; --i) {
    const Event& e = x[static_cast<std::size_t>(i)];
    acc = fold(is_max, acc, e.v);
    if (hi != kNone && e.t <= t - hi) break;
  }
  return acc;
}

struct Piece {
  Nanos t;
  ExtReal v1;
  ExtReal v2;
};

// Segments of the common refinement of x1 and x2 that meet [from, to], in
// time order. The first one contains `from` (or is the first segment).
std::vector<Piece> pieces(const Events& x1, const Events& x2, Nanos from, Nanos to) {
  std::vector<Piece> out;
  if (x1.empty() || x2.empty()) return out;
  std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(locate(x1, from), 0));
  std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(locate(x2, from), 0));
  Nanos s = std::max(x1[i].t, x2[j].t);
  while (s <= to) {
    while (i + 1 < x1.size() && x1[i + 1].t <= s) ++i;
    while (j + 1 < x2.size() && x2[j + 1].t <= s) ++j;
    out.push_back({s, x1[i].v, x2[j].v});
    Nanos next = kForever;
    if (i + 1 < x1.size()) next = x1[i + 1].t;
    if (j + 1 < x2.size()) next = std::min(next, x2[j + 1].t);
    s = next;
  }
  return out;
}

// max over witness segments meeting [t - hi, t - lo] of min(x2 there, x1 on
// every later segment up to t).
ExtReal since_at(const Events& x1, const Events& x2, Nanos t, Nanos lo, Nanos hi) {
  if (t - lo < 0) return ExtReal::neg_inf();
  auto ps = pieces(x1, x2, hi == kNone ? 0 : t - hi, t);
  ExtReal best = ExtReal::neg_inf();
  ExtReal inner = ExtReal::pos_inf();
  for (auto k = ps.size(); k-- > 0;) {
    if (ps[k].t <= t - lo) best = max(best, min(ps[k].v2, inner));
    inner = min(inner, ps[k].v1);
  }
  return best;
}

// Until over [lo, hi] at s - hi: witness segments meeting [s - hi + lo, s]
// weighed against y1 from s - hi up to the witness.
ExtReal delayed_until_at(const Events& y1, const Events& y2, Nanos s, Nanos lo, Nanos hi) {
  if (s < hi) return ExtReal::neg_inf();
  const Nanos u = s - hi;
  auto ps = pieces(y1, y2, u, s);
  ExtReal best = ExtReal::neg_inf();
  ExtReal inner = ExtReal::pos_inf();
  for (std::size_t k = 0; k < ps.size(); ++k) {
    Nanos end = k + 1 < ps.size() ? ps[k + 1].t : kForever;
    if (end > u + lo) best = max(best, min(ps[k].v2, inner));
    inner = min(inner, ps[k].v1);
  }
  return best;
}

Events to_events(const PiecewiseSignal& s) {
  Events out;
  for (const Segment& seg : s.segments) out.push_back({to_nanos(seg.start), seg.value});
  return out;
}

PiecewiseSignal from_events(const std::vector<Event>& events, double end) {
  PiecewiseSignal out;
  for (const Event& e : events) out.segments.push_back({to_seconds(e.t), e.v});
  out.end = end;
  out.normalize();
  return out;
}

Nanos bound_nanos(const Duration& d) { return d.scaled(); }

void add_shifted(std::vector<Nanos>& out, const Events& x, Nanos shift, Nanos from, Nanos to) {
  for (auto i = std::max<std::ptrdiff_t>(locate(x, from - shift), 0); i < static_cast<std::ptrdiff_t>(x.size()); ++i) {
    Nanos t = x[static_cast<std::size_t>(i)].t + shift;
    if (t > to) break;
    if (t >= from) out.push_back(t);
  }
}

void sort_unique(std::vector<Nanos>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void PiecewiseSignal::normalize() {
  std::vector<Segment> out;
  for (const Segment& s : segments) {
    if (!out.empty() && out.back().value == s.value) continue;
    out.push_back(s);
  }
  segments = std::move(out);
}

ExtReal PiecewiseSignal::at(double t) const {
  ExtReal v = ExtReal::neg_inf();
  for (const Segment& s : segments) {
    if (s.start > t) break;
    v = s.value;
  }
  return v;
}

PiecewiseSignal pw_combine(Extremum op, const PiecewiseSignal& s1, const PiecewiseSignal& s2) {
  const bool is_max = op == Extremum::max;
  Events x1 = to_events(s1);
  Events x2 = to_events(s2);
  double end = std::min(s1.end, s2.end);
  std::vector<Event> out;
  for (const Piece& p : pieces(x1, x2, 0, to_nanos(end))) out.push_back({p.t, fold(is_max, p.v1, p.v2)});
  return from_events(out, end);
}

PiecewiseSignal pw_window_extremum(Extremum kind, const PiecewiseSignal& s, const Interval& iv, double frontier) {
  const bool is_max = kind == Extremum::max;
  Events x = to_events(s);
  const Nanos lo = bound_nanos(iv.lo);
  const Nanos hi = iv.hi ? bound_nanos(*iv.hi) : kNone;
  const Nanos end = to_nanos(frontier);
  std::vector<Nanos> cand{0};
  add_shifted(cand, x, 0, 0, end);
  add_shifted(cand, x, lo, 0, end);
  if (hi != kNone) add_shifted(cand, x, hi, 0, end);
  sort_unique(cand);
  std::vector<Event> out;
  for (Nanos t : cand) out.push_back({t, window_extremum(is_max, x, t, lo, hi)});
  return from_events(out, frontier);
}

PiecewiseSignal pw_since(const PiecewiseSignal& s1, const PiecewiseSignal& s2, const Interval& iv, double frontier) {
  Events x1 = to_events(s1);
  Events x2 = to_events(s2);
  const Nanos lo = bound_nanos(iv.lo);
  const Nanos hi = iv.hi ? bound_nanos(*iv.hi) : kNone;
  const Nanos end = to_nanos(frontier);
  std::vector<Nanos> cand{0};
  for (const Events* x : {&x1, &x2}) {
    add_shifted(cand, *x, 0, 0, end);
    add_shifted(cand, *x, lo, 0, end);
    if (hi != kNone) add_shifted(cand, *x, hi, 0, end);
  }
  sort_unique(cand);
  std::vector<Event> out;
  for (Nanos t : cand) out.push_back({t, since_at(x1, x2, t, lo, hi)});
  return from_events(out, frontier);
}

namespace {

struct DenseNode {
  FormulaKind kind = FormulaKind::constant;
  int c0 = -1;
  int c1 = -1;
  Nanos lo = 0;
  Nanos hi = kNone;
  Nanos keep = 0;

  CompiledExpr expr;
  std::vector<std::size_t> expr_vars;
  PredicateCase pcase = PredicateCase::value;
  ExtReal constant;

  Events out;
  std::size_t fresh = 0;
  ExtReal acc;
  Nanos folded = kNone;
};

struct Input {
  Events events;
  Nanos last = kNone;
};

}  // namespace

struct DenseMonitor::Impl {
  SpecModel model;
  std::vector<MonitoredFormula> formulas;
  std::vector<std::string> vars;
  std::vector<Input> inputs;
  std::vector<DenseNode> nodes;
  std::vector<int> roots;
  std::vector<std::optional<ExtReal>> emitted;
  DenseVerdicts verdicts;
  Nanos frontier = kNone;
  // Latest time of declared variables no formula reads; it sets the
  // frontier of a monitor without referenced variables.
  Nanos other_last = kNone;

  int build(const Formula& f);
  std::size_t slot_of(const std::string& name) const;
  void advance(Nanos to);
  void eval(DenseNode& n, Nanos from, Nanos to, const std::vector<Nanos>& clock);
  void prune();
  void reset();
};

std::size_t DenseMonitor::Impl::slot_of(const std::string& name) const {
  auto it = std::lower_bound(vars.begin(), vars.end(), name);
  if (it == vars.end() || *it != name) return vars.size();
  return static_cast<std::size_t>(it - vars.begin());
}

int DenseMonitor::Impl::build(const Formula& f) {
  DenseNode n;
  n.kind = f.kind();
  if (f.arity() > 0) n.c0 = build(f.child(0));
  if (f.arity() > 1) n.c1 = build(f.child(1));
  if (has_interval(f.kind())) {
    n.lo = bound_nanos(f.interval().lo);
    n.hi = f.interval().hi ? bound_nanos(*f.interval().hi) : kNone;
  }
  switch (f.kind()) {
    case FormulaKind::predicate: {
      const Comparison& cmp = f.comparison();
      n.expr = CompiledExpr(cmp.robustness_expr(), [&](const std::string& path) {
        n.expr_vars.push_back(slot_of(path));
        return n.expr_vars.size() - 1;
      });
      n.pcase = predicate_case(cmp.variables(), model.mode, model.io);
      break;
    }
    case FormulaKind::constant:
      n.constant = f.constant_value() ? ExtReal::pos_inf() : ExtReal::neg_inf();
      break;
    case FormulaKind::negation:
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication:
    case FormulaKind::delay:
    case FormulaKind::since:
    case FormulaKind::delayed_until: break;
    case FormulaKind::once: n.acc = ExtReal::neg_inf(); break;
    case FormulaKind::historically: n.acc = ExtReal::pos_inf(); break;
    default:
      throw UnsupportedOperator("'" + std::string(to_string(f.kind())) + "' is not supported in dense time");
  }
  if (f.kind() == FormulaKind::since) n.acc = ExtReal::neg_inf();
  // Lookback each child must keep for this node.
  Nanos need = 0;
  if (f.kind() == FormulaKind::delay) need = n.lo;
  if (has_interval(f.kind()) && f.kind() != FormulaKind::delay) need = n.hi == kNone ? n.lo : n.hi;
  for (int c : {n.c0, n.c1}) {
    if (c >= 0) nodes[static_cast<std::size_t>(c)].keep = std::max(nodes[static_cast<std::size_t>(c)].keep, need);
  }
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size() - 1);
}

void DenseMonitor::Impl::eval(DenseNode& n, Nanos from, Nanos to, const std::vector<Nanos>& clock) {
  std::vector<Nanos> cand = clock;
  const Events* x1 = n.c0 >= 0 ? &nodes[static_cast<std::size_t>(n.c0)].out : nullptr;
  const Events* x2 = n.c1 >= 0 ? &nodes[static_cast<std::size_t>(n.c1)].out : nullptr;
  for (const Events* x : {x1, x2}) {
    if (!x) continue;
    add_shifted(cand, *x, 0, from, to);
    switch (n.kind) {
      case FormulaKind::delay: add_shifted(cand, *x, n.lo, from, to); break;
      case FormulaKind::once:
      case FormulaKind::historically:
      case FormulaKind::since:
        add_shifted(cand, *x, n.lo, from, to);
        if (n.hi != kNone) add_shifted(cand, *x, n.hi, from, to);
        break;
      case FormulaKind::delayed_until:
        add_shifted(cand, *x, n.hi - n.lo, from, to);
        add_shifted(cand, *x, n.hi, from, to);
        break;
      default: break;
    }
  }
  sort_unique(cand);

  const std::size_t before = n.out.size();
  std::vector<double> valuation(n.expr_vars.size());
  for (Nanos t : cand) {
    ExtReal v;
    switch (n.kind) {
      case FormulaKind::predicate:
        for (std::size_t i = 0; i < n.expr_vars.size(); ++i) {
          valuation[i] = value_at(inputs[n.expr_vars[i]].events, t).to_double();
        }
        v = apply_case(n.pcase, n.expr.evaluate(valuation));
        break;
      case FormulaKind::constant: v = n.constant; break;
      case FormulaKind::negation: v = -value_at(*x1, t); break;
      case FormulaKind::conjunction: v = min(value_at(*x1, t), value_at(*x2, t)); break;
      case FormulaKind::disjunction: v = max(value_at(*x1, t), value_at(*x2, t)); break;
      case FormulaKind::implication: v = max(-value_at(*x1, t), value_at(*x2, t)); break;
      case FormulaKind::delay: v = t < n.lo ? ExtReal::neg_inf() : value_at(*x1, t - n.lo); break;
      case FormulaKind::once:
      case FormulaKind::historically: {
        const bool is_max = n.kind == FormulaKind::once;
        if (n.hi != kNone) {
          v = window_extremum(is_max, *x1, t, n.lo, n.hi);
          break;
        }
        if (t - n.lo >= 0) {
          auto i = locate(*x1, n.folded) + 1;
          for (; i < static_cast<std::ptrdiff_t>(x1->size()); ++i) {
            const Event& e = (*x1)[static_cast<std::size_t>(i)];
            if (e.t > t - n.lo) break;
            n.acc = fold(is_max, n.acc, e.v);
          }
          n.folded = t - n.lo;
        }
        v = n.acc;
        break;
      }
      case FormulaKind::since: {
        if (n.hi != kNone) {
          v = since_at(*x1, *x2, t, n.lo, n.hi);
          break;
        }
        if (t - n.lo < 0) {
          v = ExtReal::neg_inf();
          break;
        }
        for (const Piece& p : pieces(*x1, *x2, n.folded + 1, t - n.lo)) {
          if (p.t <= n.folded) continue;
          n.acc = max(p.v2, min(p.v1, n.acc));
        }
        n.folded = t - n.lo;
        ExtReal recent = ExtReal::pos_inf();
        if (n.lo > 0) {
          for (const Piece& p : pieces(*x1, *x2, t - n.lo + 1, t)) {
            if (p.t > t - n.lo) recent = min(recent, p.v1);
          }
        }
        v = min(n.acc, recent);
        break;
      }
      case FormulaKind::delayed_until: v = delayed_until_at(*x1, *x2, t, n.lo, n.hi); break;
      default: throw std::logic_error("dense monitor: unexpected node");
    }
    n.out.push_back({t, v});
  }
  n.fresh = n.out.size() - before;
}

void DenseMonitor::Impl::advance(Nanos to) {
  const Nanos from = frontier == kNone ? 0 : frontier + 1;
  // Every input event is a tick of every node, so all signals share the
  // input partition of the time line.
  std::vector<Nanos> clock;
  if (frontier == kNone) clock.push_back(0);
  for (const Input& in : inputs) add_shifted(clock, in.events, 0, from, to);
  sort_unique(clock);
  for (DenseNode& n : nodes) eval(n, from, to, clock);
  frontier = to;
}

void DenseMonitor::Impl::prune() {
  auto trim = [&](Events& x, Nanos keep) {
    auto i = locate(x, frontier - keep);
    if (i > 0) x.erase(x.begin(), x.begin() + i);
  };
  for (Input& in : inputs) trim(in.events, 0);
  for (DenseNode& n : nodes) trim(n.out, n.keep);
}

void DenseMonitor::Impl::reset() {
  for (Input& in : inputs) in = Input{};
  for (DenseNode& n : nodes) {
    n.out.clear();
    n.fresh = 0;
    n.folded = kNone;
    if (n.kind == FormulaKind::once || n.kind == FormulaKind::since) n.acc = ExtReal::neg_inf();
    if (n.kind == FormulaKind::historically) n.acc = ExtReal::pos_inf();
  }
  for (auto& e : emitted) e.reset();
  for (auto& v : verdicts) v.second.clear();
  frontier = kNone;
  other_last = kNone;
}

DenseMonitor::DenseMonitor(const SpecModel& model) : impl_(std::make_unique<Impl>()) {
  if (!model.dense()) throw UnsupportedOperator("dense monitor needs a dense time domain");
  Impl& m = *impl_;
  m.model = model;
  auto refs = model.variables();
  m.vars.assign(refs.begin(), refs.end());
  m.inputs.resize(m.vars.size());
  for (const auto& nf : model.formulas) {
    Formula resolved = resolve_bounds(nf.formula, model.time_domain);
    PastifiedFormula p = pastify_formula(resolved, TimeKind::dense);
    m.formulas.push_back({nf.name, nf.formula, p.formula, p.report});
    m.roots.push_back(m.build(p.formula));
    m.verdicts.emplace_back(nf.name, std::vector<Segment>{});
  }
  m.emitted.resize(m.roots.size());
}

DenseMonitor::~DenseMonitor() = default;
DenseMonitor::DenseMonitor(DenseMonitor&&) noexcept = default;
DenseMonitor& DenseMonitor::operator=(DenseMonitor&&) noexcept = default;

const DenseVerdicts& DenseMonitor::update(std::span<const VariableBatch> batch) {
  Impl& m = *impl_;
  for (auto& v : m.verdicts) v.second.clear();

  // Validate everything before touching state.
  std::vector<std::pair<std::size_t, std::vector<Event>>> accepted;
  Nanos other_last = kNone;
  std::vector<Nanos> last(m.inputs.size());
  for (std::size_t i = 0; i < m.inputs.size(); ++i) last[i] = m.inputs[i].last;
  for (const VariableBatch& vb : batch) {
    std::size_t slot = m.slot_of(vb.name);
    const bool referenced = slot < m.vars.size();
    if (!referenced && !m.model.io.declared(vb.name)) throw UnknownVariable("unknown variable '" + vb.name + "'");
    std::vector<Event> events;
    Nanos prev = referenced ? last[slot] : kNone;
    for (const auto& [time, value] : vb.events) {
      Nanos t = to_nanos(time);
      if (t < 0) throw NonMonotoneTime("negative time " + format_double(time) + " for '" + vb.name + "'");
      if (prev != kNone && t <= prev) {
        throw NonMonotoneTime("time " + format_double(time) + " for '" + vb.name + "' does not increase");
      }
      events.push_back({t, ExtReal::from_double(value)});
      prev = t;
    }
    if (!referenced) {
      if (prev != kNone) other_last = std::max(other_last, prev);
      continue;
    }
    last[slot] = prev;
    accepted.emplace_back(slot, std::move(events));
  }
  m.other_last = std::max(m.other_last, other_last);

  for (auto& [slot, events] : accepted) {
    Input& in = m.inputs[slot];
    for (Event e : events) {
      in.last = e.t;
      if (in.events.empty() && e.t > 0) e.t = 0;
      in.events.push_back(e);
    }
  }

  Nanos target = m.inputs.empty() ? m.other_last : kForever;
  for (const Input& in : m.inputs) target = std::min(target, in.last);
  if (target == kNone || (m.frontier != kNone && target <= m.frontier)) return m.verdicts;

  m.advance(target);
  for (std::size_t f = 0; f < m.roots.size(); ++f) {
    const DenseNode& root = m.nodes[static_cast<std::size_t>(m.roots[f])];
    auto& out = m.verdicts[f].second;
    for (std::size_t i = root.out.size() - root.fresh; i < root.out.size(); ++i) {
      const Event& e = root.out[i];
      if (m.emitted[f] && *m.emitted[f] == e.v) continue;
      out.push_back({to_seconds(e.t), e.v});
      m.emitted[f] = e.v;
    }
  }
  m.prune();
  return m.verdicts;
}

void DenseMonitor::reset() { impl_->reset(); }

std::optional<double> DenseMonitor::frontier() const {
  if (impl_->frontier == kNone) return std::nullopt;
  return to_seconds(impl_->frontier);
}

const std::vector<MonitoredFormula>& DenseMonitor::formulas() const { return impl_->formulas; }
const std::vector<std::string>& DenseMonitor::variables() const { return impl_->vars; }

std::size_t DenseMonitor::state_size() const {
  std::size_t n = 0;
  for (const Input& in : impl_->inputs) n += in.events.size();
  for (const DenseNode& node : impl_->nodes) n += node.out.size();
  return n;
}

}  // namespace stlmon
