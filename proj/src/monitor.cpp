#include "stlmon/monitor.hpp"

#include <algorithm>
#include <stdexcept>

#include "stlmon/errors.hpp"
#include "stlmon/expr.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/wedge.hpp"

namespace stlmon {

namespace {

constexpr std::int64_t kUnbounded = -1;

std::int64_t samples_of(const Duration& d) { return d.whole_units(); }

struct Node {
  FormulaKind kind = FormulaKind::constant;
  int c0 = -1;
  int c1 = -1;
  std::int64_t lo = 0;
  std::int64_t hi = kUnbounded;

  CompiledExpr expr;
  PredicateCase pcase = PredicateCase::value;
  ExtReal constant;

  RingBuffer<ExtReal> r1;
  RingBuffer<ExtReal> r2;
  Wedge wedge;
  ExtReal acc;
  ExtReal acc_init;
};

}  // namespace

struct DiscreteMonitor::Impl {
  SpecModel model;
  std::vector<MonitoredFormula> formulas;
  std::vector<std::string> vars;
  std::vector<Node> nodes;
  std::vector<int> roots;
  std::vector<ExtReal> values;
  std::vector<double> inputs;
  std::vector<std::uint8_t> seen;
  Verdicts verdicts;
  std::int64_t next = 0;

  int build(const Formula& f);
  void reset();
  ExtReal step(Node& n, std::int64_t t);
  std::size_t slot_of(std::string_view name) const;
};

std::size_t DiscreteMonitor::Impl::slot_of(std::string_view name) const {
  auto it = std::lower_bound(vars.begin(), vars.end(), name,
                             [](const std::string& a, std::string_view b) { return std::string_view(a) < b; });
  if (it == vars.end() || *it != name) return vars.size();
  return static_cast<std::size_t>(it - vars.begin());
}

int DiscreteMonitor::Impl::build(const Formula& f) {
  Node n;
  n.kind = f.kind();
  if (f.arity() > 0) n.c0 = build(f.child(0));
  if (f.arity() > 1) n.c1 = build(f.child(1));
  if (has_interval(f.kind())) {
    n.lo = samples_of(f.interval().lo);
    n.hi = f.interval().hi ? samples_of(*f.interval().hi) : kUnbounded;
  }
  const ExtReal ninf = ExtReal::neg_inf();
  const ExtReal pinf = ExtReal::pos_inf();
  switch (f.kind()) {
    case FormulaKind::predicate: {
      const Comparison& cmp = f.comparison();
      n.expr = CompiledExpr(cmp.robustness_expr(), [&](const std::string& path) { return slot_of(path); });
      n.pcase = predicate_case(cmp.variables(), model.mode, model.io);
      break;
    }
    case FormulaKind::constant: n.constant = f.constant_value() ? pinf : ninf; break;
    case FormulaKind::negation:
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication: break;
    case FormulaKind::previous:
    case FormulaKind::rise:
    case FormulaKind::fall: n.acc_init = ninf; break;
    case FormulaKind::delay: n.r1 = RingBuffer<ExtReal>(static_cast<std::size_t>(n.lo), ninf); break;
    case FormulaKind::once:
    case FormulaKind::historically: {
      const bool is_max = f.kind() == FormulaKind::once;
      n.r1 = RingBuffer<ExtReal>(static_cast<std::size_t>(n.lo), ninf);
      if (n.hi == kUnbounded) {
        n.acc_init = is_max ? ninf : pinf;
      } else {
        n.wedge = Wedge(is_max ? Wedge::Kind::max : Wedge::Kind::min, n.hi - n.lo + 1);
      }
      break;
    }
    case FormulaKind::since:
      if (n.hi == kUnbounded) {
        n.acc_init = ninf;
        if (n.lo > 0) {
          n.r1 = RingBuffer<ExtReal>(static_cast<std::size_t>(n.lo), ninf);
          n.r2 = RingBuffer<ExtReal>(static_cast<std::size_t>(n.lo), ninf);
          n.wedge = Wedge(Wedge::Kind::min, n.lo);
        }
      } else {
        n.r1 = RingBuffer<ExtReal>(static_cast<std::size_t>(n.hi + 1), ninf);
        n.r2 = RingBuffer<ExtReal>(static_cast<std::size_t>(n.hi + 1), ninf);
      }
      break;
    case FormulaKind::delayed_until:
      n.r1 = RingBuffer<ExtReal>(static_cast<std::size_t>(n.hi + 1), ninf);
      n.r2 = RingBuffer<ExtReal>(static_cast<std::size_t>(n.hi + 1), ninf);
      break;
    default:
      throw UnsupportedOperator("'" + std::string(to_string(f.kind())) + "' left in a past-only formula");
  }
  n.acc = n.acc_init;
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size() - 1);
}

void DiscreteMonitor::Impl::reset() {
  for (Node& n : nodes) {
    n.r1.clear();
    n.r2.clear();
    n.wedge.reset();
    n.acc = n.acc_init;
  }
  next = 0;
}

ExtReal DiscreteMonitor::Impl::step(Node& n, std::int64_t t) {
  const ExtReal ninf = ExtReal::neg_inf();
  const ExtReal pinf = ExtReal::pos_inf();
  switch (n.kind) {
    case FormulaKind::predicate: return apply_case(n.pcase, n.expr.evaluate(inputs));
    case FormulaKind::constant: return n.constant;
    case FormulaKind::negation: return -values[n.c0];
    case FormulaKind::conjunction: return min(values[n.c0], values[n.c1]);
    case FormulaKind::disjunction: return max(values[n.c0], values[n.c1]);
    case FormulaKind::implication: return max(-values[n.c0], values[n.c1]);
    case FormulaKind::previous: {
      ExtReal out = n.acc;
      n.acc = values[n.c0];
      return out;
    }
    case FormulaKind::rise: {
      ExtReal out = min(n.acc, values[n.c0]);
      n.acc = -values[n.c0];
      return out;
    }
    case FormulaKind::fall: {
      ExtReal out = min(n.acc, -values[n.c0]);
      n.acc = values[n.c0];
      return out;
    }
    case FormulaKind::delay: return n.r1.push(values[n.c0]);
    case FormulaKind::once:
    case FormulaKind::historically: {
      const bool is_max = n.kind == FormulaKind::once;
      ExtReal delayed = n.r1.push(values[n.c0]);
      if (n.hi == kUnbounded) {
        if (t >= n.lo) n.acc = is_max ? max(n.acc, delayed) : min(n.acc, delayed);
        return n.acc;
      }
      n.wedge.evict_before(t - n.hi);
      if (t >= n.lo) n.wedge.push(t - n.lo, delayed);
      return n.wedge.extremum();
    }
    case FormulaKind::since: {
      const ExtReal x1 = values[n.c0];
      const ExtReal x2 = values[n.c1];
      if (n.hi == kUnbounded) {
        if (n.lo == 0) {
          n.acc = max(x2, min(x1, n.acc));
          return n.acc;
        }
        ExtReal old1 = n.r1.push(x1);
        ExtReal old2 = n.r2.push(x2);
        ExtReal recent = n.wedge.update(t, x1);
        if (t < n.lo) return ninf;
        n.acc = max(old2, min(old1, n.acc));
        return min(n.acc, recent);
      }
      n.r1.push(x1);
      n.r2.push(x2);
      ExtReal best = ninf;
      ExtReal inner = pinf;
      const std::int64_t last = std::min(t, n.hi);
      for (std::int64_t age = 0; age <= last; ++age) {
        if (age >= n.lo) best = max(best, min(n.r2.back(age), inner));
        inner = min(inner, n.r1.back(age));
      }
      return best;
    }
    case FormulaKind::delayed_until: {
      n.r1.push(values[n.c0]);
      n.r2.push(values[n.c1]);
      if (t < n.hi) return ninf;
      ExtReal best = ninf;
      ExtReal inner = pinf;
      for (std::int64_t age = n.hi; age >= 0; --age) {
        if (age < n.hi) inner = min(inner, n.r1.back(age));
        if (age <= n.hi - n.lo) best = max(best, min(n.r2.back(age), inner));
      }
      return best;
    }
    default: break;
  }
  throw std::logic_error("discrete monitor: unexpected node");
}

DiscreteMonitor::DiscreteMonitor(const SpecModel& model) : impl_(std::make_unique<Impl>()) {
  if (model.dense()) throw UnsupportedOperator("discrete monitor needs a discrete time domain");
  Impl& m = *impl_;
  m.model = model;
  auto refs = model.variables();
  m.vars.assign(refs.begin(), refs.end());
  for (const auto& nf : model.formulas) {
    Formula resolved = resolve_bounds(nf.formula, model.time_domain);
    PastifiedFormula p = pastify_formula(resolved, TimeKind::discrete);
    m.formulas.push_back({nf.name, nf.formula, p.formula, p.report});
    m.roots.push_back(m.build(p.formula));
    m.verdicts.emplace_back(nf.name, ExtReal::neg_inf());
  }
  m.values.resize(m.nodes.size());
  m.inputs.resize(m.vars.size());
  m.seen.resize(m.vars.size());
}

DiscreteMonitor::~DiscreteMonitor() = default;
DiscreteMonitor::DiscreteMonitor(DiscreteMonitor&&) noexcept = default;
DiscreteMonitor& DiscreteMonitor::operator=(DiscreteMonitor&&) noexcept = default;

const Verdicts& DiscreteMonitor::update(std::int64_t t, std::span<const Sample> samples) {
  Impl& m = *impl_;
  if (t != m.next) {
    throw OutOfOrderUpdate("expected index " + std::to_string(m.next) + ", got " + std::to_string(t));
  }
  std::fill(m.seen.begin(), m.seen.end(), 0);
  for (const Sample& s : samples) {
    std::size_t slot = m.slot_of(s.name);
    if (slot == m.vars.size()) {
      if (m.model.io.declared(std::string(s.name))) continue;
      throw UnknownVariable("unknown variable '" + std::string(s.name) + "'");
    }
    if (m.seen[slot]) throw DuplicateVariable("variable '" + std::string(s.name) + "' given twice");
    m.seen[slot] = 1;
    m.inputs[slot] = s.value;
  }
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    if (!m.seen[i]) throw MissingVariable("no sample for variable '" + m.vars[i] + "'");
  }
  for (std::size_t i = 0; i < m.nodes.size(); ++i) m.values[i] = m.step(m.nodes[i], t);
  for (std::size_t i = 0; i < m.roots.size(); ++i) m.verdicts[i].second = m.values[m.roots[i]];
  ++m.next;
  return m.verdicts;
}

void DiscreteMonitor::reset() { impl_->reset(); }
std::int64_t DiscreteMonitor::next_index() const { return impl_->next; }
const std::vector<MonitoredFormula>& DiscreteMonitor::formulas() const { return impl_->formulas; }
const std::vector<std::string>& DiscreteMonitor::variables() const { return impl_->vars; }
const SpecModel& DiscreteMonitor::model() const { return impl_->model; }

std::size_t DiscreteMonitor::cell_count() const {
  std::size_t cells = 0;
  for (const Node& n : impl_->nodes) cells += n.r1.capacity() + n.r2.capacity() + n.wedge.capacity() + 1;
  return cells;
}

std::uint64_t DiscreteMonitor::wedge_operations() const {
  std::uint64_t ops = 0;
  for (const Node& n : impl_->nodes) ops += n.wedge.operations();
  return ops;
}

std::size_t DiscreteMonitor::max_wedge_size() const {
  std::size_t s = 0;
  for (const Node& n : impl_->nodes) s = std::max(s, n.wedge.size());
  return s;
}

DiscreteMonitor new_monitor(const SpecModel& model) { return DiscreteMonitor(model); }

}  // namespace stlmon
