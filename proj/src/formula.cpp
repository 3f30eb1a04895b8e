#include "stlmon/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace stlmon {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::ge: return ">=";
    case Relation::gt: return ">";
    case Relation::le: return "<=";
    case Relation::lt: return "<";
    case Relation::eq: return "==";
    case Relation::ne: return "!=";
  }
  return "?";
}

Expr Comparison::robustness_expr() const {
  switch (rel) {
    case Relation::ge:
    case Relation::gt: return Expr::binary(Expr::Kind::sub, lhs, rhs);
    case Relation::le:
    case Relation::lt: return Expr::binary(Expr::Kind::sub, rhs, lhs);
    case Relation::eq: return Expr::negate(Expr::abs(Expr::binary(Expr::Kind::sub, lhs, rhs)));
    case Relation::ne: return Expr::abs(Expr::binary(Expr::Kind::sub, lhs, rhs));
  }
  throw std::logic_error("bad relation");
}

std::set<std::string> Comparison::variables() const {
  std::set<std::string> out;
  lhs.collect_variables(out);
  rhs.collect_variables(out);
  return out;
}

std::string_view to_string(FormulaKind k) {
  switch (k) {
    case FormulaKind::predicate: return "predicate";
    case FormulaKind::constant: return "constant";
    case FormulaKind::negation: return "not";
    case FormulaKind::conjunction: return "and";
    case FormulaKind::disjunction: return "or";
    case FormulaKind::implication: return "implies";
    case FormulaKind::next: return "next";
    case FormulaKind::previous: return "prev";
    case FormulaKind::rise: return "rise";
    case FormulaKind::fall: return "fall";
    case FormulaKind::once: return "once";
    case FormulaKind::historically: return "historically";
    case FormulaKind::since: return "since";
    case FormulaKind::eventually: return "eventually";
    case FormulaKind::always: return "always";
    case FormulaKind::until: return "until";
    case FormulaKind::delay: return "delay";
    case FormulaKind::delayed_until: return "until@";
  }
  return "?";
}

bool is_future_kind(FormulaKind k) {
  return k == FormulaKind::next || k == FormulaKind::eventually || k == FormulaKind::always ||
         k == FormulaKind::until;
}

bool is_binary_kind(FormulaKind k) {
  return k == FormulaKind::conjunction || k == FormulaKind::disjunction || k == FormulaKind::implication ||
         k == FormulaKind::since || k == FormulaKind::until || k == FormulaKind::delayed_until;
}

bool has_interval(FormulaKind k) {
  return k == FormulaKind::once || k == FormulaKind::historically || k == FormulaKind::since ||
         k == FormulaKind::eventually || k == FormulaKind::always || k == FormulaKind::until ||
         k == FormulaKind::delay || k == FormulaKind::delayed_until;
}

Formula Formula::make(Node node) { return Formula(std::make_shared<const Node>(std::move(node))); }

Formula Formula::predicate(Comparison cmp, SourcePos pos) {
  Node n;
  n.kind = FormulaKind::predicate;
  n.comparison = std::move(cmp);
  n.pos = pos;
  return make(std::move(n));
}

Formula Formula::constant(bool value) {
  Node n;
  n.kind = FormulaKind::constant;
  n.constant = value;
  return make(std::move(n));
}

Formula Formula::negation(Formula f) { return unary(FormulaKind::negation, std::move(f)); }
Formula Formula::conjunction(Formula a, Formula b) { return binary(FormulaKind::conjunction, std::move(a), std::move(b)); }
Formula Formula::disjunction(Formula a, Formula b) { return binary(FormulaKind::disjunction, std::move(a), std::move(b)); }
Formula Formula::implication(Formula a, Formula b) { return binary(FormulaKind::implication, std::move(a), std::move(b)); }

Formula Formula::unary(FormulaKind kind, Formula f, Interval interval) {
  if (is_binary_kind(kind) || kind == FormulaKind::predicate || kind == FormulaKind::constant) {
    throw std::invalid_argument("not a unary formula kind: " + std::string(to_string(kind)));
  }
  Node n;
  n.kind = kind;
  n.interval = std::move(interval);
  n.children = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::binary(FormulaKind kind, Formula a, Formula b, Interval interval) {
  if (!is_binary_kind(kind)) throw std::invalid_argument("not a binary formula kind: " + std::string(to_string(kind)));
  Node n;
  n.kind = kind;
  n.interval = std::move(interval);
  n.children = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula Formula::delay(Duration d, Formula f) { return unary(FormulaKind::delay, std::move(f), Interval{d, d}); }

Formula Formula::delayed_until(Interval interval, Formula lhs, Formula rhs) {
  if (!interval.bounded()) throw std::invalid_argument("delayed until needs a bounded interval");
  return binary(FormulaKind::delayed_until, std::move(lhs), std::move(rhs), std::move(interval));
}

Formula Formula::with_pos(SourcePos pos) const {
  Node n = *node_;
  n.pos = pos;
  return make(std::move(n));
}

Formula Formula::with_children(std::vector<Formula> children) const {
  Node n = *node_;
  n.children = std::move(children);
  return make(std::move(n));
}

bool Formula::contains_future() const {
  if (is_future_kind(kind())) return true;
  return std::any_of(node_->children.begin(), node_->children.end(),
                     [](const Formula& c) { return c.contains_future(); });
}

bool Formula::contains_internal() const {
  if (kind() == FormulaKind::delay || kind() == FormulaKind::delayed_until) return true;
  return std::any_of(node_->children.begin(), node_->children.end(),
                     [](const Formula& c) { return c.contains_internal(); });
}

void Formula::collect_variables(std::set<std::string>& out) const {
  if (kind() == FormulaKind::predicate) {
    comparison().lhs.collect_variables(out);
    comparison().rhs.collect_variables(out);
  }
  for (const auto& c : node_->children) c.collect_variables(out);
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.depth());
  return d + 1;
}

std::size_t Formula::size() const {
  std::size_t s = 1;
  for (const auto& c : node_->children) s += c.size();
  return s;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == FormulaKind::predicate) return a.comparison() == b.comparison();
  if (a.kind() == FormulaKind::constant) return a.constant_value() == b.constant_value();
  if (has_interval(a.kind()) && !(a.interval() == b.interval())) return false;
  return a.node_->children == b.node_->children;
}

}  // namespace stlmon
