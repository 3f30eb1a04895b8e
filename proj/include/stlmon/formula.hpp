#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stlmon/duration.hpp"
#include "stlmon/errors.hpp"
#include "stlmon/expr.hpp"

namespace stlmon {

enum class Relation { ge, gt, le, lt, eq, ne };

std::string_view to_string(Relation r);

/// `lhs REL rhs`, kept as written. Its robustness is a single expression,
/// see robustness_expr().
struct Comparison {
  Expr lhs;
  Relation rel;
  Expr rhs;

  /// e1 >= e2, e1 > e2 -> e1 - e2; e1 <= e2, e1 < e2 -> e2 - e1;
  /// e1 == e2 -> -|e1 - e2|; e1 != e2 -> |e1 - e2|.
  Expr robustness_expr() const;
  std::set<std::string> variables() const;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

enum class FormulaKind {
  predicate,
  constant,
  negation,
  conjunction,
  disjunction,
  implication,
  next,
  previous,
  rise,
  fall,
  once,
  historically,
  since,
  eventually,
  always,
  until,
  // Produced only by the pastifier.
  delay,
  delayed_until,
};

std::string_view to_string(FormulaKind k);

bool is_future_kind(FormulaKind k);
bool is_binary_kind(FormulaKind k);
bool has_interval(FormulaKind k);

/// (IA-)STL formula tree. Immutable; copying shares structure.
///
/// `delay[d] f` is the value of f exactly d steps earlier (-inf before
/// time d). `f1 until@[a:b] f2` is the buffered until used to realise future
/// until in past form; see the pastifier.
class Formula {
 public:
  static Formula predicate(Comparison cmp, SourcePos pos = {});
  static Formula constant(bool value);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula unary(FormulaKind kind, Formula f, Interval interval = Interval::unbounded());
  static Formula binary(FormulaKind kind, Formula a, Formula b, Interval interval = Interval::unbounded());
  static Formula delay(Duration d, Formula f);
  static Formula delayed_until(Interval interval, Formula lhs, Formula rhs);

  FormulaKind kind() const { return node_->kind; }
  const Comparison& comparison() const { return *node_->comparison; }
  bool constant_value() const { return node_->constant; }
  const Interval& interval() const { return node_->interval; }
  /// Shift of a delay node.
  const Duration& shift() const { return node_->interval.lo; }
  SourcePos pos() const { return node_->pos; }

  std::size_t arity() const { return node_->children.size(); }
  const Formula& child(std::size_t i) const { return node_->children[i]; }
  const Formula& operand() const { return node_->children[0]; }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }

  /// Same node tagged with a source position.
  Formula with_pos(SourcePos pos) const;

  /// Rebuilds this node over new children, keeping every other attribute.
  Formula with_children(std::vector<Formula> children) const;

  bool contains_future() const;
  bool contains_internal() const;
  void collect_variables(std::set<std::string>& out) const;
  std::size_t depth() const;
  std::size_t size() const;

  /// Structural equality; source positions are ignored.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind = FormulaKind::constant;
    std::optional<Comparison> comparison;
    bool constant = false;
    Interval interval;
    SourcePos pos;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

}  // namespace stlmon
