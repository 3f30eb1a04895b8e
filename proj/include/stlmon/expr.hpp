#pragma once

#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "stlmon/errors.hpp"

namespace stlmon {

/// Real-valued arithmetic over variables. Immutable; subtrees are shared.
class Expr {
 public:
  enum class Kind { constant, variable, negate, abs, add, sub, mul, div };

  static Expr constant(double value);
  static Expr variable(std::string path, SourcePos pos = {});
  static Expr negate(Expr operand);
  static Expr abs(Expr operand);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);

  Kind kind() const { return node_->kind; }
  double constant_value() const { return node_->value; }
  const std::string& path() const { return node_->path; }
  SourcePos pos() const { return node_->pos; }
  const Expr& lhs() const { return node_->children[0]; }
  const Expr& rhs() const { return node_->children[1]; }
  const Expr& operand() const { return node_->children[0]; }

  bool is_binary() const;
  void collect_variables(std::set<std::string>& out) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    Kind kind = Kind::constant;
    double value = 0.0;
    std::string path;
    SourcePos pos;
    std::vector<Expr> children;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Stack-machine form of an Expr with variables bound to slot indices.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  /// `slot_of` maps a variable path to its index in the valuation array.
  CompiledExpr(const Expr& e, const std::function<std::size_t(const std::string&)>& slot_of);

  /// Throws ArithmeticError if the result is NaN or infinite.
  double evaluate(std::span<const double> valuation) const;

 private:
  struct Op {
    Expr::Kind kind;
    double value;
    std::size_t slot;
  };
  std::vector<Op> ops_;
  std::size_t max_stack_ = 0;
};

/// Printer precedence: 1 additive, 2 multiplicative, 3 negation, 4 atoms.
int precedence(const Expr& e);

std::string to_string(const Expr& e);

}  // namespace stlmon
