#include "stlmon/expr.hpp"

#include <cmath>

#include "stlmon/ext_real.hpp"

namespace stlmon {

Expr Expr::constant(double value) {
  Node n;
  n.kind = Kind::constant;
  n.value = value;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::variable(std::string path, SourcePos pos) {
  Node n;
  n.kind = Kind::variable;
  n.path = std::move(path);
  n.pos = pos;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::negate(Expr operand) {
  Node n;
  n.kind = Kind::negate;
  n.children = {std::move(operand)};
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::abs(Expr operand) {
  Node n;
  n.kind = Kind::abs;
  n.children = {std::move(operand)};
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  Node n;
  n.kind = kind;
  n.children = {std::move(lhs), std::move(rhs)};
  return Expr(std::make_shared<const Node>(std::move(n)));
}

bool Expr::is_binary() const {
  switch (kind()) {
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div: return true;
    default: return false;
  }
}

void Expr::collect_variables(std::set<std::string>& out) const {
  if (kind() == Kind::variable) out.insert(path());
  for (const auto& c : node_->children) c.collect_variables(out);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::constant: return a.constant_value() == b.constant_value();
    case Expr::Kind::variable: return a.path() == b.path();
    default: break;
  }
  return a.node_->children == b.node_->children;
}

CompiledExpr::CompiledExpr(const Expr& e, const std::function<std::size_t(const std::string&)>& slot_of) {
  std::size_t depth = 0;
  auto emit = [&](auto&& self, const Expr& x) -> void {
    switch (x.kind()) {
      case Expr::Kind::constant:
        ops_.push_back({x.kind(), x.constant_value(), 0});
        max_stack_ = std::max(max_stack_, ++depth);
        return;
      case Expr::Kind::variable:
        ops_.push_back({x.kind(), 0.0, slot_of(x.path())});
        max_stack_ = std::max(max_stack_, ++depth);
        return;
      case Expr::Kind::negate:
      case Expr::Kind::abs:
        self(self, x.operand());
        ops_.push_back({x.kind(), 0.0, 0});
        return;
      default:
        self(self, x.lhs());
        self(self, x.rhs());
        ops_.push_back({x.kind(), 0.0, 0});
        --depth;
        return;
    }
  };
  emit(emit, e);
}

double CompiledExpr::evaluate(std::span<const double> valuation) const {
  // Expressions are small; a fixed stack avoids allocation per sample.
  constexpr std::size_t kInline = 32;
  double inline_stack[kInline] = {};
  std::vector<double> heap;
  double* stack = inline_stack;
  if (max_stack_ > kInline) {
    heap.resize(max_stack_);
    stack = heap.data();
  }
  std::size_t top = 0;
  for (const Op& op : ops_) {
    switch (op.kind) {
      case Expr::Kind::constant: stack[top++] = op.value; break;
      case Expr::Kind::variable: stack[top++] = valuation[op.slot]; break;
      case Expr::Kind::negate: stack[top - 1] = -stack[top - 1]; break;
      case Expr::Kind::abs: stack[top - 1] = std::fabs(stack[top - 1]); break;
      case Expr::Kind::add: --top; stack[top - 1] += stack[top]; break;
      case Expr::Kind::sub: --top; stack[top - 1] -= stack[top]; break;
      case Expr::Kind::mul: --top; stack[top - 1] *= stack[top]; break;
      case Expr::Kind::div: --top; stack[top - 1] /= stack[top]; break;
    }
  }
  double result = stack[0];
  if (!std::isfinite(result)) {
    throw ArithmeticError("predicate expression evaluated to " + format_double(result));
  }
  return result;
}

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::negate: return 3;
    default: return 4;
  }
}

std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::constant: return format_double(e.constant_value());
    case Expr::Kind::variable: return e.path();
    case Expr::Kind::abs: return "abs(" + to_string(e.operand()) + ")";
    case Expr::Kind::negate: {
      std::string inner = to_string(e.operand());
      return precedence(e.operand()) < 4 ? "-(" + inner + ")" : "-" + inner;
    }
    default: break;
  }
  const int p = precedence(e);
  std::string l = to_string(e.lhs());
  std::string r = to_string(e.rhs());
  if (precedence(e.lhs()) < p) l = "(" + l + ")";
  // Left-associative: an equal-precedence right operand needs parentheses.
  if (precedence(e.rhs()) <= p) r = "(" + r + ")";
  const char* op = e.kind() == Expr::Kind::add ? " + "
                   : e.kind() == Expr::Kind::sub ? " - "
                   : e.kind() == Expr::Kind::mul ? " * "
                                                 : " / ";
  return l + op + r;
}

}  // namespace stlmon
