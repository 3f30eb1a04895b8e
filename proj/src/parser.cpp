#include "stlmon/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <variant>

#include "stlmon/ext_real.hpp"

namespace stlmon {

namespace {

enum class Tok {
  end,
  number,
  path,
  annotation,
  lparen,
  rparen,
  lbracket,
  rbracket,
  colon,
  comma,
  assign,
  plus,
  minus,
  star,
  slash,
  rel,
  arrow,
  // keywords
  kw_input,
  kw_output,
  kw_from,
  kw_import,
  kw_and,
  kw_or,
  kw_not,
  kw_implies,
  kw_until,
  kw_until_at,
  kw_delay,
  kw_since,
  kw_always,
  kw_eventually,
  kw_once,
  kw_historically,
  kw_next,
  kw_prev,
  kw_rise,
  kw_fall,
  kw_abs,
  kw_true,
  kw_false,
  kw_inf,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourcePos pos;
  // annotation payload
  std::string raw;
  Relation rel = Relation::ge;
};

const std::map<std::string, Tok>& keywords() {
  static const std::map<std::string, Tok> table = {
      {"input", Tok::kw_input},
      {"output", Tok::kw_output},
      {"from", Tok::kw_from},
      {"import", Tok::kw_import},
      {"and", Tok::kw_and},
      {"or", Tok::kw_or},
      {"not", Tok::kw_not},
      {"implies", Tok::kw_implies},
      {"until", Tok::kw_until},
      {"delay", Tok::kw_delay},
      {"since", Tok::kw_since},
      {"always", Tok::kw_always},
      {"eventually", Tok::kw_eventually},
      {"once", Tok::kw_once},
      {"historically", Tok::kw_historically},
      {"next", Tok::kw_next},
      {"prev", Tok::kw_prev},
      {"rise", Tok::kw_rise},
      {"fall", Tok::kw_fall},
      {"abs", Tok::kw_abs},
      {"true", Tok::kw_true},
      {"false", Tok::kw_false},
      {"inf", Tok::kw_inf},
  };
  return table;
}

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.pos = {line_, col_};
      if (i_ >= text_.size()) {
        t.kind = Tok::end;
        out.push_back(std::move(t));
        return out;
      }
      char c = text_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lex_path(t);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && i_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_ + 1])))) {
        lex_number(t);
      } else if (c == '@') {
        lex_annotation(t);
      } else {
        lex_symbol(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t k = 0) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }

  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string read_ident() {
    std::string s;
    while (i_ < text_.size() && ident_char(text_[i_])) {
      s += text_[i_];
      advance();
    }
    return s;
  }

  void lex_path(Token& t) {
    t.text = read_ident();
    bool dotted = false;
    while (peek() == '.' && (std::isalpha(static_cast<unsigned char>(peek(1))) || peek(1) == '_')) {
      advance();
      t.text += '.';
      t.text += read_ident();
      dotted = true;
    }
    t.kind = Tok::path;
    if (!dotted) {
      std::string lower = t.text;
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
      if (auto it = keywords().find(lower); it != keywords().end()) t.kind = it->second;
      if (t.kind == Tok::kw_until && peek() == '@') {
        advance();
        t.text += '@';
        t.kind = Tok::kw_until_at;
      }
    }
  }

  void lex_number(Token& t) {
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.text += peek();
      advance();
    }
    if (peek() == '.') {
      t.text += '.';
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.text += peek();
        advance();
      }
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      t.text += peek();
      advance();
      if (peek() == '+' || peek() == '-') {
        t.text += peek();
        advance();
      }
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.text += peek();
        advance();
      }
    }
    t.kind = Tok::number;
  }

  void lex_annotation(Token& t) {
    advance();  // '@'
    skip_inline_space();
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
      throw ParseError({line_, col_}, "annotation name missing after '@'", {"identifier"});
    }
    t.text = read_ident();
    skip_inline_space();
    if (peek() != '(') throw ParseError({line_, col_}, "annotation needs a parenthesised argument", {"'('"});
    advance();
    int depth = 1;
    while (true) {
      if (i_ >= text_.size() || peek() == '\n') {
        throw ParseError({line_, col_}, "unterminated annotation argument", {"')'"});
      }
      char c = peek();
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) {
        advance();
        break;
      }
      t.raw += c;
      advance();
    }
    t.kind = Tok::annotation;
  }

  void skip_inline_space() {
    while (peek() == ' ' || peek() == '\t') advance();
  }

  void lex_symbol(Token& t) {
    char c = peek();
    char n = peek(1);
    auto one = [&](Tok k) {
      t.kind = k;
      t.text = std::string(1, c);
      advance();
    };
    auto two = [&](Tok k) {
      t.kind = k;
      t.text = std::string{c, n};
      advance();
      advance();
    };
    switch (c) {
      case '(': return one(Tok::lparen);
      case ')': return one(Tok::rparen);
      case '[': return one(Tok::lbracket);
      case ']': return one(Tok::rbracket);
      case ':': return one(Tok::colon);
      case ',': return one(Tok::comma);
      case '+': return one(Tok::plus);
      case '*': return one(Tok::star);
      case '/': return one(Tok::slash);
      case '-':
        if (n == '>') return two(Tok::arrow);
        return one(Tok::minus);
      case '=':
        if (n == '=') {
          t.rel = Relation::eq;
          return two(Tok::rel);
        }
        return one(Tok::assign);
      case '!':
        if (n == '=') {
          t.rel = Relation::ne;
          return two(Tok::rel);
        }
        break;
      case '>':
        if (n == '=') {
          t.rel = Relation::ge;
          return two(Tok::rel);
        }
        t.rel = Relation::gt;
        return one(Tok::rel);
      case '<':
        if (n == '=') {
          t.rel = Relation::le;
          return two(Tok::rel);
        }
        t.rel = Relation::lt;
        return one(Tok::rel);
      default: break;
    }
    throw ParseError({line_, col_}, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// An operand is either arithmetic or a formula until the context decides.
using Term = std::variant<Expr, Formula>;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SpecModel parse_spec() {
    SpecModel model;
    while (peek().kind != Tok::end) {
      const Token& t = peek();
      switch (t.kind) {
        case Tok::kw_from: parse_from(model); break;
        case Tok::kw_import: parse_import(model); break;
        case Tok::kw_input:
        case Tok::kw_output: parse_decl(model); break;
        case Tok::annotation:
          model.annotations.push_back({t.text, t.raw, t.pos});
          ++pos_;
          break;
        case Tok::path: parse_assign(model); break;
        default:
          throw ParseError(t.pos, "unexpected " + describe(t) + " at start of statement",
                           {"declaration", "annotation", "assignment"});
      }
    }
    return model;
  }

  Formula parse_formula_only() {
    Formula f = as_formula(parse_implies(), toks_[0].pos);
    expect(Tok::end, "end of input");
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) throw ParseError(peek().pos, "unexpected " + describe(peek()), {what});
    return take();
  }

  void parse_from(SpecModel& model) {
    take();
    std::string module = expect(Tok::path, "module path").text;
    expect(Tok::kw_import, "'import'");
    std::string name = expect(Tok::path, "type name").text;
    model.imports.push_back(module + "." + name);
  }

  void parse_import(SpecModel& model) {
    take();
    model.imports.push_back(expect(Tok::path, "module path").text);
  }

  void parse_decl(SpecModel& model) {
    const Token& kw = take();
    IoKind kind = kw.kind == Tok::kw_input ? IoKind::input : IoKind::output;
    const Token& first = expect(Tok::path, "variable name");
    std::string name = first.text;
    // `input Twist cmd`: a second path on the same line is the variable.
    if (peek().kind == Tok::path && peek().pos.line == first.pos.line && peek(1).kind != Tok::assign) {
      name = take().text;
    }
    try {
      model.io.declare(name, kind);
    } catch (const std::invalid_argument& e) {
      throw ParseError(first.pos, e.what());
    }
  }

  void parse_assign(SpecModel& model) {
    const Token& target = take();
    expect(Tok::assign, "'='");
    SourcePos at = peek().pos;
    Formula f = as_formula(parse_implies(), at);
    model.formulas.push_back({target.text, f, target.pos});
  }

  static Formula as_formula(Term t, SourcePos pos) {
    if (auto* f = std::get_if<Formula>(&t)) return *f;
    throw ParseError(pos, "arithmetic expression used where a formula is required",
                     {"comparison such as 'x >= 0'"});
  }

  static Expr as_expr(Term t, SourcePos pos) {
    if (auto* e = std::get_if<Expr>(&t)) return *e;
    throw ParseError(pos, "formula used where an arithmetic expression is required");
  }

  Term parse_implies() {
    SourcePos at = peek().pos;
    Term lhs = parse_temporal_binary();
    if (peek().kind == Tok::kw_implies || peek().kind == Tok::arrow) {
      SourcePos op = take().pos;
      SourcePos rat = peek().pos;
      Term rhs = parse_implies();
      return Formula::implication(as_formula(lhs, at), as_formula(rhs, rat)).with_pos(op);
    }
    return lhs;
  }

  Term parse_temporal_binary() {
    SourcePos at = peek().pos;
    Term lhs = parse_or();
    while (peek().kind == Tok::kw_until || peek().kind == Tok::kw_since || peek().kind == Tok::kw_until_at) {
      const Token& op = take();
      if (op.kind == Tok::kw_until_at) {
        Interval iv = parse_interval();
        if (!iv.bounded()) throw ParseError(op.pos, "'until@' needs a bounded interval");
        SourcePos rat = peek().pos;
        Term rhs = parse_or();
        lhs = Formula::delayed_until(iv, as_formula(lhs, at), as_formula(rhs, rat)).with_pos(op.pos);
        continue;
      }
      FormulaKind kind = op.kind == Tok::kw_until ? FormulaKind::until : FormulaKind::since;
      Interval iv = peek().kind == Tok::lbracket ? parse_interval() : Interval::unbounded();
      SourcePos rat = peek().pos;
      Term rhs = parse_or();
      lhs = Formula::binary(kind, as_formula(lhs, at), as_formula(rhs, rat), iv).with_pos(op.pos);
    }
    return lhs;
  }

  Term parse_or() {
    SourcePos at = peek().pos;
    Term lhs = parse_and();
    while (peek().kind == Tok::kw_or) {
      SourcePos op = take().pos;
      SourcePos rat = peek().pos;
      Term rhs = parse_and();
      lhs = Formula::disjunction(as_formula(lhs, at), as_formula(rhs, rat)).with_pos(op);
    }
    return lhs;
  }

  Term parse_and() {
    SourcePos at = peek().pos;
    Term lhs = parse_prefix();
    while (peek().kind == Tok::kw_and) {
      SourcePos op = take().pos;
      SourcePos rat = peek().pos;
      Term rhs = parse_prefix();
      lhs = Formula::conjunction(as_formula(lhs, at), as_formula(rhs, rat)).with_pos(op);
    }
    return lhs;
  }

  static std::optional<FormulaKind> prefix_kind(Tok t) {
    switch (t) {
      case Tok::kw_not: return FormulaKind::negation;
      case Tok::kw_always: return FormulaKind::always;
      case Tok::kw_eventually: return FormulaKind::eventually;
      case Tok::kw_once: return FormulaKind::once;
      case Tok::kw_historically: return FormulaKind::historically;
      case Tok::kw_next: return FormulaKind::next;
      case Tok::kw_prev: return FormulaKind::previous;
      case Tok::kw_rise: return FormulaKind::rise;
      case Tok::kw_fall: return FormulaKind::fall;
      default: return std::nullopt;
    }
  }

  Term parse_prefix() {
    if (peek().kind == Tok::kw_delay) {
      const Token& op = take();
      expect(Tok::lbracket, "'['");
      Duration d = parse_bound();
      expect(Tok::rbracket, "']'");
      SourcePos at = peek().pos;
      Formula operand = as_formula(parse_prefix(), at);
      return Formula::delay(d, operand).with_pos(op.pos);
    }
    auto kind = prefix_kind(peek().kind);
    if (!kind) return parse_comparison();
    const Token& op = take();
    Interval iv = Interval::unbounded();
    if (peek().kind == Tok::lbracket) {
      if (!has_interval(*kind)) throw ParseError(peek().pos, "'" + op.text + "' takes no interval");
      iv = parse_interval();
    }
    SourcePos at = peek().pos;
    Formula operand = as_formula(parse_prefix(), at);
    return Formula::unary(*kind, operand, iv).with_pos(op.pos);
  }

  Term parse_comparison() {
    SourcePos at = peek().pos;
    Term lhs = parse_additive();
    if (peek().kind != Tok::rel) return lhs;
    Relation rel = take().rel;
    SourcePos rat = peek().pos;
    Term rhs = parse_additive();
    Comparison cmp{as_expr(lhs, at), rel, as_expr(rhs, rat)};
    if (peek().kind == Tok::rel) throw ParseError(peek().pos, "comparisons do not chain");
    return Formula::predicate(std::move(cmp), at);
  }

  Term parse_additive() {
    SourcePos at = peek().pos;
    Term lhs = parse_multiplicative();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      Expr::Kind k = take().kind == Tok::plus ? Expr::Kind::add : Expr::Kind::sub;
      SourcePos rat = peek().pos;
      Term rhs = parse_multiplicative();
      lhs = Expr::binary(k, as_expr(lhs, at), as_expr(rhs, rat));
    }
    return lhs;
  }

  Term parse_multiplicative() {
    SourcePos at = peek().pos;
    Term lhs = parse_unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      Expr::Kind k = take().kind == Tok::star ? Expr::Kind::mul : Expr::Kind::div;
      SourcePos rat = peek().pos;
      Term rhs = parse_unary();
      lhs = Expr::binary(k, as_expr(lhs, at), as_expr(rhs, rat));
    }
    return lhs;
  }

  Term parse_unary() {
    if (peek().kind == Tok::minus) {
      take();
      if (peek().kind == Tok::number) return Expr::constant(-parse_number(take()));
      SourcePos at = peek().pos;
      return Expr::negate(as_expr(parse_unary(), at));
    }
    return parse_primary();
  }

  Term parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        take();
        return Expr::constant(parse_number(t));
      }
      case Tok::path: {
        take();
        return Expr::variable(t.text, t.pos);
      }
      case Tok::kw_abs: {
        take();
        expect(Tok::lparen, "'('");
        SourcePos at = peek().pos;
        Expr inner = as_expr(parse_additive(), at);
        expect(Tok::rparen, "')'");
        return Expr::abs(inner);
      }
      case Tok::kw_true: take(); return Formula::constant(true).with_pos(t.pos);
      case Tok::kw_false: take(); return Formula::constant(false).with_pos(t.pos);
      case Tok::lparen: {
        take();
        Term inner = parse_implies();
        expect(Tok::rparen, "')'");
        return inner;
      }
      default: break;
    }
    throw ParseError(t.pos, "unexpected " + describe(t), {"number", "variable", "'('", "'abs'"});
  }

  static double parse_number(const Token& t) {
    double v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) {
      throw ParseError(t.pos, "malformed number '" + t.text + "'");
    }
    return v;
  }

  Duration parse_bound() {
    const Token& num = expect(Tok::number, "bound");
    std::string text = num.text;
    if (peek().kind == Tok::path && parse_time_unit(peek().text)) text += take().text;
    try {
      return Duration::parse(text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(num.pos, e.what());
    }
  }

  Interval parse_interval() {
    const Token& open = expect(Tok::lbracket, "'['");
    Interval iv;
    iv.lo = parse_bound();
    if (!accept(Tok::colon) && !accept(Tok::comma)) {
      throw ParseError(peek().pos, "unexpected " + describe(peek()), {"':'", "','"});
    }
    if (!accept(Tok::kw_inf)) iv.hi = parse_bound();
    expect(Tok::rbracket, "']'");
    if (iv.hi) {
      if (!iv.lo.is_zero() && iv.hi->unitless() != iv.lo.unitless()) {
        throw ParseError(open.pos, "interval mixes unitless and timed bounds");
      }
      if (iv.hi->scaled() < iv.lo.scaled()) throw ParseError(open.pos, "interval lower bound exceeds upper bound");
    }
    return iv;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool is_unbounded_future(const Formula& f) {
  return (f.kind() == FormulaKind::eventually || f.kind() == FormulaKind::always ||
          f.kind() == FormulaKind::until) &&
         !f.interval().bounded();
}

void check_bounds(const Formula& f, bool root, std::vector<Diagnostic>& out) {
  if (f.kind() == FormulaKind::until && !f.interval().bounded()) {
    out.push_back({f.pos(), "until must have a bounded interval"});
  } else if (!root && is_unbounded_future(f)) {
    out.push_back({f.pos(), "nested " + std::string(to_string(f.kind())) + " must have a bounded interval"});
  }
  for (std::size_t i = 0; i < f.arity(); ++i) check_bounds(f.child(i), false, out);
}

void check_declared(const Expr& e, const IoSignature& io, std::vector<Diagnostic>& out) {
  if (e.kind() == Expr::Kind::variable) {
    if (!io.declared(e.path())) out.push_back({e.pos(), "undeclared variable '" + e.path() + "'"});
    return;
  }
  if (e.kind() == Expr::Kind::constant) return;
  if (e.is_binary()) {
    check_declared(e.lhs(), io, out);
    check_declared(e.rhs(), io, out);
  } else {
    check_declared(e.operand(), io, out);
  }
}

void check_declared(const Formula& f, const IoSignature& io, std::vector<Diagnostic>& out) {
  if (f.kind() == FormulaKind::predicate) {
    check_declared(f.comparison().lhs, io, out);
    check_declared(f.comparison().rhs, io, out);
  }
  for (std::size_t i = 0; i < f.arity(); ++i) check_declared(f.child(i), io, out);
}

// Printing. Operands of binary connectives are parenthesised when they are
// themselves binary or negations; prefix operators wrap their operand.
bool needs_parens_as_operand(const Formula& f) {
  return is_binary_kind(f.kind()) || f.kind() == FormulaKind::negation;
}

std::string operand_text(const Formula& f) {
  std::string s = format_formula(f);
  return needs_parens_as_operand(f) ? "(" + s + ")" : s;
}

std::string comparison_text(const Comparison& c) {
  return to_string(c.lhs) + " " + std::string(to_string(c.rel)) + " " + to_string(c.rhs);
}

}  // namespace

SpecModel parse_spec(std::string_view text) {
  Parser parser(Lexer(text).run());
  SpecModel model = parser.parse_spec();
  if (auto ds = validate(model); !ds.empty()) throw ValidationError(std::move(ds));
  return model;
}

Formula parse_formula(std::string_view text) {
  Parser parser(Lexer(text).run());
  return parser.parse_formula_only();
}

std::vector<Diagnostic> validate(const SpecModel& model) {
  std::vector<Diagnostic> out;
  std::set<std::string> names;
  for (const auto& nf : model.formulas) {
    if (!names.insert(nf.name).second) {
      out.push_back({nf.pos, "duplicate formula name '" + nf.name + "'"});
    }
    if (!model.io.empty()) check_declared(nf.formula, model.io, out);
    check_bounds(nf.formula, true, out);
  }
  return out;
}

std::string format_formula(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::predicate: return comparison_text(f.comparison());
    case FormulaKind::constant: return f.constant_value() ? "true" : "false";
    case FormulaKind::negation: {
      const Formula& x = f.operand();
      if (x.kind() == FormulaKind::delay) return "not " + format_formula(x);
      return "not (" + format_formula(x) + ")";
    }
    case FormulaKind::delay:
      return "delay[" + to_string(f.shift()) + "] (" + format_formula(f.operand()) + ")";
    case FormulaKind::next:
    case FormulaKind::previous:
    case FormulaKind::rise:
    case FormulaKind::fall:
      return std::string(to_string(f.kind())) + "(" + format_formula(f.operand()) + ")";
    case FormulaKind::once:
    case FormulaKind::historically:
    case FormulaKind::eventually:
    case FormulaKind::always: {
      std::string kw(to_string(f.kind()));
      if (f.interval().is_full()) return kw + "(" + format_formula(f.operand()) + ")";
      return kw + to_string(f.interval()) + " (" + format_formula(f.operand()) + ")";
    }
    case FormulaKind::conjunction:
    case FormulaKind::disjunction:
    case FormulaKind::implication:
      return operand_text(f.lhs()) + " " + std::string(to_string(f.kind())) + " " + operand_text(f.rhs());
    case FormulaKind::since:
    case FormulaKind::until:
    case FormulaKind::delayed_until: {
      std::string op(to_string(f.kind()));
      if (!f.interval().is_full() || f.kind() == FormulaKind::delayed_until) op += to_string(f.interval());
      return operand_text(f.lhs()) + " " + op + " " + operand_text(f.rhs());
    }
  }
  return "?";
}

}  // namespace stlmon
