#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stlmon/errors.hpp"
#include "stlmon/formula.hpp"
#include "stlmon/spec_model.hpp"

namespace stlmon {

/// Parses a specification:
///
///   spec   := (import | decl | annot | assign)*
///   import := "from" PATH "import" IDENT | "import" PATH
///   decl   := ("input" | "output") TYPE? PATH      (one line)
///   annot  := "@" IDENT "(" raw text ")"
///   assign := PATH "=" formula
///
/// Formula operators from loosest to tightest: implies (also `->`, right
/// associative); until/since with optional interval; or; and; prefix
/// operators (not, always, eventually, once, historically, next, prev,
/// rise, fall); comparisons; + -; * /; unary minus, abs(), literals, paths,
/// parentheses. Intervals are `[lo:hi]` or `[lo,hi]`; bounds take an
/// optional s/ms/us/ns suffix and the upper bound may be `inf`.
/// Keywords are case-insensitive; `#` starts a comment.
///
/// Throws ParseError on syntax errors and ValidationError when validate()
/// reports anything.
SpecModel parse_spec(std::string_view text);

/// Parses a lone formula, e.g. `always[0:5] (a >= 3)`. No validation.
Formula parse_formula(std::string_view text);

/// Diagnostics for undeclared variables (when any declaration exists),
/// duplicate formula names, unbounded until, and unbounded future
/// operators below the root. Empty iff the model is valid.
std::vector<Diagnostic> validate(const SpecModel& model);

/// Text that parse_formula() reads back to an equal formula. Internal nodes
/// print as `delay[d] (f)` and `f until@[a:b] g`.
std::string format_formula(const Formula& f);

}  // namespace stlmon
