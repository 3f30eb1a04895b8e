#pragma once

#include <optional>
#include <vector>

#include "stlmon/duration.hpp"
#include "stlmon/formula.hpp"
#include "stlmon/spec_model.hpp"

namespace stlmon {

enum class TimeKind { discrete, dense };

inline TimeKind time_kind(const SpecModel& m) { return m.dense() ? TimeKind::dense : TimeKind::discrete; }

/// Horizon H and past depth L of a formula, both in base units of the time
/// domain (samples or seconds).
struct HorizonReport {
  Duration horizon;
  /// nullopt: a past operator with an unbounded window encloses a future
  /// operator, so no finite warm-up covers it.
  std::optional<Duration> past_depth;

  /// H + L, or nullopt if L is unbounded.
  std::optional<Duration> warmup() const;
};

/// Rewrites every interval bound into base units: sample counts for
/// discrete time (via duration_to_samples) and seconds for dense time.
/// Dense time rejects next/prev/rise/fall with UnsupportedOperator.
Formula resolve_bounds(const Formula& f, const TimeDomain& domain);

/// Temporal depth:
///   H(pred) = 0, H(not f) = H(f), H(f or g) = max, H(next f) = H(f) + 1,
///   H(f until[a,b] g) = b + max(H(f) - 1, H(g)),
///   H(eventually[a,b] f) = H(always[a,b] f) = b + H(f),
/// past operators add nothing. In dense time the until rule is
/// b + max(H(f), H(g)) because there is no step to subtract.
///
/// Bounds must be resolved. A root-level always/eventually with an
/// unbounded interval is measured through (it becomes historically/once);
/// any other unbounded future operator throws UnboundedFuture.
HorizonReport horizon(const Formula& f, TimeKind kind = TimeKind::discrete);

struct PastifiedFormula {
  Formula formula;
  HorizonReport report;
};

/// Past-only form of a resolved formula, evaluated H steps late:
///   root always/eventually over [a, inf) -> historically/once;
///   P(p, d) = delay[d] p,  P(not f, d) = not P(f, d), pointwise for and/or,
///   P(next f, d) = P(f, d - 1),
///   P(eventually[a,b] f, d) = once[0:b-a] P(f, d - b), dually always,
///   P(f until[a,b] g, d) = P(f, d-b+1) until@[a:b] P(g, d-b),
///   past operators over future operands are kept and pushed through,
///   past-only operators are delayed whole.
/// delay[0] f is dropped, nested delays are merged and once[0:0] f is f.
PastifiedFormula pastify_formula(const Formula& f, TimeKind kind = TimeKind::discrete);

/// Resolves bounds against the model's time domain and pastifies every
/// formula. Idempotent.
SpecModel pastify(const SpecModel& model);

/// Per-formula reports, in formula order, for a (not yet pastified) model.
std::vector<HorizonReport> horizons(const SpecModel& model);

}  // namespace stlmon
