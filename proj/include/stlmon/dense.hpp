#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stlmon/duration.hpp"
#include "stlmon/ext_real.hpp"
#include "stlmon/monitor.hpp"
#include "stlmon/spec_model.hpp"

namespace stlmon {

/// Value held from `start` until the next segment starts.
struct Segment {
  double start;
  ExtReal value;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Step function over [segments.front().start, end].
struct PiecewiseSignal {
  std::vector<Segment> segments;
  double end = 0.0;

  /// Merges consecutive segments with equal values.
  void normalize();
  /// Value at t, -inf before the first segment.
  ExtReal at(double t) const;

  friend bool operator==(const PiecewiseSignal&, const PiecewiseSignal&) = default;
};

enum class Extremum { min, max };

/// Pointwise min or max on the common domain.
PiecewiseSignal pw_combine(Extremum op, const PiecewiseSignal& s1, const PiecewiseSignal& s2);

/// o(t) = extremum of s over [t - hi, t - lo], clipped at 0, for t in
/// [0, frontier]. Bounds are in seconds (unitless or timed).
PiecewiseSignal pw_window_extremum(Extremum kind, const PiecewiseSignal& s, const Interval& iv, double frontier);

/// s1 since[lo:hi] s2 for t in [0, frontier]. Segments are atomic: a
/// witness segment of s2 is weighed against s1 on the segments after it.
PiecewiseSignal pw_since(const PiecewiseSignal& s1, const PiecewiseSignal& s2, const Interval& iv, double frontier);

/// Events of one variable, times in seconds.
struct VariableBatch {
  std::string name;
  std::vector<std::pair<double, double>> events;
};

using DenseVerdicts = std::vector<std::pair<std::string, std::vector<Segment>>>;

/// Event-driven monitor over piecewise-constant signals. Output is emitted
/// up to the frontier, the earliest last-received time over all variables.
/// Time resolution is one nanosecond.
class DenseMonitor {
 public:
  /// Pastifies the model in dense time. Throws UnsupportedOperator for
  /// next/prev/rise/fall or a discrete model.
  explicit DenseMonitor(const SpecModel& model);
  ~DenseMonitor();
  DenseMonitor(DenseMonitor&&) noexcept;
  DenseMonitor& operator=(DenseMonitor&&) noexcept;

  /// Appends events and returns, per formula, the newly determined output
  /// segments, merged with what was already emitted. A variable's first
  /// value is taken to hold from time 0. Throws NonMonotoneTime and
  /// UnknownVariable; a rejected batch leaves the monitor unchanged.
  const DenseVerdicts& update(std::span<const VariableBatch> batch);
  const DenseVerdicts& update(std::initializer_list<VariableBatch> batch) {
    return update(std::span<const VariableBatch>(batch.begin(), batch.size()));
  }

  void reset();

  /// Time up to which outputs are final; nullopt before every variable has
  /// received an event. Without referenced variables, the latest time of
  /// any declared variable.
  std::optional<double> frontier() const;
  const std::vector<MonitoredFormula>& formulas() const;
  const std::vector<std::string>& variables() const;
  /// Events currently held across inputs and operator nodes.
  std::size_t state_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace stlmon
