#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stlmon/ext_real.hpp"
#include "stlmon/formula.hpp"
#include "stlmon/pastify.hpp"
#include "stlmon/spec_model.hpp"

namespace stlmon {

/// One variable value of an update.
struct Sample {
  std::string_view name;
  double value;
};

/// A monitored formula: the original, its past form and the numbers that
/// relate them. Horizon and past depth are in the domain's base units.
struct MonitoredFormula {
  std::string name;
  Formula original;
  Formula pastified;
  HorizonReport report;
};

using Verdicts = std::vector<std::pair<std::string, ExtReal>>;

/// Time-triggered monitor. Every update consumes one sample per variable
/// and yields the past form's robustness at that index, which is the
/// original formula's robustness H samples earlier. Memory is fixed at
/// construction.
class DiscreteMonitor {
 public:
  /// Pastifies the model. Throws on unbounded until, non-divisible bounds
  /// or a dense model.
  explicit DiscreteMonitor(const SpecModel& model);
  ~DiscreteMonitor();
  DiscreteMonitor(DiscreteMonitor&&) noexcept;
  DiscreteMonitor& operator=(DiscreteMonitor&&) noexcept;

  /// `t` must be the next index. Every referenced variable must be present
  /// exactly once; declared but unreferenced variables may be supplied.
  /// Throws OutOfOrderUpdate, MissingVariable, DuplicateVariable,
  /// UnknownVariable. The result is valid until the next call.
  const Verdicts& update(std::int64_t t, std::span<const Sample> samples);
  const Verdicts& update(std::int64_t t, std::initializer_list<Sample> samples) {
    return update(t, std::span<const Sample>(samples.begin(), samples.size()));
  }

  void reset();

  std::int64_t next_index() const;
  const std::vector<MonitoredFormula>& formulas() const;
  /// Referenced variables, sorted.
  const std::vector<std::string>& variables() const;
  const SpecModel& model() const;

  /// Allocated state cells (buffer slots and accumulators).
  std::size_t cell_count() const;
  /// Wedge pushes and pops since construction or reset.
  std::uint64_t wedge_operations() const;
  /// Largest current wedge occupancy.
  std::size_t max_wedge_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

DiscreteMonitor new_monitor(const SpecModel& model);

}  // namespace stlmon
