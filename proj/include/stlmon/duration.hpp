#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace stlmon {

enum class TimeUnit { s, ms, us, ns };

std::optional<TimeUnit> parse_time_unit(std::string_view text);
std::string_view to_string(TimeUnit unit);
std::int64_t nanos_per(TimeUnit unit);

/// A nonnegative length of time, or a unitless count of the time domain's
/// base step (samples in discrete time, seconds in dense time).
///
/// Both flavours are stored as integers scaled by 1e9 so that decimal
/// bounds such as `1.5s` or `0.25` convert exactly.
class Duration {
 public:
  static constexpr std::int64_t kScale = 1'000'000'000;

  constexpr Duration() = default;

  static Duration of(std::int64_t count, TimeUnit unit);
  static Duration units(std::int64_t count);
  static constexpr Duration from_scaled(std::int64_t scaled, bool unitless) { return Duration(scaled, unitless); }
  static constexpr Duration zero() { return Duration(); }

  /// Parses `12`, `1.5`, `100ms`, `2 s`. Throws std::invalid_argument.
  static Duration parse(std::string_view text);

  constexpr std::int64_t scaled() const { return scaled_; }
  constexpr bool unitless() const { return unitless_; }
  constexpr bool is_zero() const { return scaled_ == 0; }

  /// Seconds for time durations, base units for unitless ones.
  double to_seconds() const { return static_cast<double>(scaled_) / static_cast<double>(kScale); }

  /// Whole number of base units; throws NotDivisible otherwise.
  std::int64_t whole_units() const;

  friend constexpr bool operator==(const Duration&, const Duration&) = default;

 private:
  // Zero carries no unit so that `[0:2s]` and `[0s:2s]` compare equal.
  constexpr Duration(std::int64_t scaled, bool unitless) : scaled_(scaled), unitless_(unitless || scaled == 0) {}

  std::int64_t scaled_ = 0;
  bool unitless_ = true;
};

/// Text that parses back to the same Duration (`5`, `1.5`, `100ms`).
std::string to_string(const Duration& d);

/// d / period as an exact sample count. A unitless d is already a sample
/// count. Throws NotDivisible when the division leaves a remainder.
std::int64_t duration_to_samples(const Duration& d, const Duration& period);

/// [lo, hi] or [lo, inf).
struct Interval {
  Duration lo;
  std::optional<Duration> hi;

  static Interval unbounded() { return {}; }
  static Interval closed(Duration lo, Duration hi) { return {lo, hi}; }
  static Interval samples(std::int64_t lo, std::int64_t hi) { return {Duration::units(lo), Duration::units(hi)}; }

  bool bounded() const { return hi.has_value(); }
  bool is_full() const { return lo.is_zero() && !hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// `[0:5]`, `[2:inf]`.
std::string to_string(const Interval& interval);

}  // namespace stlmon
