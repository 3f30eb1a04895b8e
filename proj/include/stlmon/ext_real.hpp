#pragma once

#include <cmath>
#include <compare>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>

namespace stlmon {

/// A robustness value: a finite real or one of the poles +inf / -inf.
///
/// There is deliberately no arithmetic besides negation. Predicate
/// expressions are evaluated on plain doubles and only wrapped here once the
/// result is known to be finite.
class ExtReal {
 public:
  constexpr ExtReal() = default;

  /// Throws ArithmeticError if x is NaN or infinite.
  static ExtReal finite(double x);
  static constexpr ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  constexpr bool is_finite() const { return v_ != pos_inf().v_ && v_ != neg_inf().v_; }
  constexpr bool is_pos_inf() const { return v_ == std::numeric_limits<double>::infinity(); }
  constexpr bool is_neg_inf() const { return v_ == -std::numeric_limits<double>::infinity(); }

  /// Finite value; throws ArithmeticError on a pole.
  double value() const;

  /// IEEE view with poles mapped to +/-infinity. Only for I/O boundaries.
  constexpr double to_double() const { return v_; }
  static ExtReal from_double(double x);

  constexpr ExtReal operator-() const { return ExtReal(-v_); }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend constexpr std::partial_ordering operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

 private:
  constexpr explicit ExtReal(double v) : v_(v) {}

  double v_ = 0.0;
};

constexpr ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }
constexpr ExtReal min(ExtReal a, ExtReal b) { return b < a ? b : a; }

/// Maximum of a list; -inf on the empty list.
ExtReal ext_max(std::span<const ExtReal> values);
/// Minimum of a list; +inf on the empty list.
ExtReal ext_min(std::span<const ExtReal> values);

inline ExtReal ext_max(std::initializer_list<ExtReal> values) {
  return ext_max(std::span<const ExtReal>(values.begin(), values.size()));
}
inline ExtReal ext_min(std::initializer_list<ExtReal> values) {
  return ext_min(std::span<const ExtReal>(values.begin(), values.size()));
}

/// +inf if a > 0, -inf otherwise (zero included).
ExtReal sign_inf(double a);

/// Shortest decimal text that reads back to the same value; poles as inf/-inf.
std::string to_string(ExtReal x);
std::string format_double(double x);

}  // namespace stlmon
