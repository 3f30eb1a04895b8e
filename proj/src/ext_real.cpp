#include "stlmon/ext_real.hpp"

#include <array>
#include <charconv>

#include "stlmon/errors.hpp"

namespace stlmon {

ExtReal ExtReal::finite(double x) {
  if (!std::isfinite(x)) {
    throw ArithmeticError("non-finite value " + format_double(x) + " where a finite robustness was required");
  }
  return ExtReal(x);
}

ExtReal ExtReal::from_double(double x) {
  if (std::isnan(x)) throw ArithmeticError("NaN is not a robustness value");
  return ExtReal(x);
}

double ExtReal::value() const {
  if (!is_finite()) throw ArithmeticError("arithmetic on a robustness pole");
  return v_;
}

ExtReal ext_max(std::span<const ExtReal> values) {
  ExtReal acc = ExtReal::neg_inf();
  for (ExtReal v : values) acc = max(acc, v);
  return acc;
}

ExtReal ext_min(std::span<const ExtReal> values) {
  ExtReal acc = ExtReal::pos_inf();
  for (ExtReal v : values) acc = min(acc, v);
  return acc;
}

ExtReal sign_inf(double a) {
  if (!std::isfinite(a)) throw ArithmeticError("sign of a non-finite value");
  return a > 0 ? ExtReal::pos_inf() : ExtReal::neg_inf();
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";  // folds -0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string to_string(ExtReal x) { return format_double(x.to_double()); }

}  // namespace stlmon
