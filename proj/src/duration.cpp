#include "stlmon/duration.hpp"

#include <cctype>
#include <stdexcept>

#include "stlmon/errors.hpp"

namespace stlmon {

std::optional<TimeUnit> parse_time_unit(std::string_view text) {
  if (text == "s") return TimeUnit::s;
  if (text == "ms") return TimeUnit::ms;
  if (text == "us") return TimeUnit::us;
  if (text == "ns") return TimeUnit::ns;
  return std::nullopt;
}

std::string_view to_string(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::s: return "s";
    case TimeUnit::ms: return "ms";
    case TimeUnit::us: return "us";
    case TimeUnit::ns: return "ns";
  }
  return "?";
}

std::int64_t nanos_per(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::s: return 1'000'000'000;
    case TimeUnit::ms: return 1'000'000;
    case TimeUnit::us: return 1'000;
    case TimeUnit::ns: return 1;
  }
  return 1;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::invalid_argument("duration out of range");
  return r;
}

}  // namespace

Duration Duration::of(std::int64_t count, TimeUnit unit) {
  if (count < 0) throw std::invalid_argument("negative duration");
  return Duration(checked_mul(count, nanos_per(unit)), false);
}

Duration Duration::units(std::int64_t count) {
  if (count < 0) throw std::invalid_argument("negative duration");
  return Duration(checked_mul(count, kScale), true);
}

Duration Duration::parse(std::string_view text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  std::int64_t frac_scale = 1;
  bool digits = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    whole = checked_mul(whole, 10) + (text[i] - '0');
    digits = true;
    ++i;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (frac_scale >= kScale) throw std::invalid_argument("duration has more than 9 decimals");
      frac = frac * 10 + (text[i] - '0');
      frac_scale *= 10;
      digits = true;
      ++i;
    }
  }
  if (!digits) throw std::invalid_argument("malformed duration '" + std::string(text) + "'");
  skip_ws();
  std::string_view suffix = text.substr(i);
  while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.back()))) suffix.remove_suffix(1);

  std::int64_t unit_scale = kScale;
  bool unitless = true;
  if (!suffix.empty()) {
    auto unit = parse_time_unit(suffix);
    if (!unit) throw std::invalid_argument("unknown time unit '" + std::string(suffix) + "'");
    unit_scale = nanos_per(*unit);
    unitless = false;
  }
  // value = (whole + frac / frac_scale) * unit_scale, which must be integral.
  std::int64_t scaled = checked_mul(whole, unit_scale);
  std::int64_t frac_scaled = checked_mul(frac, unit_scale);
  if (frac_scaled % frac_scale != 0) {
    throw std::invalid_argument("duration '" + std::string(text) + "' is finer than 1ns");
  }
  return Duration(scaled + frac_scaled / frac_scale, unitless);
}

std::int64_t Duration::whole_units() const {
  if (scaled_ % kScale != 0) {
    throw NotDivisible(to_string(*this) + " is not a whole number of " + (unitless_ ? "steps" : "seconds"));
  }
  return scaled_ / kScale;
}

std::string to_string(const Duration& d) {
  if (d.unitless()) {
    std::int64_t whole = d.scaled() / Duration::kScale;
    std::int64_t frac = d.scaled() % Duration::kScale;
    std::string out = std::to_string(whole);
    if (frac != 0) {
      std::string digits = std::to_string(frac);
      digits.insert(0, 9 - digits.size(), '0');
      while (digits.back() == '0') digits.pop_back();
      out += "." + digits;
    }
    return out;
  }
  for (TimeUnit unit : {TimeUnit::s, TimeUnit::ms, TimeUnit::us}) {
    if (d.scaled() % nanos_per(unit) == 0) {
      return std::to_string(d.scaled() / nanos_per(unit)) + std::string(to_string(unit));
    }
  }
  return std::to_string(d.scaled()) + "ns";
}

std::int64_t duration_to_samples(const Duration& d, const Duration& period) {
  if (d.unitless()) return d.whole_units();
  if (period.unitless()) {
    throw NotDivisible("cannot convert " + to_string(d) + " with a unitless period");
  }
  if (period.scaled() <= 0) throw NotDivisible("sampling period must be positive");
  if (d.scaled() % period.scaled() != 0) {
    throw NotDivisible(to_string(d) + " is not a multiple of the period " + to_string(period));
  }
  return d.scaled() / period.scaled();
}

std::string to_string(const Interval& interval) {
  return "[" + to_string(interval.lo) + ":" + (interval.hi ? to_string(*interval.hi) : std::string("inf")) + "]";
}

}  // namespace stlmon
