#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stlmon/dense.hpp"
#include "stlmon/duration.hpp"
#include "stlmon/ext_real.hpp"
#include "stlmon/oracle.hpp"

namespace stlmon {

// CSV traces: comma separated, first line is the header, `#` lines and
// blank lines are skipped. Time values are expressed in `unit`.

/// Columns other than an optional leading `time` become variables. With a
/// time column, row k must be at k * period within one part in 1e9.
/// Throws IoError, FormatError, NonUniformTime.
DiscreteTrace read_discrete_trace(const std::string& path, Duration period, TimeUnit unit = TimeUnit::s);
DiscreteTrace parse_discrete_trace(std::string_view text, Duration period, TimeUnit unit = TimeUnit::s);

/// One batch per variable column holding every (time, value) row, times
/// converted to seconds. The first column must be `time`.
/// Throws IoError, FormatError, NonMonotoneTime.
std::vector<VariableBatch> read_dense_batches(const std::string& path, TimeUnit unit = TimeUnit::s);
std::vector<VariableBatch> parse_dense_batches(std::string_view text, TimeUnit unit = TimeUnit::s);

struct Series {
  std::string name;
  std::vector<std::pair<double, ExtReal>> points;

  friend bool operator==(const Series&, const Series&) = default;
};

/// `time,<name1>,<name2>,...` with one row per distinct time; a cell is
/// empty when that series has no point at the row's time. Poles are
/// written as inf and -inf. Throws IoError.
void write_series(const std::string& path, const std::vector<Series>& series);
std::string format_series(const std::vector<Series>& series);

/// Inverse of format_series. Throws IoError, FormatError.
std::vector<Series> read_series(const std::string& path);
std::vector<Series> parse_series(std::string_view text);

}  // namespace stlmon
