#include "stlmon/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "stlmon/errors.hpp"

namespace stlmon {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string_view>> rows;
  std::vector<std::size_t> lines;
  std::size_t header_line = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Table parse_table(std::string_view text) {
  Table t;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line);
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i].empty()) throw FormatError(line_no, i + 1, "empty column name");
        t.header.emplace_back(fields[i]);
      }
      t.header_line = line_no;
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw FormatError(line_no, std::min(fields.size(), t.header.size()) + 1,
                        "expected " + std::to_string(t.header.size()) + " fields, found " +
                            std::to_string(fields.size()));
    }
    t.rows.push_back(std::move(fields));
    t.lines.push_back(line_no);
  }
  if (!have_header) throw FormatError(1, 1, "missing header");
  return t;
}

double parse_number(std::string_view s, std::size_t row, std::size_t col, bool allow_poles) {
  std::string_view body = s;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double x = 0.0;
  auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), x);
  if (body.empty() || ec != std::errc() || end != body.data() + body.size() || std::isnan(x)) {
    throw FormatError(row, col, "not a number: '" + std::string(s) + "'");
  }
  if (!allow_poles && std::isinf(x)) throw FormatError(row, col, "value must be finite: '" + std::string(s) + "'");
  return x;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

double unit_seconds(TimeUnit unit) { return static_cast<double>(nanos_per(unit)) / 1e9; }

}  // namespace

DiscreteTrace parse_discrete_trace(std::string_view text, Duration period, TimeUnit unit) {
  Table t = parse_table(text);
  const bool timed = !t.header.empty() && t.header.front() == "time";
  const std::size_t first = timed ? 1 : 0;
  DiscreteTrace trace;
  trace.period = period;
  for (std::size_t c = first; c < t.header.size(); ++c) trace.add(t.header[c], {});
  // Period expressed in the time column's unit.
  const double step = period.unitless() ? period.to_seconds() : period.to_seconds() / unit_seconds(unit);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    if (timed) {
      double time = parse_number(row[0], t.lines[r], 1, false);
      double expected = static_cast<double>(r) * step;
      double tol = 1e-9 * std::max(std::fabs(expected), step);
      if (std::fabs(time - expected) > tol) {
        throw NonUniformTime("row " + std::to_string(t.lines[r]) + ": time " + format_double(time) +
                             ", expected " + format_double(expected));
      }
    }
    for (std::size_t c = first; c < row.size(); ++c) {
      trace.columns[c - first].push_back(parse_number(row[c], t.lines[r], c + 1, false));
    }
  }
  return trace;
}

DiscreteTrace read_discrete_trace(const std::string& path, Duration period, TimeUnit unit) {
  return parse_discrete_trace(slurp(path), period, unit);
}

std::vector<VariableBatch> parse_dense_batches(std::string_view text, TimeUnit unit) {
  Table t = parse_table(text);
  if (t.header.empty() || t.header.front() != "time") {
    throw FormatError(t.header_line, 1, "dense traces need a leading 'time' column");
  }
  std::vector<VariableBatch> out;
  for (std::size_t c = 1; c < t.header.size(); ++c) out.push_back({t.header[c], {}});
  const double scale = unit_seconds(unit);
  double last = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    double time = parse_number(row[0], t.lines[r], 1, false);
    if ((r > 0 && time <= last) || time < 0) {
      throw NonMonotoneTime("row " + std::to_string(t.lines[r]) + ": time " + format_double(time) +
                            " does not increase");
    }
    last = time;
    for (std::size_t c = 1; c < row.size(); ++c) {
      out[c - 1].events.emplace_back(time * scale, parse_number(row[c], t.lines[r], c + 1, false));
    }
  }
  return out;
}

std::vector<VariableBatch> read_dense_batches(const std::string& path, TimeUnit unit) {
  return parse_dense_batches(slurp(path), unit);
}

std::string format_series(const std::vector<Series>& series) {
  std::string out = "time";
  for (const Series& s : series) out += "," + s.name;
  out += "\n";
  std::vector<double> times;
  for (const Series& s : series) {
    for (const auto& p : s.points) times.push_back(p.first);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<std::size_t> cursor(series.size(), 0);
  for (double time : times) {
    out += format_double(time);
    for (std::size_t i = 0; i < series.size(); ++i) {
      out += ",";
      const auto& pts = series[i].points;
      if (cursor[i] < pts.size() && pts[cursor[i]].first == time) out += to_string(pts[cursor[i]++].second);
    }
    out += "\n";
  }
  return out;
}

void write_series(const std::string& path, const std::vector<Series>& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << format_series(series);
  if (!out.flush()) throw IoError("cannot write '" + path + "'");
}

std::vector<Series> parse_series(std::string_view text) {
  Table t = parse_table(text);
  if (t.header.empty() || t.header.front() != "time") throw FormatError(t.header_line, 1, "expected 'time' column");
  std::vector<Series> out;
  for (std::size_t c = 1; c < t.header.size(); ++c) out.push_back({t.header[c], {}});
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    double time = parse_number(row[0], t.lines[r], 1, false);
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c].empty()) continue;
      out[c - 1].points.emplace_back(time, ExtReal::from_double(parse_number(row[c], t.lines[r], c + 1, true)));
    }
  }
  return out;
}

std::vector<Series> read_series(const std::string& path) { return parse_series(slurp(path)); }

}  // namespace stlmon
