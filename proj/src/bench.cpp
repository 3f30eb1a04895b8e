#include "stlmon/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "stlmon/monitor.hpp"
#include "stlmon/parser.hpp"

namespace stlmon {

std::optional<BenchPattern> parse_bench_pattern(std::string_view text) {
  if (text == "random") return BenchPattern::random;
  if (text == "increasing") return BenchPattern::increasing;
  return std::nullopt;
}

namespace {

volatile double g_sink = 0.0;

BenchResult run_one(std::int64_t k, std::int64_t n_updates, std::uint64_t seed, BenchPattern pattern) {
  SpecModel model = parse_spec("out = always[0:" + std::to_string(k) + "] (a + b > -2)");
  DiscreteMonitor monitor(model);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-5.0, 5.0);
  const std::int64_t warmup = k + 1;
  const std::int64_t total = warmup + n_updates;
  auto next_value = [&](std::int64_t t) {
    if (pattern == BenchPattern::increasing) return -5.0 + 10.0 * static_cast<double>(t) / static_cast<double>(total);
    return uniform(rng);
  };

  BenchResult r;
  r.k = k;
  r.n_updates = n_updates;
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(n_updates));
  double sink = 0.0;
  for (std::int64_t t = 0; t < total; ++t) {
    Sample samples[2] = {{"a", next_value(t)}, {"b", next_value(t)}};
    auto start = std::chrono::steady_clock::now();
    const Verdicts& v = monitor.update(t, samples);
    auto stop = std::chrono::steady_clock::now();
    sink += v.front().second.to_double();
    r.max_wedge = std::max(r.max_wedge, monitor.max_wedge_size());
    if (t >= warmup) times.push_back(std::chrono::duration<double>(stop - start).count());
  }
  g_sink = sink;
  if (!times.empty()) {
    double sum = 0.0;
    for (double x : times) sum += x;
    r.mean = sum / static_cast<double>(times.size());
    std::sort(times.begin(), times.end());
    r.median = times[times.size() / 2];
    r.p99 = times[std::min(times.size() - 1, times.size() * 99 / 100)];
  }
  return r;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

std::vector<BenchResult> run_bench(const std::vector<std::int64_t>& k_list, std::int64_t n_updates,
                                   std::uint64_t seed, BenchPattern pattern) {
  std::vector<BenchResult> out;
  for (std::int64_t k : k_list) out.push_back(run_one(k, n_updates, seed, pattern));
  return out;
}

std::string format_bench_table(const std::vector<BenchResult>& results) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%10s %10s %12s %12s %12s %10s\n", "k", "updates", "mean[s]", "median[s]",
                "p99[s]", "max_wedge");
  out += line;
  for (const BenchResult& r : results) {
    std::snprintf(line, sizeof line, "%10lld %10lld %12s %12s %12s %10zu\n", static_cast<long long>(r.k),
                  static_cast<long long>(r.n_updates), sci(r.mean).c_str(), sci(r.median).c_str(),
                  sci(r.p99).c_str(), r.max_wedge);
    out += line;
  }
  return out;
}

std::string format_bench_json(const std::vector<BenchResult>& results) {
  std::string out;
  for (const BenchResult& r : results) {
    nlohmann::json j = {{"k", r.k},           {"n_updates", r.n_updates}, {"mean", r.mean},
                        {"median", r.median}, {"p99", r.p99},             {"max_wedge", r.max_wedge}};
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace stlmon
