#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stlmon {

enum class BenchPattern { random, increasing };

std::optional<BenchPattern> parse_bench_pattern(std::string_view text);

struct BenchResult {
  std::int64_t k = 0;
  /// Timed updates, after k + 1 untimed ones that fill the window.
  std::int64_t n_updates = 0;
  double mean = 0.0;
  double median = 0.0;
  double p99 = 0.0;
  /// Largest wedge occupancy seen.
  std::size_t max_wedge = 0;
};

/// Monitors `out = always[0:k] (a + b > -2)` for each k. Inputs are uniform
/// in [-5, 5] from a seeded generator, or steadily increasing, which keeps
/// the wedge full. Times are in seconds.
std::vector<BenchResult> run_bench(const std::vector<std::int64_t>& k_list, std::int64_t n_updates,
                                   std::uint64_t seed, BenchPattern pattern = BenchPattern::random);

std::string format_bench_table(const std::vector<BenchResult>& results);
/// One JSON object per line.
std::string format_bench_json(const std::vector<BenchResult>& results);

}  // namespace stlmon
