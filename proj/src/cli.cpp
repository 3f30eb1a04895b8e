#include "stlmon/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stlmon/bench.hpp"
#include "stlmon/dense.hpp"
#include "stlmon/errors.hpp"
#include "stlmon/monitor.hpp"
#include "stlmon/parser.hpp"
#include "stlmon/pastify.hpp"
#include "stlmon/trace_io.hpp"

namespace stlmon {

namespace {

struct CliConfig {
  std::string spec_path;
  std::string trace_path;
  std::string output_path;
  std::optional<std::string> period;
  std::string unit = "s";
  bool dense = false;
  std::optional<std::string> semantics;
  bool skip_warmup = false;
  bool fail_on_violation = false;

  std::vector<std::int64_t> k_list{100, 1000, 10000, 100000, 1000000};
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  std::string pattern = "random";
  bool json = false;
};

// Spec-side failures (exit 1).
struct SpecFailure {
  std::string message;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecFailure{"cannot open specification '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TimeUnit unit_of(const CliConfig& cfg) {
  auto u = parse_time_unit(cfg.unit);
  if (!u) throw SpecFailure{"unknown time unit '" + cfg.unit + "' (use s, ms, us or ns)"};
  return *u;
}

SpecModel load_model(const CliConfig& cfg, bool require_period) {
  SpecModel model;
  try {
    model = parse_spec(read_text(cfg.spec_path));
  } catch (const ParseError& e) {
    throw SpecFailure{cfg.spec_path + ":" + e.what()};
  } catch (const ValidationError& e) {
    std::string msg;
    for (const Diagnostic& d : e.diagnostics()) msg += (msg.empty() ? "" : "\n") + cfg.spec_path + ":" + to_string(d);
    throw SpecFailure{msg};
  }
  if (cfg.semantics) {
    auto mode = parse_semantics_mode(*cfg.semantics);
    if (!mode) throw SpecFailure{"unknown semantics '" + *cfg.semantics + "'"};
    model.mode = *mode;
  }
  TimeUnit unit = unit_of(cfg);
  if (cfg.dense) {
    model.time_domain = DenseTime{};
  } else {
    if (!cfg.period && require_period) throw SpecFailure{"discrete time needs --period"};
    DiscreteTime domain;
    if (cfg.period) {
      try {
        Duration p = Duration::parse(*cfg.period + std::string(to_string(unit)));
        if (p.is_zero()) throw std::invalid_argument("zero");
        domain.period = p;
      } catch (const std::invalid_argument&) {
        throw SpecFailure{"invalid period '" + *cfg.period + "'"};
      }
    }
    model.time_domain = domain;
  }
  return model;
}

std::string warmup_text(const HorizonReport& r) {
  std::string l = r.past_depth ? to_string(*r.past_depth) : "inf";
  return "H=" + to_string(r.horizon) + " L=" + l;
}

int cmd_pastify(const CliConfig& cfg, std::ostream& out) {
  SpecModel model = load_model(cfg, false);
  SpecModel past;
  std::vector<HorizonReport> reports;
  try {
    past = pastify(model);
    reports = horizons(model);
  } catch (const Error& e) {
    throw SpecFailure{e.what()};
  }
  for (std::size_t i = 0; i < past.formulas.size(); ++i) {
    out << past.formulas[i].name << " = " << format_formula(past.formulas[i].formula) << "\n";
    out << "  " << warmup_text(reports[i]) << "\n";
  }
  return kExitOk;
}

// H + L scaled by 1e9, or -1 when L is unbounded.
std::int64_t warmup_steps(const HorizonReport& r) {
  auto w = r.warmup();
  if (!w) return -1;
  return w->scaled();
}

int finish(const CliConfig& cfg, std::ostream& out, const std::vector<Series>& series) {
  if (!cfg.output_path.empty()) write_series(cfg.output_path, series);
  bool violated = false;
  for (const Series& s : series) {
    if (s.points.empty()) {
      out << s.name << " = (none)\n";
      continue;
    }
    ExtReal v = s.points.back().second;
    out << s.name << " = " << to_string(v) << "\n";
    if (v < ExtReal::finite(0.0)) violated = true;
  }
  return violated && cfg.fail_on_violation ? kExitViolation : kExitOk;
}

int eval_discrete(const CliConfig& cfg, const SpecModel& model, std::ostream& out) {
  const auto& domain = std::get<DiscreteTime>(model.time_domain);
  TimeUnit unit = unit_of(cfg);
  DiscreteMonitor monitor = [&] {
    try {
      return DiscreteMonitor(model);
    } catch (const Error& e) {
      throw SpecFailure{e.what()};
    }
  }();
  DiscreteTrace trace = read_discrete_trace(cfg.trace_path, domain.period, unit);

  std::vector<const std::vector<double>*> columns;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < trace.names.size(); ++c) {
    const std::string& name = trace.names[c];
    bool used = std::binary_search(monitor.variables().begin(), monitor.variables().end(), name);
    if (!used) continue;
    names.push_back(name);
    columns.push_back(&trace.columns[c]);
  }
  std::vector<Series> series;
  std::vector<std::int64_t> warm;
  for (const auto& mf : monitor.formulas()) {
    series.push_back({mf.name, {}});
    std::int64_t w = warmup_steps(mf.report);
    warm.push_back(w < 0 ? -1 : w / Duration::kScale);
  }
  // Period in the time column's unit.
  const double step = domain.period.to_seconds() * 1e9 / static_cast<double>(nanos_per(unit));
  std::vector<Sample> samples(names.size());
  for (std::size_t k = 0; k < trace.length(); ++k) {
    for (std::size_t i = 0; i < names.size(); ++i) samples[i] = {names[i], (*columns[i])[k]};
    const Verdicts& v = monitor.update(static_cast<std::int64_t>(k), samples);
    for (std::size_t f = 0; f < v.size(); ++f) {
      if (cfg.skip_warmup && (warm[f] < 0 || static_cast<std::int64_t>(k) < warm[f])) continue;
      series[f].points.emplace_back(static_cast<double>(k) * step, v[f].second);
    }
  }
  return finish(cfg, out, series);
}

int eval_dense(const CliConfig& cfg, const SpecModel& model, std::ostream& out) {
  TimeUnit unit = unit_of(cfg);
  DenseMonitor monitor = [&] {
    try {
      return DenseMonitor(model);
    } catch (const Error& e) {
      throw SpecFailure{e.what()};
    }
  }();
  std::vector<VariableBatch> batches = read_dense_batches(cfg.trace_path, unit);
  std::vector<Series> series;
  for (const auto& mf : monitor.formulas()) series.push_back({mf.name, {}});
  const std::size_t rows = batches.empty() ? 0 : batches.front().events.size();
  const double per_unit = static_cast<double>(nanos_per(unit));
  std::vector<VariableBatch> row(batches.size());
  for (std::size_t i = 0; i < batches.size(); ++i) row[i].name = batches[i].name;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < batches.size(); ++i) row[i].events.assign(1, batches[i].events[r]);
    const DenseVerdicts& v = monitor.update(row);
    for (std::size_t f = 0; f < v.size(); ++f) {
      for (const Segment& s : v[f].second) {
        double t = static_cast<double>(std::llround(s.start * 1e9)) / per_unit;
        series[f].points.emplace_back(t, s.value);
      }
    }
  }
  if (cfg.skip_warmup) {
    for (std::size_t f = 0; f < series.size(); ++f) {
      std::int64_t w = warmup_steps(monitor.formulas()[f].report);
      std::vector<std::pair<double, ExtReal>> kept;
      if (w >= 0) {
        const double from = static_cast<double>(w) / per_unit;
        std::optional<ExtReal> held;
        for (const auto& p : series[f].points) {
          if (p.first < from) {
            held = p.second;
            continue;
          }
          if (kept.empty() && held && p.first > from) kept.emplace_back(from, *held);
          kept.push_back(p);
        }
        if (kept.empty() && held && monitor.frontier() && *monitor.frontier() * 1e9 >= static_cast<double>(w)) {
          kept.emplace_back(from, *held);
        }
      }
      series[f].points = std::move(kept);
    }
  }
  return finish(cfg, out, series);
}

int cmd_eval(const CliConfig& cfg, std::ostream& out) {
  SpecModel model = load_model(cfg, true);
  return cfg.dense ? eval_dense(cfg, model, out) : eval_discrete(cfg, model, out);
}

int cmd_bench(const CliConfig& cfg, std::ostream& out) {
  auto pattern = parse_bench_pattern(cfg.pattern);
  if (!pattern) throw SpecFailure{"unknown pattern '" + cfg.pattern + "' (use random or increasing)"};
  auto results = run_bench(cfg.k_list, cfg.samples, cfg.seed, *pattern);
  out << (cfg.json ? format_bench_json(results) : format_bench_table(results));
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Online robustness monitor for bounded-future STL specifications", "stlmon"};
  app.require_subcommand(1);

  auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("--stl,--spec", cfg.spec_path, "Specification file")->required();
    cmd->add_option("--period", cfg.period, "Sampling period (discrete time)");
    cmd->add_option("--unit", cfg.unit, "Unit of --period and of trace times: s, ms, us, ns");
    cmd->add_flag("--dense", cfg.dense, "Dense (event-driven) time");
  };

  CLI::App* eval = app.add_subcommand("eval", "Monitor a trace and write the robustness series");
  add_spec(eval);
  eval->add_option("--trace", cfg.trace_path, "CSV trace")->required();
  eval->add_option("--semantics", cfg.semantics, "standard, output-robustness or input-vacuity");
  eval->add_flag("--skip-warmup", cfg.skip_warmup, "Drop outputs before H + L");
  eval->add_option("--output,-o", cfg.output_path, "Output CSV");
  eval->add_flag("--fail-on-violation", cfg.fail_on_violation, "Exit 3 if a final robustness is negative");

  CLI::App* past = app.add_subcommand("pastify", "Print past-only forms with horizon H and past depth L");
  add_spec(past);

  CLI::App* bench = app.add_subcommand("bench", "Time updates of always[0:k] (a + b > -2)");
  const auto positive = CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max(), "positive integer");
  bench->add_option("--k", cfg.k_list, "Window bounds")->check(positive);
  bench->add_option("--samples", cfg.samples, "Timed updates per k")->check(positive);
  bench->add_option("--seed", cfg.seed, "Generator seed");
  bench->add_option("--pattern", cfg.pattern, "random or increasing");
  bench->add_flag("--json", cfg.json, "One JSON object per k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSpecError;
  }

  try {
    if (*eval) return cmd_eval(cfg, out);
    if (*past) return cmd_pastify(cfg, out);
    return cmd_bench(cfg, out);
  } catch (const SpecFailure& e) {
    err << "error: " << e.message << "\n";
    return kExitSpecError;
  } catch (const FormatError& e) {
    err << "error: " << cfg.trace_path << ": " << e.what() << "\n";
    return kExitTraceError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitTraceError;
  }
}

}  // namespace stlmon
