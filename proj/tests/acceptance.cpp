// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gen.hpp"
#include "stlmon/bench.hpp"
#include "stlmon/dense.hpp"
#include "stlmon/errors.hpp"
#include "stlmon/monitor.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/parser.hpp"
#include "stlmon/pastify.hpp"

using namespace stlmon;
using testgen::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::int64_t steps(const Duration& d) { return d.scaled() / Duration::kScale; }

std::vector<ExtReal> run_discrete(DiscreteMonitor& m, const DiscreteTrace& w) {
  std::vector<ExtReal> out;
  std::vector<Sample> samples;
  for (std::size_t k = 0; k < w.length(); ++k) {
    samples.clear();
    for (const auto& v : m.variables()) samples.push_back({v, w.column(v)[k]});
    out.push_back(m.update(static_cast<std::int64_t>(k), samples).front().second);
  }
  return out;
}

std::string show(const Formula& f) { return format_formula(f); }

// --- oracle differential -------------------------------------------------

Outcome oracle_differential() {
  Outcome o;
  Rng rng(20240601);
  testgen::Options opt;
  const SemanticsMode modes[] = {SemanticsMode::standard, SemanticsMode::output_robustness,
                                 SemanticsMode::input_vacuity};
  int compared_shifted = 0;
  for (int i = 0; i < 1000 && o.pass; ++i) {
    Formula f = testgen::random_formula(rng, opt);
    DiscreteTrace w = testgen::random_trace(rng, opt.vars, static_cast<std::size_t>(testgen::uniform(rng, 1, 64)));
    SemanticsMode mode = modes[i % 3];
    IoSignature io = testgen::random_io(rng, opt.vars);
    SpecModel model = testgen::single_formula_model(f, DiscreteTime{}, mode, io);
    DiscreteMonitor m(model);
    const MonitoredFormula& mf = m.formulas().front();
    std::vector<ExtReal> online = run_discrete(m, w);
    std::vector<ExtReal> past = offline_series(mf.pastified, w, mode, io);
    std::vector<ExtReal> orig = offline_series(f, w, mode, io);
    for (std::size_t k = 0; k < w.length(); ++k) {
      if (!(online[k] == past[k])) {
        o.fail("pastified mismatch at " + std::to_string(k) + " for " + show(mf.pastified));
        break;
      }
    }
    if (!mf.report.past_depth) continue;
    const std::int64_t h = steps(mf.report.horizon);
    const std::int64_t l = steps(*mf.report.past_depth);
    for (std::int64_t t = l; t + h < static_cast<std::int64_t>(w.length()); ++t) {
      ++compared_shifted;
      if (!(online[static_cast<std::size_t>(t + h)] == orig[static_cast<std::size_t>(t)])) {
        o.fail("shifted mismatch at t=" + std::to_string(t) + " for " + show(f));
        break;
      }
    }
  }
  if (o.pass) o.detail = "1000 pairs, " + std::to_string(compared_shifted) + " shifted indices compared";
  return o;
}

// --- pastification horizon shift -----------------------------------------

Outcome pastification_shift() {
  Outcome o;
  Rng rng(77);
  testgen::Options opt;
  int compared = 0;
  for (int i = 0; i < 500 && o.pass; ++i) {
    Formula f = testgen::random_formula(rng, opt);
    PastifiedFormula p = pastify_formula(f);
    DiscreteTrace w = testgen::random_trace(rng, opt.vars, 64);
    auto orig = offline_series(f, w);
    auto past = offline_series(p.formula, w);
    if (!p.report.past_depth) continue;
    const std::int64_t h = steps(p.report.horizon);
    const std::int64_t l = steps(*p.report.past_depth);
    for (std::int64_t t = l; t + h < 64; ++t) {
      ++compared;
      if (!(orig[static_cast<std::size_t>(t)] == past[static_cast<std::size_t>(t + h)])) {
        o.fail("counterexample at t=" + std::to_string(t) + ": " + show(f));
        break;
      }
    }
  }
  if (o.pass) o.detail = "500 formulas, " + std::to_string(compared) + " indices compared";
  return o;
}

// --- request-grant ---------------------------------------------------------

// Direct evaluation of always(req >= 3 -> eventually[0:5] gnt >= 3) at 0.
ExtReal hand_rg(const std::vector<double>& req, const std::vector<double>& gnt, SemanticsMode mode) {
  const std::size_t n = req.size();
  auto pred_req = [&](std::size_t t) {
    double f = req[t] - 3;
    // req is an input: relative to outputs it is a pole; under vacuity it is itself.
    if (mode == SemanticsMode::output_robustness) return sign_inf(f);
    return ExtReal::finite(f);
  };
  auto pred_gnt = [&](std::size_t t) {
    double f = gnt[t] - 3;
    if (mode == SemanticsMode::input_vacuity) return ExtReal::finite(0.0);
    return ExtReal::finite(f);
  };
  ExtReal all = ExtReal::pos_inf();
  for (std::size_t t = 0; t < n; ++t) {
    ExtReal ev = ExtReal::neg_inf();
    for (std::size_t u = t; u <= std::min(n - 1, t + 5); ++u) ev = max(ev, pred_gnt(u));
    all = min(all, max(-pred_req(t), ev));
  }
  return all;
}

Outcome request_grant() {
  Outcome o;
  const char* text =
      "input req\n"
      "output gnt\n"
      "out = always((req >= 3) implies (eventually[0:5] (gnt >= 3)))\n";
  SpecModel model = parse_spec(text);
  const Formula& f = model.formulas.front().formula;
  std::vector<double> req(10, 0.0), gnt(10, 0.0), none(10, 0.0);
  req[2] = 5.0;
  DiscreteTrace w;
  w.add("req", req);
  w.add("gnt", gnt);
  DiscreteTrace quiet;
  quiet.add("req", none);
  quiet.add("gnt", gnt);

  struct Case {
    const DiscreteTrace* trace;
    SemanticsMode mode;
    const char* label;
  } cases[] = {{&w, SemanticsMode::standard, "standard"},
               {&w, SemanticsMode::output_robustness, "output-robustness"},
               {&quiet, SemanticsMode::output_robustness, "no-request output-robustness"},
               {&quiet, SemanticsMode::input_vacuity, "no-request input-vacuity"}};
  std::string values;
  for (const Case& c : cases) {
    ExtReal oracle = offline_robustness(f, *c.trace, 0, c.mode, model.io);
    ExtReal hand = hand_rg(c.trace->column("req"), c.trace->column("gnt"), c.mode);
    if (!(oracle == hand)) o.fail(std::string(c.label) + ": oracle " + to_string(oracle) + " vs " + to_string(hand));
    values += std::string(values.empty() ? "" : ", ") + c.label + "=" + to_string(oracle);
  }
  if (!(offline_robustness(f, w, 0, SemanticsMode::standard, model.io) == ExtReal::finite(-2))) o.fail("standard != -2");
  if (!(offline_robustness(f, w, 0, SemanticsMode::output_robustness, model.io) == ExtReal::finite(-3))) {
    o.fail("output-robustness != -3");
  }
  if (!offline_robustness(f, quiet, 0, SemanticsMode::output_robustness, model.io).is_pos_inf()) {
    o.fail("no-request output-robustness is not +inf");
  }
  ExtReal nu = offline_robustness(f, quiet, 0, SemanticsMode::input_vacuity, model.io);
  if (!(nu.is_finite() && nu > ExtReal::finite(0))) o.fail("no-request input-vacuity is not finite positive");

  // The online monitor reports the same value five samples late.
  model.mode = SemanticsMode::standard;
  DiscreteMonitor m(model);
  auto online = run_discrete(m, w);
  if (!(online[7] == ExtReal::finite(-2))) o.fail("monitor at t=7 is " + to_string(online[7]));
  if (o.pass) o.detail = values;
  return o;
}

// --- IA predicate cases ----------------------------------------------------

Outcome ia_cases() {
  Outcome o;
  IoSignature io;
  io.declare("i", IoKind::input);
  io.declare("o", IoKind::output);
  std::map<std::string, double> val{{"i", 5.0}, {"o", -2.0}};
  // Y = {i}, Y = {o}, Y = {i, o}; f = sum of Y + 1.
  const Expr ei = Expr::binary(Expr::Kind::add, Expr::variable("i"), Expr::constant(1));
  const Expr eo = Expr::binary(Expr::Kind::add, Expr::variable("o"), Expr::constant(1));
  const Expr eio = Expr::binary(Expr::Kind::add, Expr::binary(Expr::Kind::add, Expr::variable("i"), Expr::variable("o")),
                                Expr::constant(1));
  const double fi = 6.0, fo = -1.0, fio = 4.0;
  struct Case {
    SemanticsMode mode;
    const Expr* e;
    ExtReal expected;
    const char* label;
  } cases[] = {
      // standard: U = all, V = empty -> always the value
      {SemanticsMode::standard, &ei, ExtReal::finite(fi), "standard/{i}"},
      {SemanticsMode::standard, &eo, ExtReal::finite(fo), "standard/{o}"},
      {SemanticsMode::standard, &eio, ExtReal::finite(fio), "standard/{i,o}"},
      // output robustness: U = {o}, V = {i}
      {SemanticsMode::output_robustness, &ei, ExtReal::pos_inf(), "output/{i}"},
      {SemanticsMode::output_robustness, &eo, ExtReal::finite(fo), "output/{o}"},
      {SemanticsMode::output_robustness, &eio, ExtReal::finite(fio), "output/{i,o}"},
      // input vacuity: U = {i}, V = empty
      {SemanticsMode::input_vacuity, &ei, ExtReal::finite(fi), "vacuity/{i}"},
      {SemanticsMode::input_vacuity, &eo, ExtReal::finite(0), "vacuity/{o}"},
      {SemanticsMode::input_vacuity, &eio, ExtReal::finite(0), "vacuity/{i,o}"},
  };
  for (const Case& c : cases) {
    ExtReal got = eval_predicate(*c.e, val, c.mode, io);
    if (!(got == c.expected)) o.fail(std::string(c.label) + ": got " + to_string(got));
    // Same through the explicit U/V definition.
    std::set<std::string> u, v;
    if (c.mode == SemanticsMode::standard) u = {"i", "o"};
    if (c.mode == SemanticsMode::output_robustness) u = {"o"}, v = {"i"};
    if (c.mode == SemanticsMode::input_vacuity) u = {"i"};
    ExtReal rel = relative_predicate(*c.e, val, u, v);
    if (!(rel == c.expected)) o.fail(std::string(c.label) + ": relative definition gives " + to_string(rel));
  }
  // A negative value in the pole case gives -inf.
  std::map<std::string, double> neg{{"i", -5.0}, {"o", 0.0}};
  if (!eval_predicate(ei, neg, SemanticsMode::output_robustness, io).is_neg_inf()) o.fail("output/{i} negative");
  if (o.pass) o.detail = "9 cases";
  return o;
}

// --- dense / discrete agreement -------------------------------------------

Outcome dense_agreement() {
  Outcome o;
  Rng rng(4242);
  testgen::Options opt;
  opt.step_ops = false;
  const double periods[] = {1.0, 0.5, 0.25, 2.0};
  int exact = 0, aligned = 0;
  for (int i = 0; i < 200 && o.pass; ++i) {
    const double p = periods[i % 4];
    const Duration period = Duration::from_scaled(static_cast<std::int64_t>(p * 1e9), false);
    Formula f = testgen::timed_bounds(testgen::random_formula(rng, opt), period);
    const std::size_t n = static_cast<std::size_t>(testgen::uniform(rng, 1, 48));
    DiscreteTrace w = testgen::random_trace(rng, opt.vars, n);

    SpecModel dmodel = testgen::single_formula_model(f, DiscreteTime{period});
    IoSignature inputs;
    for (const auto& v : opt.vars) inputs.declare(v, IoKind::input);
    SpecModel cmodel = testgen::single_formula_model(f, DenseTime{}, SemanticsMode::standard, inputs);
    DiscreteMonitor dm(dmodel);
    DenseMonitor cm(cmodel);
    std::vector<ExtReal> disc = run_discrete(dm, w);

    // Feed the same samples as steps, a few rows per batch.
    PiecewiseSignal signal;
    std::size_t k = 0;
    while (k < n) {
      std::size_t rows = static_cast<std::size_t>(testgen::uniform(rng, 1, 4));
      std::vector<VariableBatch> batch;
      for (const auto& v : opt.vars) {
        VariableBatch b{v, {}};
        for (std::size_t r = k; r < std::min(n, k + rows); ++r) b.events.emplace_back(r * p, w.column(v)[r]);
        batch.push_back(std::move(b));
      }
      for (const Segment& s : cm.update(batch).front().second) signal.segments.push_back(s);
      k += rows;
    }
    std::vector<ExtReal> dense(n);
    for (std::size_t j = 0; j < n; ++j) dense[j] = signal.at(j * p);

    const MonitoredFormula& dmf = dm.formulas().front();
    const MonitoredFormula& cmf = cm.formulas().front();
    const std::int64_t hd = steps(dmf.report.horizon);
    const std::int64_t hc = static_cast<std::int64_t>(std::llround(cmf.report.horizon.to_seconds() / p));
    if (hd == hc) {
      ++exact;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(dense[j] == disc[j])) {
          o.fail("sample " + std::to_string(j) + " dense " + to_string(dense[j]) + " vs discrete " +
                 to_string(disc[j]) + " for " + show(f) + " p=" + format_double(p));
          break;
        }
      }
      continue;
    }
    ++aligned;
    if (!dmf.report.past_depth) continue;
    const std::int64_t l = steps(*dmf.report.past_depth);
    for (std::int64_t t = l; t + std::max(hd, hc) < static_cast<std::int64_t>(n); ++t) {
      if (!(dense[static_cast<std::size_t>(t + hc)] == disc[static_cast<std::size_t>(t + hd)])) {
        o.fail("aligned index " + std::to_string(t) + " differs for " + show(f));
        break;
      }
    }
  }
  if (o.pass) {
    o.detail = "200 specs (" + std::to_string(exact) + " same horizon, " + std::to_string(aligned) +
               " compared after horizon alignment)";
  }
  return o;
}

// --- timing ----------------------------------------------------------------

Outcome timing() {
  Outcome o;
  auto results = run_bench({100, 1000000}, 200000, 1, BenchPattern::random);
  const double small = results[0].mean, large = results[1].mean;
  char buf[200];
  std::snprintf(buf, sizeof buf, "mean k=100 %.3e s, k=1e6 %.3e s, ratio %.2f", small, large, large / small);
  if (!(large <= 5.0 * small)) o.fail(std::string("ratio above 5: ") + buf);
  if (!(large <= 0.046)) o.fail(std::string("k=1e6 above 0.046 s: ") + buf);
  if (o.pass) o.detail = buf;
  return o;
}

// --- bounded memory --------------------------------------------------------

Outcome bounded_memory() {
  Outcome o;
  Rng rng(99);
  testgen::Options opt;
  int checked = 0;
  while (checked < 100 && o.pass) {
    Formula f = testgen::random_formula(rng, opt);
    DiscreteMonitor m(testgen::single_formula_model(f, DiscreteTime{}));
    const HorizonReport& r = m.formulas().front().report;
    if (!r.past_depth) continue;
    const std::int64_t w = std::max<std::int64_t>(1, steps(*r.warmup()));
    ++checked;
    const std::size_t n = static_cast<std::size_t>(10 * w + 1);
    DiscreteTrace trace = testgen::random_trace(rng, opt.vars, n);
    std::size_t cells = 0;
    std::vector<Sample> samples;
    for (std::size_t k = 0; k < n; ++k) {
      samples.clear();
      for (const auto& v : m.variables()) samples.push_back({v, trace.column(v)[k]});
      m.update(static_cast<std::int64_t>(k), samples);
      if (static_cast<std::int64_t>(k) == 2 * w) cells = m.cell_count();
      if (static_cast<std::int64_t>(k) > 2 * w && m.cell_count() != cells) {
        o.fail("cell count changed at update " + std::to_string(k) + " for " + show(f));
        break;
      }
    }
    if (m.wedge_operations() > 2 * n * 8) o.fail("wedge operations exceed bound for " + show(f));
  }
  if (o.pass) o.detail = "100 specs, updates 2(L+H) to 10(L+H)";
  return o;
}

// --- CLI golden ------------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& cmd) {
  int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_golden() {
  Outcome o;
  const std::string cli = STLMON_CLI;
  const std::string fx = STLMON_FIXTURES;
  const std::string tmp = STLMON_TMP;
  const std::string base = cli + " eval --stl " + fx + "/rg.stl --trace " + fx + "/rg.csv --period 1 --unit s";
  int c1 = run(base + " --output " + tmp + "/golden1.csv");
  int c2 = run(base + " --output " + tmp + "/golden2.csv");
  if (c1 != 0 || c2 != 0) o.fail("eval exit codes " + std::to_string(c1) + ", " + std::to_string(c2));
  std::string a = slurp(tmp + "/golden1.csv"), b = slurp(tmp + "/golden2.csv");
  if (a.empty() || a != b) o.fail("outputs differ between runs");
  if (a != slurp(fx + "/rg_expected.csv")) o.fail("output differs from the checked-in golden file");
  int missing = run(cli + " eval --stl " + fx + "/rg.stl --trace " + fx + "/absent.csv --period 1");
  if (missing != 2) o.fail("missing trace exit code " + std::to_string(missing));
  int bad = run(cli + " eval --stl " + fx + "/unbounded_until.stl --trace " + fx + "/rg.csv --period 1");
  if (bad != 1) o.fail("unbounded until exit code " + std::to_string(bad));
  int violation = run(base + " --fail-on-violation");
  if (violation != 3) o.fail("--fail-on-violation exit code " + std::to_string(violation));
  if (o.pass) o.detail = "byte-identical runs; exit codes 0, 1, 2, 3";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  } criteria[] = {
      {"oracle differential (1000 pairs, all modes)", oracle_differential},
      {"pastification horizon shift (500 formulas)", pastification_shift},
      {"request-grant fixture", request_grant},
      {"IA-STL predicate cases (3 modes x 3 variable sets)", ia_cases},
      {"discrete/dense agreement (200 specs)", dense_agreement},
      {"timing shape (k=1e6 vs k=100)", timing},
      {"bounded memory (100 specs)", bounded_memory},
      {"CLI golden output and exit codes", cli_golden},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %s  [%.1fs]  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
