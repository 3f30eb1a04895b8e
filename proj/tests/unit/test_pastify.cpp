#include <doctest.h>

#include "gen.hpp"
#include "stlmon/errors.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/parser.hpp"
#include "stlmon/pastify.hpp"

using namespace stlmon;

namespace {

std::int64_t h_of(const char* text, TimeKind kind = TimeKind::discrete) {
  return horizon(parse_formula(text), kind).horizon.scaled() / Duration::kScale;
}

bool past_only(const Formula& f) { return !f.contains_future(); }

}  // namespace

TEST_SUITE("pastify") {
  TEST_CASE("horizons") {
    CHECK(h_of("a > 0") == 0);
    CHECK(h_of("next a > 0") == 1);
    CHECK(h_of("(req >= 3) implies eventually[0:5] (gnt >= 3)") == 5);
    CHECK(h_of("always[2:4] eventually[0:3] a > 0") == 7);
    CHECK(h_of("a > 0 until[1:3] b > 0") == 3);
    CHECK(h_of("(next next a > 0) until[1:3] b > 0") == 4);
    CHECK(h_of("(next next a > 0) until[1:3] b > 0", TimeKind::dense) == 5);
    CHECK(h_of("once[0:4] eventually[0:2] a > 0") == 2);
    CHECK(h_of("always(eventually[0:5] a > 0)") == 5);
    CHECK_THROWS_AS(horizon(parse_formula("not always a > 0")), UnboundedFuture);
  }

  TEST_CASE("past depth") {
    auto l_of = [](const char* text) { return horizon(parse_formula(text)).past_depth; };
    CHECK(l_of("once[0:4] a > 0") == Duration::units(0));
    CHECK(l_of("once[0:4] eventually[0:2] a > 0") == Duration::units(4));
    CHECK(l_of("prev eventually[0:2] a > 0") == Duration::units(1));
    CHECK_FALSE(l_of("once eventually[0:2] a > 0").has_value());
  }

  TEST_CASE("rewrite rules") {
    PastifiedFormula p = pastify_formula(parse_formula("eventually[0:5] p > 0"));
    CHECK(format_formula(p.formula) == "once[0:5] (p > 0)");
    PastifiedFormula q = pastify_formula(parse_formula("next next next p > 0"));
    CHECK(format_formula(q.formula) == "p > 0");
    CHECK(q.report.horizon == Duration::units(3));
    PastifiedFormula r = pastify_formula(parse_formula("(next p > 0) and q > 0"));
    CHECK(format_formula(r.formula) == "p > 0 and delay[1] (q > 0)");
    PastifiedFormula rg = pastify_formula(parse_formula("always((req >= 3) implies (eventually[0:5] (gnt >= 3)))"));
    CHECK(format_formula(rg.formula) == "historically((not delay[5] (req >= 3)) or once[0:5] (gnt >= 3))");
    CHECK(rg.report.horizon == Duration::units(5));
    PastifiedFormula plain = pastify_formula(parse_formula("a >= 3"));
    CHECK(format_formula(plain.formula) == "a >= 3");
    PastifiedFormula tail = pastify_formula(parse_formula("always[2:inf] a > 0"));
    // G[2,inf) a == G(G[2,2] a); the inner point window becomes the shift.
    CHECK(format_formula(tail.formula) == "historically(a > 0)");
    CHECK(tail.report.horizon == Duration::units(2));
  }

  TEST_CASE("resolving bounds") {
    SpecModel m = parse_spec("out = eventually[0:500ms] a > 0");
    m.time_domain = DiscreteTime{Duration::of(100, TimeUnit::ms)};
    CHECK(format_formula(pastify(m).formulas[0].formula) == "once[0:5] (a > 0)");
    m.time_domain = DiscreteTime{Duration::of(300, TimeUnit::ms)};
    CHECK_THROWS_AS(pastify(m), NotDivisible);
    m.time_domain = DenseTime{};
    CHECK(format_formula(pastify(m).formulas[0].formula) == "once[0:0.5] (a > 0)");
    SpecModel n = parse_spec("out = prev a > 0");
    n.time_domain = DenseTime{};
    CHECK_THROWS_AS(pastify(n), UnsupportedOperator);
  }

  TEST_CASE("output is past-only and idempotent") {
    testgen::Rng rng(3);
    testgen::Options opt;
    for (int i = 0; i < 300; ++i) {
      SpecModel m = testgen::single_formula_model(testgen::random_formula(rng, opt), DiscreteTime{});
      SpecModel once = pastify(m);
      CAPTURE(format_formula(m.formulas[0].formula));
      CHECK(past_only(once.formulas[0].formula));
      CHECK(pastify(once).formulas[0].formula == once.formulas[0].formula);
    }
  }

  TEST_CASE("pastified text parses back") {
    testgen::Rng rng(8);
    testgen::Options opt;
    for (int i = 0; i < 200; ++i) {
      Formula p = pastify_formula(testgen::random_formula(rng, opt)).formula;
      CAPTURE(format_formula(p));
      CHECK(parse_formula(format_formula(p)) == p);
    }
  }

  TEST_CASE("horizon shift on small traces") {
    testgen::Rng rng(21);
    testgen::Options opt;
    opt.max_depth = 3;
    for (int i = 0; i < 200; ++i) {
      Formula f = testgen::random_formula(rng, opt);
      PastifiedFormula p = pastify_formula(f);
      if (!p.report.past_depth) continue;
      DiscreteTrace w = testgen::random_trace(rng, opt.vars, 30);
      auto a = offline_series(f, w);
      auto b = offline_series(p.formula, w);
      const auto h = p.report.horizon.scaled() / Duration::kScale;
      const auto l = p.report.past_depth->scaled() / Duration::kScale;
      for (std::int64_t t = l; t + h < 30; ++t) {
        CAPTURE(format_formula(f));
        CAPTURE(t);
        REQUIRE(a[static_cast<std::size_t>(t)] == b[static_cast<std::size_t>(t + h)]);
      }
    }
  }
}
