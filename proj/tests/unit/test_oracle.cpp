#include <doctest.h>

#include "stlmon/errors.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/parser.hpp"
#include "stlmon/pastify.hpp"
#include "gen.hpp"

using namespace stlmon;

namespace {

ExtReal F(double x) { return ExtReal::finite(x); }

std::vector<ExtReal> eval(const std::string& text, const DiscreteTrace& w, SemanticsMode mode = SemanticsMode::standard,
                          const IoSignature& io = {}) {
  return offline_series(resolve_bounds(parse_formula(text), DiscreteTime{}), w, mode, io);
}

std::vector<ExtReal> finite(std::initializer_list<double> xs) {
  std::vector<ExtReal> out;
  for (double x : xs) out.push_back(F(x));
  return out;
}

DiscreteTrace ab(std::vector<double> a, std::vector<double> b) {
  DiscreteTrace w;
  w.add("a", std::move(a));
  w.add("b", std::move(b));
  return w;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("predicates and unbounded once") {
    DiscreteTrace w;
    w.add("a", {5, 1});
    CHECK(eval("a >= 3", w) == finite({2, -2}));
    DiscreteTrace v;
    v.add("a", {1, 5, 2});
    CHECK(eval("once (a > 0)", v) == finite({1, 5, 5}));
    CHECK(eval("historically (a > 0)", v) == finite({1, 1, 1}));
  }

  TEST_CASE("since weighs the witness against later values") {
    DiscreteTrace w = ab({5, 5, 1}, {-1, 3, 0});
    CHECK(eval("a > 0 since b > 0", w) == finite({-1, 3, 1}));
    CHECK(eval("a > 0 since[0:0] b > 0", w) == finite({-1, 3, 0}));
    CHECK(eval("a > 0 since[1:2] b > 0", w)[0].is_neg_inf());
  }

  TEST_CASE("until is clipped at the end of the trace") {
    DiscreteTrace w = ab({2, 2, 2}, {-1, -1, 4});
    std::vector<ExtReal> r = eval("a > 0 until[0:2] b > 0", w);
    CHECK(r[0] == F(2));
    CHECK(r[1] == F(2));
    CHECK(r[2] == F(4));
    CHECK(eval("a > 0 until[1:2] b > 0", w)[2].is_neg_inf());
  }

  TEST_CASE("step operators at the edges") {
    DiscreteTrace w;
    w.add("a", {-1, 2, 3});
    std::vector<ExtReal> p = eval("prev (a > 0)", w);
    CHECK(p[0].is_neg_inf());
    CHECK(p[1] == F(-1));
    std::vector<ExtReal> n = eval("next (a > 0)", w);
    CHECK(n[0] == F(2));
    CHECK(n[2].is_neg_inf());
    std::vector<ExtReal> r = eval("rise (a > 0)", w);
    CHECK(r[0].is_neg_inf());
    CHECK(r[1] == F(1));
    CHECK(r[2] == F(-2));
    std::vector<ExtReal> f = eval("fall (a > 0)", w);
    CHECK(f[1] == F(-2));
  }

  TEST_CASE("constants") {
    DiscreteTrace w;
    w.add("a", {0, 0});
    CHECK(eval("true", w)[1].is_pos_inf());
    CHECK(eval("false", w)[0].is_neg_inf());
  }

  TEST_CASE("negation duality") {
    testgen::Rng rng(5);
    testgen::Options opt;
    opt.max_depth = 3;
    for (int i = 0; i < 150; ++i) {
      Formula f = testgen::random_formula(rng, opt);
      DiscreteTrace w = testgen::random_trace(rng, opt.vars, 12);
      std::vector<ExtReal> pos = offline_series(f, w);
      std::vector<ExtReal> neg = offline_series(Formula::negation(f), w);
      CAPTURE(format_formula(f));
      for (std::size_t t = 0; t < pos.size(); ++t) CHECK(neg[t] == -pos[t]);
    }
  }

  TEST_CASE("derived operators agree with since and until") {
    testgen::Rng rng(6);
    testgen::Options opt;
    opt.max_depth = 2;
    for (int i = 0; i < 100; ++i) {
      Formula phi = testgen::random_formula(rng, opt);
      int lo = testgen::uniform(rng, 0, 3);
      Interval iv{Duration::units(lo), Duration::units(lo + testgen::uniform(rng, 0, 3))};
      DiscreteTrace w = testgen::random_trace(rng, opt.vars, 14);
      Formula top = Formula::constant(true);
      CAPTURE(format_formula(phi));
      CHECK(offline_series(Formula::unary(FormulaKind::once, phi, iv), w) ==
            offline_series(Formula::binary(FormulaKind::since, top, phi, iv), w));
      CHECK(offline_series(Formula::unary(FormulaKind::eventually, phi, iv), w) ==
            offline_series(Formula::binary(FormulaKind::until, top, phi, iv), w));
      CHECK(offline_series(Formula::unary(FormulaKind::historically, phi, iv), w) ==
            offline_series(Formula::negation(Formula::unary(FormulaKind::once, Formula::negation(phi), iv)), w));
      CHECK(offline_series(Formula::unary(FormulaKind::always, phi, iv), w) ==
            offline_series(Formula::negation(Formula::unary(FormulaKind::eventually, Formula::negation(phi), iv)), w));
    }
  }

  TEST_CASE("relative robustness cases") {
    std::set<std::string> u{"y"}, v{"x"};
    CHECK(relative_case({"y"}, u, v) == PredicateCase::value);
    CHECK(relative_case({"x", "y"}, u, v) == PredicateCase::value);
    CHECK(relative_case({"x"}, u, v) == PredicateCase::pole);
    CHECK(relative_case({"z"}, u, v) == PredicateCase::zero);
    CHECK(relative_case({"x", "z"}, u, v) == PredicateCase::zero);
    CHECK(relative_case({}, u, v) == PredicateCase::pole);
    CHECK(apply_case(PredicateCase::zero, 4).value() == 0);
    CHECK(apply_case(PredicateCase::pole, 4).is_pos_inf());
    CHECK(apply_case(PredicateCase::pole, 0).is_neg_inf());
    CHECK(apply_case(PredicateCase::value, -2) == F(-2));
  }

  TEST_CASE("input-output modes on predicates") {
    IoSignature io;
    io.declare("a", IoKind::input);
    io.declare("b", IoKind::output);
    DiscreteTrace w = ab({5, 3}, {1, 7});
    std::vector<ExtReal> in_only = eval("a >= 3", w, SemanticsMode::output_robustness, io);
    CHECK(in_only[0].is_pos_inf());
    CHECK(in_only[1].is_neg_inf());
    CHECK(eval("a + b >= 3", w, SemanticsMode::output_robustness, io) == finite({3, 7}));
    CHECK(eval("a >= 3", w, SemanticsMode::input_vacuity, io) == finite({2, 0}));
    CHECK(eval("a + b >= 3", w, SemanticsMode::input_vacuity, io) == finite({0, 0}));
  }

  TEST_CASE("modes collapse to standard") {
    testgen::Rng rng(9);
    testgen::Options opt;
    opt.max_depth = 3;
    IoSignature outputs, inputs;
    for (const auto& x : opt.vars) {
      outputs.declare(x, IoKind::output);
      inputs.declare(x, IoKind::input);
    }
    for (int i = 0; i < 100; ++i) {
      Formula f = testgen::random_formula(rng, opt);
      DiscreteTrace w = testgen::random_trace(rng, opt.vars, 10);
      std::vector<ExtReal> base = offline_series(f, w);
      CAPTURE(format_formula(f));
      CHECK(offline_series(f, w, SemanticsMode::output_robustness, outputs) == base);
      CHECK(offline_series(f, w, SemanticsMode::input_vacuity, inputs) == base);
    }
  }

  TEST_CASE("errors") {
    DiscreteTrace w;
    w.add("a", {1, 2});
    Formula f = parse_formula("a > 0");
    CHECK(offline_robustness(f, w, 1) == F(2));
    CHECK_THROWS_AS(offline_robustness(f, w, 2), IndexOutOfRange);
    CHECK_THROWS_AS(offline_series(parse_formula("b > 0"), w), UnknownVariable);
  }
}
