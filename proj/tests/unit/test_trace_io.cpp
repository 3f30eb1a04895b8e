#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <locale>
#include <sstream>

#include "stlmon/errors.hpp"
#include "stlmon/trace_io.hpp"
#include "gen.hpp"

using namespace stlmon;

namespace {

const Duration kSecond = Duration::of(1, TimeUnit::s);

ExtReal F(double x) { return ExtReal::finite(x); }

struct CommaPoint : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

std::string temp_path(const std::string& name) { return std::string(STLMON_TMP) + "/" + name; }

}  // namespace

TEST_SUITE("trace_io") {
  TEST_CASE("discrete traces") {
    DiscreteTrace w = parse_discrete_trace("time,a\n0,5\n1,1\n", kSecond);
    CHECK(w.length() == 2);
    CHECK(w.column("a") == std::vector<double>{5, 1});
    DiscreteTrace implicit = parse_discrete_trace("a\n5\n1\n3\n", kSecond);
    CHECK(implicit.length() == 3);
    CHECK_THROWS_AS(parse_discrete_trace("time,a\n0,5\n2,1\n", kSecond), NonUniformTime);
  }

  TEST_CASE("time column in another unit") {
    Duration p = Duration::of(100, TimeUnit::ms);
    DiscreteTrace w = parse_discrete_trace("time,a,b\n0,1,2\n100,3,4\n200,5,6\n", p, TimeUnit::ms);
    CHECK(w.column("b") == std::vector<double>{2, 4, 6});
    CHECK_THROWS_AS(parse_discrete_trace("time,a\n0,1\n0.1,3\n", p, TimeUnit::ms), NonUniformTime);
    CHECK_NOTHROW(parse_discrete_trace("time,a\n0,1\n0.1,3\n", p, TimeUnit::s));
  }

  TEST_CASE("comments, blank lines and signs") {
    DiscreteTrace w = parse_discrete_trace("# header follows\na,b\n\n+1.5,-2e1\n# mid\n.25,3\n", kSecond);
    CHECK(w.column("a") == std::vector<double>{1.5, 0.25});
    CHECK(w.column("b") == std::vector<double>{-20, 3});
  }

  TEST_CASE("format errors carry a position") {
    try {
      parse_discrete_trace("a,b\n1,2\n3,x\n", kSecond);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.row() == 3);
      CHECK(e.column() == 2);
    }
    CHECK_THROWS_AS(parse_discrete_trace("a,b\n1,2\n3\n", kSecond), FormatError);
    CHECK_THROWS_AS(parse_discrete_trace("a,b\n1,2,3\n", kSecond), FormatError);
    CHECK_THROWS_AS(parse_discrete_trace("a\n1,5\n", kSecond), FormatError);
    CHECK_THROWS_AS(read_discrete_trace(temp_path("does_not_exist.csv"), kSecond), IoError);
  }

  TEST_CASE("dense batches") {
    std::vector<VariableBatch> b = parse_dense_batches("time,a\n0,2\n1.5,4\n");
    REQUIRE(b.size() == 1);
    CHECK(b[0].name == "a");
    CHECK(b[0].events == std::vector<std::pair<double, double>>{{0, 2}, {1.5, 4}});
    std::vector<VariableBatch> one = parse_dense_batches("time,a,b\n0,1,2\n");
    REQUIRE(one.size() == 2);
    CHECK(one[1].events.size() == 1);
    CHECK_THROWS_AS(parse_dense_batches("time,a\n1,2\n0.5,4\n"), NonMonotoneTime);
    CHECK_THROWS_AS(parse_dense_batches("time,a\n1,2\n1,4\n"), NonMonotoneTime);
    CHECK_THROWS_AS(parse_dense_batches("a,b\n1,2\n"), FormatError);
    std::vector<VariableBatch> ms = parse_dense_batches("time,a\n0,1\n250,2\n", TimeUnit::ms);
    CHECK(ms[0].events[1].first == 0.25);
  }

  TEST_CASE("writing series") {
    CHECK(format_series({{"out", {{0, F(2)}, {1, F(-2)}}}}) == "time,out\n0,2\n1,-2\n");
    CHECK(format_series({{"out", {{0, ExtReal::pos_inf()}, {1, ExtReal::neg_inf()}}}}) ==
          "time,out\n0,inf\n1,-inf\n");
    CHECK(format_series({{"out", {}}}) == "time,out\n");
    CHECK(format_series({{"x", {{0, F(1)}}}, {"y", {{0.5, F(2)}}}}) == "time,x,y\n0,1,\n0.5,,2\n");
  }

  TEST_CASE("series round trip") {
    testgen::Rng rng(1);
    std::uniform_real_distribution<double> real(-1e6, 1e6);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Series> series;
      for (int s = 0; s < 3; ++s) {
        Series one{"f" + std::to_string(s), {}};
        double t = 0;
        for (int i = 0; i < 20; ++i) {
          t += 0.1 * testgen::uniform(rng, 1, 5) / 3.0;
          if (testgen::chance(rng, 0.3)) continue;
          ExtReal v = testgen::chance(rng, 0.1)   ? ExtReal::pos_inf()
                      : testgen::chance(rng, 0.1) ? ExtReal::neg_inf()
                                                  : F(real(rng));
          one.points.push_back({t, v});
        }
        series.push_back(one);
      }
      CHECK(parse_series(format_series(series)) == series);
    }
    std::string path = temp_path("roundtrip_series.csv");
    std::vector<Series> s{{"out", {{0, F(0.1)}, {1.0 / 3.0, ExtReal::neg_inf()}}}};
    write_series(path, s);
    CHECK(read_series(path) == s);
    std::remove(path.c_str());
  }

  TEST_CASE("decimal handling ignores the global locale") {
    std::locale saved = std::locale::global(std::locale(std::locale::classic(), new CommaPoint));
    DiscreteTrace w = parse_discrete_trace("a\n1.5\n2.25\n", kSecond);
    std::string text = format_series({{"out", {{0.5, F(1234.5)}}}});
    std::locale::global(saved);
    CHECK(w.column("a") == std::vector<double>{1.5, 2.25});
    CHECK(text == "time,out\n0.5,1234.5\n");
    CHECK_THROWS_AS(parse_discrete_trace("a\n1,5\n", kSecond), FormatError);
  }
}
