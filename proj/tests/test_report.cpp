#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vexspace/config.hpp"
#include "vexspace/errors.hpp"
#include "vexspace/report.hpp"
#include "vexspace/suites.hpp"

using namespace vexspace;

namespace {

std::vector<SuiteResult> sample() {
  return {
      {"identities", "b-case", 1.0, 1.0000000001, 0.9999999999, 1e-8, Verdict::pass, 0},
      {"atoms", "z/j1", 0.1, 0.3, 1.0 / 3, 0, Verdict::informational, 0},
      {"atoms", "a/j0", kInfinity, -kInfinity, NAN, 2, Verdict::fail, 12.5},
  };
}

std::string csvOf(const std::vector<SuiteResult>& r) {
  std::ostringstream out;
  writeCsv(out, r);
  return out.str();
}

bool sameResults(const std::vector<SuiteResult>& a, const std::vector<SuiteResult>& b) {
  if (a.size() != b.size()) return false;
  auto same = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].suite != b[i].suite || a[i].caseId != b[i].caseId || a[i].verdict != b[i].verdict) return false;
    if (!same(a[i].lhs, b[i].lhs) || !same(a[i].rhs, b[i].rhs) || !same(a[i].ratio, b[i].ratio) ||
        !same(a[i].tolerance, b[i].tolerance) || !same(a[i].wallMs, b[i].wallMs))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("canonical order") {
  auto r = sample();
  sortResults(r);
  CHECK(r[0].caseId == "a/j0");
  CHECK(r[1].caseId == "z/j1");
  CHECK(r[2].suite == "identities");
  CHECK(anyFailure(r));
  r.erase(r.begin());
  CHECK_FALSE(anyFailure(r));
}

TEST_CASE("csv") {
  std::vector<SuiteResult> one{{"identities", "x", 1, 1, 1, 1e-8, Verdict::pass, 0}};
  std::string text = csvOf(one);
  CHECK(text == "suite,case,lhs,rhs,ratio,tolerance,verdict,wall_ms\nidentities,x,1,1,1,1e-08,pass,0\n");

  std::string first = csvOf(sample());
  std::istringstream in(first);
  auto back = readCsv(in);
  CHECK(sameResults(back, sample()));
  CHECK(csvOf(back) == first);

  std::istringstream bad("suite,case\n");
  CHECK_THROWS_AS(readCsv(bad), ParseError);
}

TEST_CASE("json") {
  std::ostringstream out;
  writeJson(out, sample());
  std::istringstream in(out.str());
  auto back = readJson(in);
  CHECK(sameResults(back, sample()));
  std::istringstream bad("{\"a\":1}");
  CHECK_THROWS_AS(readJson(bad), ParseError);
}

TEST_CASE("svg summary and emit") {
  std::ostringstream out;
  writeSvgSummary(out, sample());
  std::string svg = out.str();
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("identities") != std::string::npos);

  CHECK_THROWS_AS(emitReport({}, "csv", "/tmp/never.csv"), UsageError);
  CHECK_THROWS_AS(emitReport(sample(), "xml", "/tmp/never.xml"), UsageError);
  CHECK_THROWS_AS(emitReport(sample(), "csv", "/nonexistent-dir/r.csv"), IoError);
  auto path = std::filesystem::temp_directory_path() / "vexspace_report_test.csv";
  emitReport(sample(), "csv", path.string());
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str() == csvOf(sample()));
  std::filesystem::remove(path);
}

TEST_CASE("verdicts") {
  for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::informational}) CHECK(parseVerdict(verdictName(v)) == v);
  CHECK_THROWS_AS(parseVerdict("maybe"), ParseError);
}

TEST_CASE("config parsing") {
  Config d = defaultConfig();
  CHECK(d.grid == Grid(1, 8, 512));
  Config c = parseConfigText(R"({"grid": {"dim": 2, "R": 4, "N": 64}, "p": 2, "q": "inf",
                                 "u": {"kind": "canonical", "a": 3, "b": 1},
                                 "weights": {"kind": "constant", "s": 0.25}, "trials": 0.5})");
  CHECK(c.grid == Grid(2, 4, 64));
  CHECK(c.q({0, 0}) == kInfinity);
  CHECK(c.u({0, 0}) == doctest::Approx(4).epsilon(1e-15));
  CHECK(c.trialScale == 0.5);
  WeightSequence w = c.weightSequence(3);
  CHECK(w(2, {0, 0}) == doctest::Approx(std::pow(2.0, 0.5)).epsilon(1e-15));

  try {
    parseConfigText("{\"grid\": {\"dim\": 1,\n \"N\": 100}}");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("grid.N") != std::string::npos);
  }
  try {
    parseConfigText("{\n  \"p\": 2,\n  \"q\": [\n}");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parseConfigText(R"({"colour": 1})"), ParseError);
  CHECK_THROWS_AS(loadConfig("/nonexistent/config.json"), IoError);
}

TEST_CASE("suite runs are deterministic across thread counts") {
  Config c = parseConfigText(R"({"grid": {"dim": 1, "R": 8, "N": 128}, "trials": 0.1})");
  int before = omp_get_max_threads();
  omp_set_num_threads(1);
  std::string a = csvOf(runSuite("identities", c, 42));
  omp_set_num_threads(3);
  std::string b = csvOf(runSuite("identities", c, 42));
  omp_set_num_threads(before);
  CHECK(a == b);
  CHECK(a != csvOf(runSuite("identities", c, 43)));
  CHECK_THROWS_AS(runSuite("nonsense", c, 42), UsageError);
}
