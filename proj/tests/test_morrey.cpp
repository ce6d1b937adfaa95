#include <doctest.h>

#include <cmath>

#include "vexspace/balls.hpp"
#include "vexspace/errors.hpp"
#include "vexspace/lebesgue.hpp"
#include "vexspace/morrey.hpp"
#include "vexspace/trial.hpp"

using namespace vexspace;

namespace {

// sup of r^{-1/2} |(x - r, x + r) cap [0, 1]| over a fine mesh, no grid involved.
double morreyIndicatorOracle() {
  double best = 0;
  for (int i = 0; i <= 600; ++i) {
    double x = -1 + 3.0 * i / 600;
    for (int k = 1; k <= 600; ++k) {
      double r = 3.0 * k / 600;
      double len = std::max(0.0, std::min(1.0, x + r) - std::max(0.0, x - r));
      best = std::max(best, len / std::sqrt(r));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("ball search set") {
  Grid g(1, 8, 64);
  BallSearchSet s = BallSearchSet::standard(g);
  REQUIRE(s.size() > 0);
  const auto& r = s.radii();
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] > r[i - 1]);
  CHECK(r.back() >= 2 * 16);
  // Nodes plus the midpoints between them.
  CHECK(s.centers().size() == 2 * g.pointsPerAxis() - 1);
  // The largest ball covers the box from every center.
  for (std::size_t c = 0; c < s.centers().size(); ++c) {
    std::size_t b = c * r.size() + r.size() - 1;
    std::size_t nodes = 0;
    for (const NodeRun& run : s.runs(b)) nodes += run.end - run.begin;
    CHECK(nodes == g.size());
  }
  Grid g2(2, 4, 32);
  CHECK(BallSearchSet::standard(g2).centers().size() == 64);
}

TEST_CASE("morrey indicator example") {
  Grid g(1, 8, 512);
  BallSearchSet balls = BallSearchSet::standard(g);
  GridFunction chi = boxIndicator(g, {0, 0}, {1, 0});
  VariableExponent p = VariableExponent::constant(1), u = VariableExponent::constant(2);
  double oracle = morreyIndicatorOracle();
  CHECK(oracle == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  double v = morreyNormDirect(p, u, chi, balls);
  CHECK(std::abs(v / oracle - 1) <= 0.02);
  CHECK(std::abs(morreyNormInterchanged(p, u, chi, balls) / oracle - 1) <= 0.02);
  CHECK(morreyNormDirect(p, u, GridFunction(g), balls) == 0);
}

TEST_CASE("u = p gives the Lebesgue norm") {
  Grid g(1, 8, 256);
  BallSearchSet balls = BallSearchSet::standard(g);
  TrialRng rng(41);
  for (int t = 0; t < 5; ++t) {
    VariableExponent p = randomExponent(rng, 0.7, 4, 1, 8);
    GridFunction f = randomBumps(g, rng, true);
    double lp = normLp(p, f);
    CHECK(morreyNormDirect(p, p, f, balls) == doctest::Approx(lp).epsilon(1e-8));
    CHECK(morreyNormInterchanged(p, p, f, balls) == doctest::Approx(lp).epsilon(1e-8));
  }
}

TEST_CASE("both routes agree and scale") {
  Grid g(1, 8, 256);
  BallSearchSet balls = BallSearchSet::standard(g);
  TrialRng rng(43);
  BisectionConfig cfg;
  for (int t = 0; t < 8; ++t) {
    VariableExponent p = randomExponent(rng, 0.6, 3, 1, 8);
    VariableExponent u = p.scaled(rng.uniform(1.1, 3));
    GridFunction f = randomBumps(g, rng, true);
    double a = morreyNormDirect(p, u, f, balls, cfg);
    double b = morreyNormInterchanged(p, u, f, balls, cfg);
    CHECK(std::abs(a - b) <= 2 * cfg.relativeTolerance * std::max(a, b));
    CHECK(morreyNormDirect(p, u, f.scaled(3.0), balls, cfg) == doctest::Approx(3 * a).epsilon(1e-9));
  }
}

TEST_CASE("enlarging the search set never lowers the norm") {
  Grid g(1, 8, 256);
  BallSearchSet full = BallSearchSet::standard(g);
  std::vector<Point> someCenters;
  for (std::size_t i = 0; i < g.size(); i += 7) someCenters.push_back(g.node(i));
  std::vector<double> someRadii;
  for (std::size_t i = 0; i < full.radii().size(); i += 3) someRadii.push_back(full.radii()[i]);
  BallSearchSet part(g, someCenters, someRadii);
  TrialRng rng(47);
  for (int t = 0; t < 5; ++t) {
    VariableExponent p = randomExponent(rng, 0.8, 3, 1, 8);
    VariableExponent u = p.scaled(2);
    GridFunction f = randomBumps(g, rng);
    CHECK(morreyNormDirect(p, u, f, part) <= morreyNormDirect(p, u, f, full));
  }
}

TEST_CASE("ordering violation") {
  Grid g(1, 8, 64);
  BallSearchSet balls = BallSearchSet::standard(g);
  GridFunction f = boxIndicator(g, {0, 0}, {1, 0});
  CHECK_THROWS_AS(morreyNormDirect(VariableExponent::constant(3), VariableExponent::constant(2), f, balls),
                  OrderingError);
}

TEST_CASE("characteristic functions of balls") {
  // Radii (k + 1/2) h around nodes capture exactly 2k + 1 nodes: length 2r.
  Grid g(1, 8, 512);
  double h = g.spacing();
  std::vector<Point> centers;
  for (std::size_t i = 128; i < 384; i += 16) centers.push_back(g.node(i));
  std::vector<double> radii;
  for (int k : {1, 3, 8, 20, 31}) radii.push_back((k + 0.5) * h);
  BallSearchSet exact(g, centers, radii);
  for (double pc : {1.0, 2.0, 3.5}) {
    CharBallReport r = charBallNormRatio(VariableExponent::constant(pc), exact);
    double want = std::pow(2.0, 1 / pc);
    CHECK(r.minSmall == doctest::Approx(want).epsilon(1e-9));
    CHECK(r.maxSmall == doctest::Approx(want).epsilon(1e-9));
  }

  Grid g2(2, 4, 128);
  std::vector<Point> c2{{0, 0}, {0.5, -0.25}, {-1, 1}};
  BallSearchSet discs(g2, c2, {1.0, 1.5, 2.0});
  CharBallReport r2 = charBallNormRatio(VariableExponent::constant(2, 2, 4), discs);
  CHECK(std::abs(r2.minSmall / std::sqrt(M_PI) - 1) < 0.03);
  CHECK(std::abs(r2.maxLarge / std::sqrt(M_PI) - 1) < 0.03);

  CharBallReport c = charBallNormRatio(VariableExponent::canonical(1.5, 1), BallSearchSet::standard(g, 8, false));
  CHECK(c.countSmall > 0);
  CHECK(c.maxSmall <= 10 * c.minSmall);
  CHECK(c.maxLarge <= 10 * c.minLarge);
}
