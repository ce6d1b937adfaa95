#include <doctest.h>

#include <cmath>

#include "vexspace/balls.hpp"
#include "vexspace/besov.hpp"
#include "vexspace/lebesgue.hpp"
#include "vexspace/trial.hpp"

using namespace vexspace;

TEST_CASE("windows") {
  CHECK(smoothStep(-1) == 0);
  CHECK(smoothStep(1.5) == 1);
  CHECK(smoothStep(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  Grid g(1, 8, 512);
  AdmissibleSystem sys(g, maxLevelForGrid(g));
  CHECK(sys.Phi(0) == 1);
  CHECK(sys.phi(1) == 1);
  CHECK(sys.phi(0.4) == 0);
  CHECK(sys.phi(2.0) == 0);
  CHECK(std::ldexp(1.0, sys.maxLevel() + 1) <= g.nyquist());
  CHECK(std::ldexp(1.0, sys.maxLevel() + 2) > g.nyquist());
  CHECK(sys.checkLattice().pass());
  CHECK(AdmissibleSystem(g, sys.maxLevel(), WindowParams::alternate()).checkLattice().pass());
  CHECK(PeetreSystem(g, sys.maxLevel()).checkPositivity().pass());
}

TEST_CASE("Littlewood-Paley pieces") {
  // R = pi puts the integers on the frequency lattice.
  Grid g(1, M_PI, 128);
  AdmissibleSystem sys(g, maxLevelForGrid(g));
  GridFunction e = GridFunction::sample(g, [](const Point& x) { return std::exp(Complex(0, x[0])); });
  GridFunctionSequence pieces = littlewoodPaleyPieces(sys, e);
  REQUIRE(static_cast<int>(pieces.size()) == sys.levels());
  for (int j = 0; j < sys.levels(); ++j) {
    double w = sys.window(j, {1, 0});
    for (std::size_t i = 0; i < g.size(); i += 9) CHECK(std::abs(pieces[j][i] - w * e[i]) < 1e-12);
  }
  CHECK(sys.window(1, {1, 0}) == sys.phi(0.5));

  GridFunction c = GridFunction::sampleReal(g, [](const Point&) { return 3.0; });
  GridFunctionSequence cp = littlewoodPaleyPieces(sys, c);
  CHECK(cp[0].maxAbs() == doctest::Approx(3).epsilon(1e-12));
  for (int j = 1; j < sys.levels(); ++j) CHECK(cp[j].maxAbs() < 1e-12);

  // At most two windows overlap at any frequency.
  Grid g8(1, 8, 512);
  AdmissibleSystem s8(g8, maxLevelForGrid(g8));
  TrialRng rng(81);
  GridFunction f = randomBumps(g8, rng, true);
  GridFunctionSequence all = littlewoodPaleyPieces(s8, f);
  double total = 0;
  for (const GridFunction& piece : all.entries()) total += frequencyEnergy(piece);
  CHECK(total <= 2 * frequencyEnergy(f) * (1 + 1e-12));
}

TEST_CASE("Besov-Morrey norm examples") {
  Grid g(1, M_PI, 128);
  BallSearchSet balls = BallSearchSet::standard(g);
  int J = maxLevelForGrid(g);
  AdmissibleSystem sys(g, J);
  VariableExponent two = VariableExponent::constant(2, 1, M_PI);
  CHECK(besovMorreyNorm(two, two, two, WeightSequence::unit(J + 1, 1, M_PI), sys, GridFunction(g), balls) == 0);

  // Frequency 4 lies only in the plateau of phi_2.
  int j0 = 2;
  GridFunction e = GridFunction::sample(g, [](const Point& x) { return std::exp(Complex(0, 4 * x[0])); });
  double s0 = besovMorreyNorm(two, two, two, WeightSequence::constantSmoothness(0, J + 1, 1, M_PI), sys, e, balls);
  double s1 = besovMorreyNorm(two, two, two, WeightSequence::constantSmoothness(1, J + 1, 1, M_PI), sys, e, balls);
  CHECK(s1 / s0 == doctest::Approx(std::ldexp(1.0, j0)).epsilon(1e-6));

  Grid g8(1, 8, 512);
  BallSearchSet b8 = BallSearchSet::standard(g8, 0, false);
  int J8 = maxLevelForGrid(g8);
  AdmissibleSystem s8(g8, J8);
  AdmissibleSystem alt(g8, J8, WindowParams::alternate());
  VariableExponent p2 = VariableExponent::constant(2);
  TrialRng rng(83);
  for (int t = 0; t < 3; ++t) {
    GridFunction f = randomBumps(g8, rng);
    double b = besovMorreyNorm(p2, p2, p2, WeightSequence::unit(J8 + 1), s8, f, b8);
    double l2 = normLp(p2, f);
    CHECK(b <= 4 * l2);
    CHECK(l2 <= 4 * b);
    double ba = besovMorreyNorm(p2, p2, p2, WeightSequence::unit(J8 + 1), alt, f, b8);
    CHECK(ba <= 10 * b);
    CHECK(b <= 10 * ba);
  }
}

TEST_CASE("Peetre maximal function") {
  Grid g(1, 8, 256);
  GridFunction c = GridFunction::sampleReal(g, [](const Point&) { return 1.25; });
  GridFunction mc = peetreMaximal(c, 2, 3.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(mc[i].real() == doctest::Approx(1.25).epsilon(1e-15));

  TrialRng rng(87);
  GridFunction f = randomBumps(g, rng, true);
  GridFunction m3 = peetreMaximal(f, 3, 0.5);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(m3[i].real() >= std::abs(f[i]));

  // 1 + t^a decreases in a for t < 1, so monotonicity in a needs 2^j h >= 1:
  // it fails at 2^j h = 1/2 and holds once every neighbor sits at 2^j |x - y| >= 1.
  bool increased = false;
  GridFunction m8 = peetreMaximal(f, 3, 8);
  for (std::size_t i = 0; i < g.size(); ++i) increased |= m8[i].real() > m3[i].real();
  CHECK(increased);

  Grid coarse(1, 5, 64);
  int j = 3;
  CHECK(std::ldexp(coarse.spacing(), j) >= 1);
  GridFunction h = randomBumps(coarse, rng, true);
  GridFunction prev = peetreMaximal(h, j, 0.5);
  for (double a : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    GridFunction m = peetreMaximal(h, j, a);
    for (std::size_t i = 0; i < coarse.size(); ++i) CHECK(m[i].real() <= prev[i].real());
    prev = m;
  }
  // Nearest neighbors at 2^j |x - y| = 1.25: a = 64 suppresses them to 1e-6.
  GridFunction mh = peetreMaximal(h, j, 64);
  for (std::size_t i = 0; i < coarse.size(); ++i) CHECK(std::abs(mh[i].real() - std::abs(h[i])) <= 1e-6 * h.maxAbs());

  Grid g2(2, 4, 32);
  GridFunction f2 = randomBumps(g2, rng);
  GridFunction m2 = peetreMaximal(f2, 1, 2.0, 1);
  GridFunction m2s = peetreMaximal(f2, 1, 2.0, 4);
  for (std::size_t i = 0; i < g2.size(); ++i) {
    CHECK(m2[i].real() >= std::abs(f2[i]));
    CHECK(m2s[i].real() <= m2[i].real());
  }
}

TEST_CASE("Peetre characterization report") {
  Grid g(1, 8, 256);
  BallSearchSet balls = BallSearchSet::standard(g, 0, false);
  int J = maxLevelForGrid(g);
  AdmissibleSystem sysA(g, J);
  PeetreSystem sysP(g, J);
  VariableExponent p = VariableExponent::logSmooth(1.5, 1), q = VariableExponent::canonical(1.2, 0.8);
  VariableExponent u = VariableExponent::constant(4);
  WeightSequence w = WeightSequence::constantSmoothness(0.5, J + 1);
  double aBound = peetreSizeBound(p, q, u, w);
  CHECK(aBound > 0);
  TrialOptions opt;
  opt.trials = 2;
  PeetreReport r = peetreCharacterizationReport(p, q, u, w, sysA, sysP, aBound + 1, opt, balls);
  CHECK(r.hypothesisMet);
  CHECK(r.dominationHolds);
  for (std::size_t t = 0; t < r.besov.size(); ++t) CHECK(r.convolution[t] <= r.maximal[t]);
  CHECK(r.minRatio12 >= 0.1);
  CHECK(r.maxRatio12 <= 10);
  CHECK(r.minRatio23 >= 0.1);
  CHECK(r.maxRatio23 <= 10);
}
