#include <doctest.h>

#include <cmath>

#include "vexspace/balls.hpp"
#include "vexspace/convolution.hpp"
#include "vexspace/errors.hpp"
#include "vexspace/mixed.hpp"
#include "vexspace/trial.hpp"

using namespace vexspace;

TEST_CASE("eta values") {
  CHECK(etaValue(2, 3, {0, 0}, 1) == 4);
  CHECK(etaValue(2, 3, {0.25, 0}, 1) == 0.5);
  CHECK(etaValue(1, 3, {0, 0}, 2) == 4);
  for (int nu = 0; nu < 5; ++nu) {
    double prev = kInfinity;
    for (int k = 0; k < 50; ++k) {
      double v = etaValue(nu, 2.5, {0.1 * k, 0}, 1);
      CHECK(v <= prev);
      prev = v;
    }
    CHECK(etaValue(nu + 1, 2.5, {0, 0}, 1) >= etaValue(nu, 2.5, {0, 0}, 1));
  }
}

TEST_CASE("eta mass") {
  CHECK(etaL1Mass(2, 1) == 2);
  CHECK(etaL1Mass(4, 2) == doctest::Approx(M_PI / 3).epsilon(1e-15));
  // Quadrature over growing boxes approaches 2 / (m - 1) = 2 for m = 2; error = tail 2/(1+R).
  double prevErr = kInfinity;
  for (double R : {8.0, 32.0, 128.0}) {
    Grid g(1, R, static_cast<std::size_t>(64 * R));
    double err = std::abs(integrateAbs(etaKernel(g, 0, 2)) - 2);
    CHECK(err < prevErr);
    CHECK(err <= 2 / (1 + R) + 0.01);
    prevErr = err;
  }
  // m = 3 with the tail bound; the mass does not depend on nu on a resolved grid.
  Grid fine(1, 8, 4096);
  for (int nu = 0; nu <= 4; ++nu) {
    double mass = integrateAbs(etaKernel(fine, nu, 3));
    CHECK(std::abs(mass - etaL1Mass(3, 1)) <= etaTailBound(nu, 3, 1, 8) + 0.01);
  }
}

TEST_CASE("convolution threshold") {
  VariableExponent p = VariableExponent::constant(2);
  ConvolutionThreshold t = convolutionThreshold(p, VariableExponent::constant(1), p);
  CHECK(t.value == 1);
  CHECK(t.cInfinity == 0);
  ConvolutionThreshold v = convolutionThreshold(VariableExponent::canonical(1.5, 1), VariableExponent::canonical(1.2, 0.8),
                                                VariableExponent::constant(4));
  CHECK(v.value == doctest::Approx(1 + v.cLogInvQ + v.cInfinity).epsilon(1e-15));
}

TEST_CASE("mixed convolution report") {
  Grid g(1, 8, 256);
  BallSearchSet balls = BallSearchSet::standard(g);
  VariableExponent p = VariableExponent::logSmooth(1.5, 1), q = VariableExponent::canonical(1.2, 0.8);
  VariableExponent u = VariableExponent::constant(4);
  ConvolutionThreshold t = convolutionThreshold(p, q, u);
  TrialOptions opt;
  opt.trials = 4;
  RatioReport r = convolutionInequalityReport(p, q, u, t.value + 1, opt, balls);
  CHECK(r.hypothesisMet);
  CHECK(r.finite);
  CHECK(r.ratios.size() == 4);
  CHECK(r.minRatio > 0);
  CHECK(std::isfinite(r.maxRatio));
  RatioReport below = convolutionInequalityReport(p, q, u, t.value * 0.5, opt, balls);
  CHECK_FALSE(below.hypothesisMet);

  // Same seed, same ratios.
  RatioReport again = convolutionInequalityReport(p, q, u, t.value + 1, opt, balls);
  CHECK(again.ratios == r.ratios);
}

TEST_CASE("u = p Morrey report matches the Lebesgue report") {
  Grid g(1, 8, 256);
  BallSearchSet balls = BallSearchSet::standard(g);
  VariableExponent p = VariableExponent::logSmooth(1.2, 1);
  TrialOptions opt;
  opt.trials = 3;
  RatioReport m = morreyConvolutionReport(p, p, 3, opt, balls);
  RatioReport l = lebesgueConvolutionReport(p, 3, opt, g);
  REQUIRE(m.ratios.size() == l.ratios.size());
  for (std::size_t i = 0; i < m.ratios.size(); ++i) CHECK(m.ratios[i] == doctest::Approx(l.ratios[i]).epsilon(1e-6));
}

TEST_CASE("weights inside convolutions") {
  WeightShiftReport c = weightShiftCheck(VariableExponent::constant(0.7), 3, 0, 5, 64);
  CHECK(c.worstConstant == 1);
  VariableExponent alpha = VariableExponent::logSmooth(0.5, 1);
  WeightShiftReport w = weightShiftCheck(alpha, 3, 2, 5, 128);
  WeightShiftReport w2 = weightShiftCheck(alpha, 3, 4, 5, 128);
  CHECK(std::isfinite(w.worstConstant));
  CHECK(w2.worstConstant <= w.worstConstant);
  CHECK(w.perLevel.size() == 5);
  double lo = *std::min_element(w.perLevel.begin(), w.perLevel.end());
  double hi = *std::max_element(w.perLevel.begin(), w.perLevel.end());
  CHECK(hi <= 2 * lo);
}

TEST_CASE("discrete convolution sum") {
  Grid g(1, 8, 64);
  TrialRng rng(71);
  GridFunction hfun = randomNonnegativeBumps(g, rng);
  GridFunctionSequence gs(g, {GridFunction(g), GridFunction(g), hfun, GridFunction(g), GridFunction(g)});
  GridFunctionSequence G = discreteConvolutionSum(gs, 0.8);
  for (int nu = 0; nu < 5; ++nu) {
    double f = std::pow(2.0, -std::abs(nu - 2) * 0.8);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(G[nu][i] - f * hfun[i]) <= 1e-15 * hfun.maxAbs());
  }

  GridFunctionSequence mixed = randomBumpSequence(g, rng, 4, true);
  GridFunctionSequence big = discreteConvolutionSum(mixed, 200);
  for (int nu = 0; nu < 4; ++nu)
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(big[nu][i] - mixed[nu][i]) <= 1e-12);

  GridFunctionSequence same(g, {hfun, hfun, hfun, hfun});
  GridFunctionSequence S = discreteConvolutionSum(same, 1.0);
  for (int nu = 0; nu < 4; ++nu) {
    double geo = 0;
    for (int j = 0; j < 4; ++j) geo += std::pow(2.0, -std::abs(nu - j));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(S[nu][i] - geo * hfun[i]) <= 1e-14);
  }

  // Linear and monotone.
  GridFunctionSequence other = randomBumpSequence(g, rng, 4, true);
  GridFunctionSequence sum = discreteConvolutionSum(mixed + other, 1.3);
  GridFunctionSequence a = discreteConvolutionSum(mixed, 1.3), b = discreteConvolutionSum(other, 1.3);
  for (int nu = 0; nu < 4; ++nu)
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(sum[nu][i] - a[nu][i] - b[nu][i]) <= 1e-14);
      CHECK(sum[nu][i].real() >= a[nu][i].real());
    }

  GridFunctionSequence neg(g, {hfun.scaled(-1.0)});
  CHECK_THROWS_AS(discreteConvolutionSum(neg, 1), DomainError);
}

TEST_CASE("discrete convolution report") {
  Grid g(1, 8, 256);
  BallSearchSet balls = BallSearchSet::standard(g);
  VariableExponent p = VariableExponent::logSmooth(1.5, 1), q = VariableExponent::constant(1.5);
  VariableExponent u = VariableExponent::constant(4);
  TrialOptions opt;
  opt.trials = 3;
  DiscreteConvolutionReport r = discreteConvolutionReport(p, q, u, {0.5, 1, 2}, opt, balls);
  CHECK(r.finite);
  CHECK(r.monotone);
  for (const auto& row : r.ratios) {
    CHECK(row[2] <= row[1] + 1e-9);
    CHECK(row[1] <= row[0] + 1e-9);
  }

  // One nonzero entry at level j: ratio is the l_q norm of 2^{-|nu - j| delta} for constant q.
  TrialRng rng(73);
  GridFunction f = randomNonnegativeBumps(g, rng);
  GridFunctionSequence single(g, {GridFunction(g), f, GridFunction(g), GridFunction(g)});
  double delta = 1;
  double lq = 0;
  for (int nu = 0; nu < 4; ++nu) lq += std::pow(2.0, -std::abs(nu - 1) * delta * 1.5);
  lq = std::pow(lq, 1 / 1.5);
  double ratio = normMixedMorrey(p, q, u, discreteConvolutionSum(single, delta), balls) /
                 normMixedMorrey(p, q, u, single, balls);
  CHECK(ratio == doctest::Approx(lq).epsilon(1e-8));
}
