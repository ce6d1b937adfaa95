#include <doctest.h>

#include <cmath>

#include "vexspace/errors.hpp"
#include "vexspace/exponent.hpp"
#include "vexspace/trial.hpp"
#include "vexspace/weights.hpp"

using namespace vexspace;

TEST_CASE("evaluation examples") {
  CHECK(VariableExponent::constant(2)({0.3, 0}) == 2);
  CHECK(VariableExponent::canonical(2, 1)({0, 0}) == doctest::Approx(3).epsilon(1e-15));
  CHECK_THROWS_AS(VariableExponent::constant(2)({8.5, 0}), DomainError);
  CHECK(VariableExponent::constant(2e6)({0, 0}) == kInfinity);
  CHECK_THROWS(VariableExponent::constant(0));
}

TEST_CASE("table lookup picks the nearest periodic lattice node") {
  std::vector<double> vals{1.5, 2, 3};
  VariableExponent t = VariableExponent::table(vals);
  // Lattice -8 + 16 i / 3; brute-force nearest with wrap.
  auto oracle = [&](double x) {
    double best = 1e9;
    double v = 0;
    for (int i = 0; i < 3; ++i) {
      double node = -8 + 16.0 * i / 3;
      for (double shift : {-16.0, 0.0, 16.0}) {
        double d = std::abs(x - node - shift);
        if (d < best) best = d, v = vals[i];
      }
    }
    return v;
  };
  for (double x : {-7.9, -5.0, -1.0, 0.5, 2.0, 5.4, 7.9}) CHECK(t({x, 0}) == oracle(x));
  CHECK(t.min() == 1.5);
  CHECK(t.max() == 3);
}

TEST_CASE("values stay within the cached extremes") {
  TrialRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int dim = trial % 2 + 1;
    VariableExponent p = randomExponent(rng, 0.5, 6, dim, 8);
    CHECK(p.min() > 0);
    for (int k = 0; k < 200; ++k) {
      Point x{rng.uniform(-8, 8), dim == 2 ? rng.uniform(-8, 8) : 0};
      double v = p(x);
      CHECK(v >= p.min());
      CHECK(v <= p.max());
      CHECK(p(x) == v);
    }
  }
}

TEST_CASE("json round trip") {
  for (auto p : {VariableExponent::constant(2.5), VariableExponent::logSmooth(1.5, 1), VariableExponent::canonical(2, 1),
                 VariableExponent::table({1.5, 2, 3})}) {
    VariableExponent back = VariableExponent::fromJson(p.toJson(), 1, 8);
    for (double x : {-7.0, -0.3, 0.0, 2.2, 7.5}) CHECK(back({x, 0}) == p({x, 0}));
  }
  CHECK(VariableExponent::fromJson("inf", 1, 8)({0, 0}) == kInfinity);
  CHECK_THROWS_AS(VariableExponent::fromJson(nlohmann::json{{"kind", "wavy"}}, 1, 8), ParseError);
}

TEST_CASE("phi_p branches") {
  CHECK(phiP(2, 3) == 9);
  CHECK(phiP(kInfinity, 0.7) == 0);
  CHECK(phiP(kInfinity, 1.0) == 0);
  CHECK(phiP(kInfinity, 1.5) == kInfinity);
  CHECK(phiP(0.5, 0) == 0);
}

TEST_CASE("sigma_t") {
  CHECK(sigmaT(1, 1) == 0);
  CHECK(sigmaT(1, 3) == 0);
  CHECK(sigmaT(0.5, 2) == 2);
  CHECK(sigmaT(2, 3) == 0);
  CHECK_THROWS_AS(sigmaT(0, 1), DomainError);
}

TEST_CASE("log-Holder constants") {
  LogHolderConstants c = logHolderConstants(VariableExponent::constant(3), 64);
  CHECK(c.cLocal == 0);
  REQUIRE(c.cInfinity);
  CHECK(*c.cInfinity == 0);

  // 1/p = 1/2 + 1/(4 log(e + 1/|x|)): pairs through 0 give exactly 1/4.
  auto fn = [](const Point& x) {
    double ax = std::abs(x[0]);
    return ax == 0 ? 2.0 : 1 / (0.5 + 0.25 / std::log(M_E + 1 / ax));
  };
  VariableExponent p = VariableExponent::closedForm("cusp", fn, 1, 8, 4.0 / 3.0);
  LogHolderConstants cusp = logHolderConstants(p, 512);
  CHECK(cusp.cLocal >= 0.25 - 1e-12);

  // More samples never lower the estimate.
  TrialRng rng(3);
  for (int t = 0; t < 5; ++t) {
    VariableExponent q = randomExponent(rng, 0.8, 4, 1, 8);
    double prev = 0;
    for (std::size_t b : {16, 32, 64, 128, 256}) {
      double v = logHolderConstants(q, b).cLocal;
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("c_infinity(1/p, 1/u)") {
  VariableExponent p = VariableExponent::canonical(2, 1);
  CHECK(cInfinityPU(p, p, 256) == 0);
  CHECK(cInfinityPU(VariableExponent::constant(2), VariableExponent::constant(4), 256) == 0);

  // 1/p = 0.5 + 0.4 exp(-x^2), u = inf: sampled sup 0.9 at x = 0, 1/p_inf = 0.5.
  auto fn = [](const Point& x) { return 1 / (0.5 + 0.4 * std::exp(-x[0] * x[0])); };
  VariableExponent bump = VariableExponent::closedForm("bump", fn, 1, 8, 2.0);
  double oracle = 0;
  for (const Point& x : regularitySamplePoints(1, 8, 256)) oracle = std::max(oracle, 1 / fn(x) - 0.5);
  CHECK(oracle == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(cInfinityPU(bump, VariableExponent::constant(kInfinity), 256) == doctest::Approx(oracle).epsilon(1e-14));

  CHECK_THROWS_AS(cInfinityPU(VariableExponent::constant(3), VariableExponent::constant(2), 64), OrderingError);
}

TEST_CASE("conjugate exponent") {
  VariableExponent two = conjugateExponent(VariableExponent::constant(2));
  CHECK(two({1, 0}) == doctest::Approx(2).epsilon(1e-15));
  CHECK(conjugateExponent(VariableExponent::constant(1))({0, 0}) == kInfinity);
  VariableExponent s = conjugateExponent(VariableExponent::step(3, 1.5));
  CHECK(s({-1, 0}) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(s({1, 0}) == doctest::Approx(3).epsilon(1e-15));
  CHECK_THROWS_AS(conjugateExponent(VariableExponent::constant(0.8)), DomainError);

  Grid g(1, 8, 128);
  VariableExponent p = VariableExponent::logSmooth(1.2, 2);
  VariableExponent pp = conjugateExponent(conjugateExponent(p));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(pp(g.node(i)) == doctest::Approx(p(g.node(i))).epsilon(1e-12));
}

TEST_CASE("admissible weights") {
  AdmissibilityReport c = checkAdmissibleWeights(WeightSequence::constantSmoothness(0.7, 5), 128);
  CHECK(c.worstRatioLow == doctest::Approx(std::pow(2, 0.7)).epsilon(1e-14));
  CHECK(c.worstRatioHigh == doctest::Approx(std::pow(2, 0.7)).epsilon(1e-14));
  CHECK(c.worstAlphaConstant == doctest::Approx(1).epsilon(1e-14));
  CHECK(c.pass());

  for (auto s : {VariableExponent::logSmooth(0.2, 0.6), VariableExponent::canonical(0.1, 0.5),
                 VariableExponent::constant(1.5)}) {
    WeightSequence w = WeightSequence::variableSmoothness(s, 6);
    CHECK(checkAdmissibleWeights(w, 256).pass());
  }

  WeightSequence bad = WeightSequence::constantSmoothness(0.5, 4);
  bad.alpha1 = 1.0;
  AdmissibilityReport r = checkAdmissibleWeights(bad, 64);
  CHECK_FALSE(r.ratioPass);
  CHECK(r.worstRatioLow < std::pow(2, bad.alpha1));

  WeightSequence zero = WeightSequence::unit(3);
  zero.evaluate = [](int, const Point&) { return 0.0; };
  CHECK_THROWS_AS(checkAdmissibleWeights(zero, 16), ValidityError);
}
