#include "vexspace/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>

#include "vexspace/atoms.hpp"
#include "vexspace/besov.hpp"
#include "vexspace/convolution.hpp"
#include "vexspace/errors.hpp"
#include "vexspace/lebesgue.hpp"
#include "vexspace/mixed.hpp"
#include "vexspace/morrey.hpp"
#include "vexspace/trial.hpp"

namespace vexspace {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

struct Outcome {
  double lhs = 0;
  double rhs = 0;
  double tolerance = 0;
  Verdict verdict = Verdict::informational;
};

Outcome agree(double a, double b, double tol) {
  bool ok = a == b || std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
  return {a, b, tol, ok ? Verdict::pass : Verdict::fail};
}

// a <= b (1 + tol)
Outcome atMost(double a, double b, double tol) {
  return {a, b, tol, a <= b + tol * std::abs(b) ? Verdict::pass : Verdict::fail};
}

Outcome check(bool ok, double a, double b, double tol) { return {a, b, tol, ok ? Verdict::pass : Verdict::fail}; }

Outcome info(double a, double b, double tol = 0) { return {a, b, tol, Verdict::informational}; }

// Hypothesis gate: outside the hypotheses nothing is asserted.
Outcome gated(Outcome o, bool hypothesisMet) {
  if (!hypothesisMet) o.verdict = Verdict::informational;
  return o;
}

double ratioOf(double a, double b) {
  if (b != 0) return a / b;
  if (a == 0) return 1;
  return std::isnan(a) ? a : std::copysign(kInfinity, a);
}

std::string num(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02zu", i);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string gridLabel(const Grid& g) { return "N" + std::to_string(g.pointsPerAxis()); }

class Runner {
 public:
  Runner(std::string suite, const Config& cfg, std::uint64_t seed, bool timings, std::vector<SuiteResult>& out)
      : suite_(std::move(suite)), cfg_(cfg), seed_(seed), timings_(timings), out_(out) {}

  const Config& cfg() const { return cfg_; }
  std::uint64_t seedFor(const std::string& battery) const { return trialSeed(seed_, fnv1a(suite_ + "/" + battery)); }
  TrialRng rng(const std::string& battery, std::size_t i) const { return TrialRng(trialSeed(seedFor(battery), i)); }
  std::size_t count(double base) const {
    return static_cast<std::size_t>(std::max(1.0, std::round(base * cfg_.trialScale)));
  }

  void run(const std::string& caseId, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      std::cerr << suite_ << "/" << caseId << ": " << e.what() << "\n";
      o = {kNaN, kNaN, 0, Verdict::fail};
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    SuiteResult r;
    r.suite = suite_;
    r.caseId = caseId;
    r.lhs = o.lhs;
    r.rhs = o.rhs;
    r.ratio = ratioOf(o.lhs, o.rhs);
    r.tolerance = o.tolerance;
    r.verdict = o.verdict;
    r.wallMs = timings_ ? std::round(ms * 1000) / 1000 : 0;
    out_.push_back(r);
  }

 private:
  std::string suite_;
  const Config& cfg_;
  std::uint64_t seed_;
  bool timings_;
  std::vector<SuiteResult>& out_;
};

VariableExponent randomIn(TrialRng& rng, double lo, double hi, const Grid& g) {
  return randomExponent(rng, lo, hi, g.dim(), g.boxRadius());
}

// Some u with p <= u everywhere.
VariableExponent aboveP(TrialRng& rng, const VariableExponent& p) {
  if (rng.uniform() < 0.5) return p.scaled(rng.uniform(1.1, 3.0));
  return VariableExponent::constant(p.max() * rng.uniform(1.05, 2.0), p.dim(), p.boxRadius());
}

GridFunctionSequence singleEntry(const GridFunction& f, std::size_t entries, std::size_t at) {
  GridFunctionSequence s(f.grid());
  for (std::size_t k = 0; k < entries; ++k) s.push(k == at ? f : GridFunction(f.grid()));
  return s;
}

// (sum v^q)^{1/q}, max for q = inf.
double lqNorm(const std::vector<double>& v, double q) {
  double top = 0;
  for (double x : v) top = std::max(top, x);
  if (q == kInfinity || top == 0) return top;
  double sum = 0;
  for (double x : v) sum += std::pow(x / top, q);
  return top * std::pow(sum, 1 / q);
}

constexpr std::size_t kEntries = 3;

// ---------------------------------------------------------------- identities

void identitiesSuite(Runner& R) {
  const Config& c = R.cfg();
  const Grid& g = c.grid;
  const BisectionConfig& bc = c.bisection;
  BallSearchSet balls = c.ballSearchSet();
  std::size_t cases = std::max<std::size_t>(20, R.count(20));

  for (std::size_t i = 0; i < cases; ++i) {
    R.run("lp-equals-morrey/" + num(i), [&] {
      TrialRng r = R.rng("lp-equals-morrey", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      GridFunction f = randomBumps(g, r, i % 2 == 1);
      return agree(morreyNormDirect(p, p, f, balls, bc), normLp(p, f, bc), 1e-8);
    });
    R.run("morrey-two-routes/" + num(i), [&] {
      TrialRng r = R.rng("morrey-two-routes", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      VariableExponent u = aboveP(r, p);
      GridFunction f = randomBumps(g, r, i % 2 == 1);
      return agree(morreyNormDirect(p, u, f, balls, bc), morreyNormInterchanged(p, u, f, balls, bc),
                   2 * bc.relativeTolerance);
    });
    R.run("constant-q-iterated/" + num(i), [&] {
      TrialRng r = R.rng("constant-q-iterated", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      VariableExponent u = aboveP(r, p);
      double qv = i % 5 == 4 ? kInfinity : r.uniform(0.5, 4);
      VariableExponent q = VariableExponent::constant(qv, g.dim(), g.boxRadius());
      GridFunctionSequence fs = randomBumpSequence(g, r, kEntries);
      std::vector<double> norms;
      for (const GridFunction& f : fs.entries()) norms.push_back(morreyNormDirect(p, u, f, balls, bc));
      return agree(normMixedMorrey(p, q, u, fs, balls, bc), lqNorm(norms, qv), 1e-8);
    });
    R.run("single-entry/" + num(i), [&] {
      TrialRng r = R.rng("single-entry", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      VariableExponent u = aboveP(r, p);
      VariableExponent q = randomIn(r, 0.5, 4, g);
      GridFunction f = randomBumps(g, r, i % 2 == 1);
      GridFunctionSequence fs = singleEntry(f, kEntries, i % kEntries);
      return agree(normMixedMorrey(p, q, u, fs, balls, bc), morreyNormDirect(p, u, f, balls, bc), 1e-8);
    });
    R.run("mixed-u-equals-p/" + num(i), [&] {
      TrialRng r = R.rng("mixed-u-equals-p", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      VariableExponent q = randomIn(r, 0.5, 4, g);
      GridFunctionSequence fs = randomBumpSequence(g, r, kEntries);
      return agree(normMixedMorrey(p, q, p, fs, balls, bc), normMixedLebesgue(p, q, fs, bc), 1e-8);
    });
    for (double t : {0.5, 2.0}) {
      std::string battery = "t-power-" + label(t);
      R.run(battery + "/" + num(i), [&] {
        TrialRng r = R.rng(battery, i);
        VariableExponent p = randomIn(r, 0.8, 4, g);
        VariableExponent u = aboveP(r, p);
        VariableExponent q = randomIn(r, 0.5, 4, g);
        GridFunctionSequence fs = randomBumpSequence(g, r, kEntries);
        double lhs = std::pow(normMixedMorrey(p, q, u, fs, balls, bc), t);
        double rhs =
            normMixedMorrey(p.scaled(1 / t), q.scaled(1 / t), u.scaled(1 / t), fs.absPower(t), balls, bc);
        return agree(lhs, rhs, 1e-7);
      });
    }
  }

  // Fixed worked examples on the default grid.
  Grid g512(1, 8.0, 512);
  R.run("example-morrey-indicator", [&] {
    BallSearchSet b = BallSearchSet::standard(g512);
    GridFunction f = boxIndicator(g512, {0, 0}, {1, 0});
    double v = morreyNormDirect(VariableExponent::constant(1), VariableExponent::constant(2), f, b, bc);
    return agree(v, std::sqrt(2.0), 0.02);
  });
  R.run("example-step-exponent", [&] {
    // (2/L)^2 + (2/L)^3 = 1, i.e. L = 2/y with y^3 + y^2 = 1.
    double lo = 0, hi = 1;
    for (int k = 0; k < 200; ++k) {
      double mid = (lo + hi) / 2;
      (mid * mid * mid + mid * mid > 1 ? hi : lo) = mid;
    }
    double oracle = 2 / hi;
    GridFunction f = boxIndicator(g512, {-1, 0}, {1, 0}).scaled(2.0);
    double v = normLp(VariableExponent::step(2, 3), f, bc);
    return check(std::abs(v - oracle) <= 1e-6, v, oracle, 1e-6);
  });
}

// ------------------------------------------------------- semimodular-axioms

void semimodularSuite(Runner& R) {
  const Config& c = R.cfg();
  const Grid& g = c.grid;
  const BisectionConfig& bc = c.bisection;
  double tol = bc.relativeTolerance;
  BallSearchSet balls = c.ballSearchSet();
  std::size_t cases = std::max<std::size_t>(20, R.count(20));
  std::size_t few = R.count(10);
  GridFunctionSequence zeroSeq = singleEntry(GridFunction(g), kEntries, 0);

  R.run("modular-zero", [&] {
    double a = modularLp(c.p, GridFunction(g));
    double b = modularMixedMorrey(c.p, c.q, c.u, zeroSeq, balls, bc);
    return check(a == 0 && b == 0, a, b, 0);
  });
  R.run("norm-zero", [&] {
    double v = normMixedMorrey(c.p, c.q, c.u, zeroSeq, balls, bc);
    return check(v == 0, v, 0, 0);
  });

  for (std::size_t i = 0; i < cases; ++i) {
    R.run("phase/" + num(i), [&] {
      TrialRng r = R.rng("phase", i);
      VariableExponent p = randomIn(r, 0.5, 4, g);
      GridFunction f = randomBumps(g, r, true);
      double base = modularLp(p, f);
      double di = std::abs(modularLp(p, f.scaled(Complex(0, 1))) - base);
      double dm = std::abs(modularLp(p, f.scaled(-1.0)) - base);
      return check(di == 0 && dm == 0, std::max(di, dm), 0, 0);
    });
    R.run("unit-ball/" + num(i), [&] {
      TrialRng r = R.rng("unit-ball", i);
      VariableExponent p = randomIn(r, 0.5, 5, g);
      GridFunction f = randomBumps(g, r, i % 2 == 1).scaled(r.logUniform(0.1, 10));
      double nrm = normLp(p, f, bc);
      double at = modularLp(p, f.scaled(1 / nrm));
      double below = modularLp(p, f.scaled(1 / (nrm * (1 - 10 * tol))));
      return check(at <= 1 && below > 1, at, below, 10 * tol);
    });
    R.run("holder/" + num(i), [&] {
      TrialRng r = R.rng("holder", i);
      VariableExponent p = randomIn(r, 1, 4, g);
      VariableExponent pc = conjugateExponent(p);
      GridFunction f = randomBumps(g, r, true);
      GridFunction h = randomBumps(g, r, true);
      double lhs = integrateAbs(f.pointwiseProduct(h));
      return atMost(lhs, 2 * normLp(p, f, bc) * normLp(pc, h, bc), 1e-9);
    });
    R.run("norm-from-modular/" + num(i), [&] {
      TrialRng r = R.rng("norm-from-modular", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      VariableExponent u = aboveP(r, p);
      VariableExponent q = randomIn(r, 1, 3, g);
      GridFunctionSequence fs = randomBumpSequence(g, r, kEntries).scaled(r.logUniform(0.2, 5));
      ModularBoundReport rep = normFromModularBound(p, q, u, fs, balls, bc);
      if (!rep.applicable) return info(rep.lhs, rep.rhs);
      return check(rep.pass, rep.lhs, rep.rhs, 1e-8);
    });

    // Triangle inequality in the three normed regimes.
    for (int regime = 1; regime <= 3; ++regime) {
      std::string battery = "triangle-regime" + std::to_string(regime);
      R.run(battery + "/" + num(i), [&] {
        TrialRng r = R.rng(battery, i);
        VariableExponent p = VariableExponent::constant(2), q = p;
        if (regime == 1) {
          p = randomIn(r, 1, 4, g);
          q = VariableExponent::constant(r.uniform(1, 4), g.dim(), g.boxRadius());
        } else if (regime == 2) {
          q = randomIn(r, 1, 2.5, g);
          p = q.scaled(r.uniform(1, 1.6));
        } else {
          p = randomIn(r, 2, 5, g);
          q = conjugateExponent(p).scaled(r.uniform(1, 2));
        }
        VariableExponent u = aboveP(r, p);
        bool complexValues = i % 2 == 1;
        GridFunctionSequence fs = randomBumpSequence(g, r, kEntries);
        GridFunctionSequence hs = randomBumpSequence(g, r, kEntries);
        if (complexValues) hs = hs.scaled(Complex(std::cos(1.0), std::sin(1.0)));
        double lhs = normMixedMorrey(p, q, u, fs + hs, balls, bc);
        double rhs = normMixedMorrey(p, q, u, fs, balls, bc) + normMixedMorrey(p, q, u, hs, balls, bc);
        return atMost(lhs, rhs, 1e-8);
      });
    }
  }

  for (std::size_t i = 0; i < few; ++i) {
    R.run("scaling-ladder/" + num(i), [&] {
      TrialRng r = R.rng("scaling-ladder", i);
      VariableExponent p = randomIn(r, 0.5, 5, g);
      GridFunction f = randomBumps(g, r, true);
      double prev = 0, worst = 0;
      for (int k = 0; k <= 40; ++k) {
        double v = modularLp(p, f.scaled(std::exp2((k - 20) / 4.0)));
        worst = std::max(worst, prev - v);
        prev = v;
      }
      return check(worst <= 0, worst, 0, 0);
    });
    R.run("left-continuity/" + num(i), [&] {
      TrialRng r = R.rng("left-continuity", i);
      VariableExponent p = randomIn(r, 0.5, 5, g);
      GridFunction f = randomBumps(g, r, true).scaled(r.logUniform(0.2, 5));
      double full = modularLp(p, f);
      double near = modularLp(p, f.scaled(1 - std::ldexp(1.0, -40)));
      return check(std::abs(full - near) <= 1e-6, near, full, 1e-6);
    });
    R.run("homogeneity/" + num(i), [&] {
      TrialRng r = R.rng("homogeneity", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      VariableExponent u = aboveP(r, p);
      VariableExponent q = randomIn(r, 0.5, 4, g);
      GridFunctionSequence fs = randomBumpSequence(g, r, kEntries);
      double mag = r.logUniform(0.05, 20), phase = r.uniform(0, 6.283185307179586);
      Complex factor = std::polar(mag, phase);
      double lhs = normMixedMorrey(p, q, u, fs.scaled(factor), balls, bc);
      return agree(lhs, mag * normMixedMorrey(p, q, u, fs, balls, bc), 1e-9);
    });
    R.run("route-agreement/" + num(i), [&] {
      TrialRng r = R.rng("route-agreement", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      VariableExponent u = aboveP(r, p);
      VariableExponent q = randomIn(r, 0.8, 3, g);
      GridFunctionSequence fs = randomBumpSequence(g, r, kEntries).scaled(r.logUniform(0.2, 5));
      double a = modularMixedMorrey(p, q, u, fs, balls, bc);
      std::optional<double> b = modularMixedMorreySimple(p, q, u, fs, balls, bc);
      if (!b) return info(a, kNaN);
      return agree(a, *b, 10 * tol);
    });
    R.run("inner-infimum-lemma/" + num(i), [&] {
      TrialRng r = R.rng("inner-infimum-lemma", i);
      VariableExponent p = randomIn(r, 0.5, 4, g);
      VariableExponent q = randomIn(r, 0.5, 4, g);
      GridFunction f = randomBumps(g, r, i % 2 == 1);
      f = f.scaled(r.uniform(0.5, 1.5) / normLp(p, f, bc));
      double inner = modularMixedLebesgue(p, q, singleEntry(f, 1, 0), bc);
      double rho = modularLp(p, f);
      if (inner > 1) return info(rho, inner);
      return check(rho <= 1 + 1e-9, rho, 1, 1e-9);
    });
    R.run("power-triangle/" + num(i), [&] {
      // Lebesgue-level power triangle with t = p- <= 1 carried to the Morrey level.
      TrialRng r = R.rng("power-triangle", i);
      VariableExponent p = randomIn(r, 0.5, 1, g);
      VariableExponent u = aboveP(r, p);
      double t = std::min(1.0, p.min());
      GridFunction f = randomBumps(g, r, true), h = randomBumps(g, r, true);
      auto pw = [t](double x) { return std::pow(x, t); };
      bool lebesgue = pw(normLp(p, f + h, bc)) <= (pw(normLp(p, f, bc)) + pw(normLp(p, h, bc))) * (1 + 1e-9);
      double lhs = pw(morreyNormDirect(p, u, f + h, balls, bc));
      double rhs = pw(morreyNormDirect(p, u, f, balls, bc)) + pw(morreyNormDirect(p, u, h, balls, bc));
      return gated(atMost(lhs, rhs, 1e-8), lebesgue);
    });
  }
  for (std::size_t i = 0; i < 5; ++i) {
    R.run("modular-definite/" + num(i), [&] {
      TrialRng r = R.rng("modular-definite", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      VariableExponent u = aboveP(r, p);
      VariableExponent q = randomIn(r, 0.5, 4, g);
      GridFunctionSequence fs = singleEntry(randomBumps(g, r).scaled(r.logUniform(1e-3, 1)), kEntries, i % kEntries);
      double v = modularMixedMorrey(p, q, u, fs, balls, bc);
      return check(v > 0, v, 0, 0);
    });
    // Outside the three regimes the triangle inequality may fail; reported only.
    R.run("triangle-outside/" + num(i), [&] {
      TrialRng r = R.rng("triangle-outside", i);
      VariableExponent p = randomIn(r, 0.4, 0.9, g);
      VariableExponent u = aboveP(r, p);
      VariableExponent q = randomIn(r, 0.5, 2, g);
      GridFunctionSequence fs = randomBumpSequence(g, r, kEntries);
      GridFunctionSequence hs = randomBumpSequence(g, r, kEntries);
      double lhs = normMixedMorrey(p, q, u, fs + hs, balls, bc);
      double rhs = normMixedMorrey(p, q, u, fs, balls, bc) + normMixedMorrey(p, q, u, hs, balls, bc);
      return info(lhs, rhs);
    });
  }
}

// ---------------------------------------------------------------- embeddings

Grid atomsGrid(const Config& c) {
  return Grid(c.grid.dim(), 2.0, c.grid.dim() == 1 ? 512 : 128);
}

void embeddingsSuite(Runner& R) {
  const Config& c = R.cfg();
  const Grid& g = c.grid;
  const BisectionConfig& bc = c.bisection;
  BallSearchSet balls = c.ballSearchSet();
  std::size_t cases = std::max<std::size_t>(20, R.count(20));
  VariableExponent qInf = VariableExponent::constant(kInfinity, g.dim(), g.boxRadius());

  for (std::size_t i = 0; i < cases; ++i) {
    R.run("linf-functions/" + num(i), [&] {
      TrialRng r = R.rng("linf-functions", i);
      VariableExponent p = randomIn(r, 0.8, 4, g);
      VariableExponent u = aboveP(r, p);
      VariableExponent q = randomIn(r, 0.5, 4, g);
      GridFunctionSequence fs = randomBumpSequence(g, r, kEntries).scaled(r.logUniform(0.2, 5));
      double lhs = normMixedMorrey(p, qInf, u, fs, balls, bc);
      double rhs = normMixedMorrey(p, q, u, fs, balls, bc);
      return check(lhs <= rhs + 1e-9 * std::max(1.0, rhs), lhs, rhs, 1e-9);
    });
  }

  Grid ga = atomsGrid(c);
  BallSearchSet ballsA = BallSearchSet::standard(ga, c.centerStride, c.midpoints);
  AtomFamily fam;
  int top = std::min(4, maxLevelForGrid(ga));
  WeightSequence w = c.weightSequence(top + 1);
  for (std::size_t i = 0; i < cases; ++i) {
    R.run("linf-coefficients/" + num(i), [&] {
      TrialRng r = R.rng("linf-coefficients", i);
      CoefficientArray lambda = randomCoefficients(r, fam, ga, top);
      EmbeddingReport rep = sequenceEmbeddingCheck(c.p, c.q, c.u, w, {lambda}, ballsA, bc);
      return check(rep.pass, rep.lhs[0], rep.rhs[0], 1e-9);
    });
  }
  for (std::size_t i = 0; i < 5; ++i) {
    R.run("single-coefficient/" + num(i), [&] {
      TrialRng r = R.rng("single-coefficient", i);
      CoefficientArray lambda = randomCoefficients(r, fam, ga, top);
      lambda.resize(1);
      EmbeddingReport rep = sequenceEmbeddingCheck(c.p, c.q, c.u, w, {lambda}, ballsA, bc);
      return agree(rep.lhs[0], rep.rhs[0], 1e-8);
    });
  }

  // ||chi_B||_p against r^{n/p}: reported for constant p, bounded spread for the canonical family.
  BallSearchSet coarse = BallSearchSet::standard(g, 8, false);
  R.run("char-ball/constant-p2", [&] {
    CharBallReport rep = charBallNormRatio(VariableExponent::constant(2, g.dim(), g.boxRadius()), coarse, bc);
    return info(rep.minSmall, rep.maxSmall);
  });
  R.run("char-ball/canonical", [&] {
    CharBallReport rep = charBallNormRatio(VariableExponent::canonical(1.5, 1.0, g.dim(), g.boxRadius()), coarse, bc);
    double lo = std::min(rep.minSmall, rep.minLarge), hi = std::max(rep.maxSmall, rep.maxLarge);
    return check(hi <= 10 * lo, hi, lo, 10);
  });
}

// --------------------------------------------------------------- convolution

Grid refined(const Grid& g) { return Grid(g.dim(), g.boxRadius(), 2 * g.pointsPerAxis()); }

Outcome refinementOutcome(double coarse, double fine, bool hypothesisMet) {
  double r = ratioOf(fine, coarse);
  bool ok = std::isfinite(coarse) && std::isfinite(fine) && r >= 0.5 && r <= 2;
  return gated({fine, coarse, 2, ok ? Verdict::pass : Verdict::fail}, hypothesisMet);
}

void convolutionSuite(Runner& R) {
  const Config& c = R.cfg();
  const Grid& g = c.grid;
  const BisectionConfig& bc = c.bisection;
  Grid g2 = refined(g);
  BallSearchSet balls = c.ballSearchSet();
  BallSearchSet balls2 = BallSearchSet::standard(g2, c.centerStride, c.midpoints);
  int n = g.dim();

  ConvolutionThreshold th = convolutionThreshold(c.p, c.q, c.u);
  double m = th.value + 1;
  R.run("threshold", [&] { return info(th.value, m); });

  TrialOptions opt;
  opt.trials = R.count(50);
  opt.levels = 4;
  opt.seed = R.seedFor("mixed-morrey");
  RatioReport a = convolutionInequalityReport(c.p, c.q, c.u, m, opt, balls, bc);
  RatioReport b = convolutionInequalityReport(c.p, c.q, c.u, m, opt, balls2, bc);
  bool met = a.hypothesisMet;
  R.run("mixed-morrey/max-ratio-" + gridLabel(g), [&] { return info(a.maxRatio, a.minRatio); });
  R.run("mixed-morrey/max-ratio-" + gridLabel(g2), [&] { return info(b.maxRatio, b.minRatio); });
  R.run("mixed-morrey/finite", [&] {
    bool ok = a.finite && b.finite && std::isfinite(a.maxRatio) && std::isfinite(b.maxRatio);
    return gated(check(ok, a.maxRatio, b.maxRatio, 0), met);
  });
  R.run("mixed-morrey/refinement", [&] { return refinementOutcome(a.maxRatio, b.maxRatio, met); });

  // Corollary for a single function, and its u = p reduction to the Lebesgue inequality.
  TrialOptions single = opt;
  single.trials = R.count(5);
  single.seed = R.seedFor("morrey");
  double mc = n + n * cInfinityPU(c.p, c.u, 256) + 1;
  RatioReport mr = morreyConvolutionReport(c.p, c.u, mc, single, balls, bc);
  R.run("morrey/max-ratio", [&] {
    return gated(check(mr.finite && std::isfinite(mr.maxRatio), mr.maxRatio, mr.threshold, 0), mr.hypothesisMet);
  });
  R.run("morrey/u-equals-p", [&] {
    double mp = n + 1.0;
    RatioReport x = morreyConvolutionReport(c.p, c.p, mp, single, balls, bc);
    RatioReport y = lebesgueConvolutionReport(c.p, mp, single, g, bc);
    return agree(x.maxRatio, y.maxRatio, 1e-6);
  });

  // Discrete convolution over a delta ladder.
  TrialOptions dopt = opt;
  dopt.trials = R.count(8);
  dopt.seed = R.seedFor("discrete");
  std::vector<double> deltas{0.5, 1, 2};
  DiscreteConvolutionReport da = discreteConvolutionReport(c.p, c.q, c.u, deltas, dopt, balls, bc);
  DiscreteConvolutionReport db = discreteConvolutionReport(c.p, c.q, c.u, deltas, dopt, balls2, bc);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    std::string d = "delta-" + label(deltas[k]);
    R.run("discrete/max-ratio-" + d + "-" + gridLabel(g), [&] { return info(da.maxRatio[k], deltas[k]); });
    R.run("discrete/max-ratio-" + d + "-" + gridLabel(g2), [&] { return info(db.maxRatio[k], deltas[k]); });
    R.run("discrete/refinement-" + d, [&] { return refinementOutcome(da.maxRatio[k], db.maxRatio[k], true); });
  }
  R.run("discrete/monotone-in-delta", [&] {
    return check(da.monotone && db.monotone, da.maxRatio.front(), da.maxRatio.back(), 1e-9);
  });
  R.run("discrete/finite", [&] { return check(da.finite && db.finite, da.maxRatio.front(), db.maxRatio.front(), 0); });

  // Weight shift inside the kernels.
  int levels = std::max(1, maxLevelForGrid(g) + 1);
  R.run("weight-shift/constant", [&] {
    WeightShiftReport rep =
        weightShiftCheck(VariableExponent::constant(0.5, n, g.boxRadius()), 2, 0, levels, 64);
    return check(std::abs(rep.worstConstant - 1) <= 1e-12, rep.worstConstant, 1, 1e-12);
  });
  VariableExponent alpha = VariableExponent::logSmooth(0.5, 1, n, g.boxRadius());
  WeightShiftReport w1, w2;
  R.run("weight-shift/log-smooth", [&] {
    double l = weightShiftCheck(alpha, 2, 0, levels, 64).cLogAlpha;
    w1 = weightShiftCheck(alpha, 2, l, levels, 64);
    w2 = weightShiftCheck(alpha, 2, 2 * l, levels, 64);
    double lo = *std::min_element(w1.perLevel.begin(), w1.perLevel.end());
    double hi = *std::max_element(w1.perLevel.begin(), w1.perLevel.end());
    return gated(check(std::isfinite(hi) && hi <= 2 * lo, hi, lo, 2), w1.hypothesisMet);
  });
  R.run("weight-shift/doubled-decay", [&] {
    return check(w2.worstConstant <= w1.worstConstant * (1 + 1e-12), w2.worstConstant, w1.worstConstant, 1e-12);
  });

  // Kernel mass is level independent up to the tail outside the box. The
  // quadrature needs 2^nu h well below 1, hence a finer grid than the default.
  double me = n + 2.0;
  Grid fine(n, g.boxRadius(), n == 1 ? 4096 : 512);
  for (int nu = 0; nu <= 4; ++nu) {
    R.run("eta-mass/nu-" + std::to_string(nu), [&] {
      double mass = integrateAbs(etaKernel(fine, nu, me));
      double exact = etaL1Mass(me, n);
      double allowance = etaTailBound(nu, me, n, g.boxRadius()) + 0.05 * exact;
      return check(std::abs(mass - exact) <= allowance, mass, exact, allowance / exact);
    });
  }
}

// -------------------------------------------------------------------- peetre

void peetreSuite(Runner& R) {
  const Config& c = R.cfg();
  const Grid& g = c.grid;
  const BisectionConfig& bc = c.bisection;
  Grid g2 = refined(g);
  int J = c.besovLevels();
  int J2 = c.levels >= 0 ? c.levels : maxLevelForGrid(g2);

  AdmissibleSystem std1(g, J), alt1(g, J, WindowParams::alternate());
  PeetreSystem ps1(g, J);
  R.run("lattice/admissible-standard", [&] {
    LatticeCheck k = std1.checkLattice();
    return check(k.pass(), k.minPlateauPhi0, k.minPlateauPhi, 0);
  });
  R.run("lattice/admissible-alternate", [&] {
    LatticeCheck k = alt1.checkLattice();
    return check(k.pass(), k.minPlateauPhi0, k.minPlateauPhi, 0);
  });
  R.run("lattice/peetre-positivity", [&] {
    PeetreCheck k = ps1.checkPositivity();
    return check(k.pass(), k.minPsi0, k.minPsi1, 0);
  });

  WeightSequence w = c.weightSequence(J + 1);
  WeightSequence w2 = c.weightSequence(J2 + 1);
  double aBound = peetreSizeBound(c.p, c.q, c.u, w);
  double a = aBound + 1;
  R.run("size-bound", [&] { return info(aBound, a); });

  TrialOptions opt;
  opt.trials = R.count(6);
  opt.seed = R.seedFor("characterization");
  BallSearchSet balls = c.ballSearchSet();
  BallSearchSet balls2 = BallSearchSet::standard(g2, c.centerStride, c.midpoints);
  AdmissibleSystem std2(g2, J2);
  PeetreSystem ps2(g2, J2);
  PeetreReport ra = peetreCharacterizationReport(c.p, c.q, c.u, w, std1, ps1, a, opt, balls, bc);
  PeetreReport rb = peetreCharacterizationReport(c.p, c.q, c.u, w2, std2, ps2, a, opt, balls2, bc);
  bool met = ra.hypothesisMet;

  for (const auto* rep : {&ra, &rb}) {
    std::string tag = rep == &ra ? gridLabel(g) : gridLabel(g2);
    for (std::size_t t = 0; t < rep->convolution.size(); ++t)
      R.run("domination/" + tag + "/" + num(t), [&] {
        // Pointwise domination holds for every a > 0.
        return atMost(rep->convolution[t], rep->maximal[t], 1e-9);
      });
    auto band = [&](const char* name, double lo, double hi) {
      R.run(std::string("equivalence/") + name + "-" + tag,
            [&] { return gated(check(lo >= 0.1 && hi <= 10, lo, hi, 10), met); });
    };
    band("ratio12", rep->minRatio12, rep->maxRatio12);
    band("ratio23", rep->minRatio23, rep->maxRatio23);
    band("ratio13", rep->minRatio13, rep->maxRatio13);
  }
  R.run("refinement/ratio12", [&] { return refinementOutcome(ra.maxRatio12, rb.maxRatio12, met); });
  R.run("refinement/ratio23", [&] { return refinementOutcome(ra.maxRatio23, rb.maxRatio23, met); });
  R.run("refinement/ratio13", [&] { return refinementOutcome(ra.maxRatio13, rb.maxRatio13, met); });

  // Two admissible systems on the same corpus.
  auto systemRatios = [&](const Grid& grid, int levels, const WeightSequence& ww, const std::vector<double>& base,
                          const BallSearchSet& b) {
    AdmissibleSystem alt(grid, levels, WindowParams::alternate());
    std::vector<double> out;
    for (std::size_t t = 0; t < opt.trials; ++t) {
      TrialRng rng(trialSeed(opt.seed, t));
      GridFunction f = randomBumps(grid, rng);
      out.push_back(besovMorreyNorm(c.p, c.q, c.u, ww, alt, f, b, bc) / base[t]);
    }
    return out;
  };
  std::vector<double> sa = systemRatios(g, J, w, ra.besov, balls);
  std::vector<double> sb = systemRatios(g2, J2, w2, rb.besov, balls2);
  auto range = [](const std::vector<double>& v) {
    return std::make_pair(*std::min_element(v.begin(), v.end()), *std::max_element(v.begin(), v.end()));
  };
  auto [saLo, saHi] = range(sa);
  auto [sbLo, sbHi] = range(sb);
  R.run("system-independence/" + gridLabel(g), [&] { return check(saLo >= 0.1 && saHi <= 10, saLo, saHi, 10); });
  R.run("system-independence/" + gridLabel(g2), [&] { return check(sbLo >= 0.1 && sbHi <= 10, sbLo, sbHi, 10); });
  R.run("system-independence/refinement", [&] { return refinementOutcome(saHi, sbHi, true); });

  // Monotonicity in a and suppression at large a need 2^j h > 1, so a coarse grid is used.
  Grid gc(g.dim(), 5.0, g.dim() == 1 ? 64 : 32);
  int Jc = maxLevelForGrid(gc);
  PeetreSystem psc(gc, Jc);
  for (std::size_t t = 0; t < 3; ++t) {
    TrialRng rng = R.rng("maximal", t);
    GridFunction f = randomBumps(gc, rng, true);
    GridFunctionSequence pieces = peetrePieces(psc, f);
    int j = Jc;
    const GridFunction& piece = pieces[j];
    R.run("maximal-monotone-in-a/" + num(t), [&] {
      GridFunction prev = peetreMaximal(piece, j, 0.5);
      double worst = 0;
      for (double av : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
        GridFunction cur = peetreMaximal(piece, j, av);
        for (std::size_t k = 0; k < cur.size(); ++k) worst = std::max(worst, cur[k].real() - prev[k].real());
        prev = cur;
      }
      return check(worst <= 0, worst, 0, 0);
    });
    R.run("maximal-large-a/" + num(t), [&] {
      GridFunction big = peetreMaximal(piece, j, 64);
      double worst = 0, top = piece.maxAbs();
      for (std::size_t k = 0; k < big.size(); ++k) worst = std::max(worst, big[k].real() - std::abs(piece[k]));
      return check(worst <= 1e-6 * top, worst, top, 1e-6);
    });
  }
}

// --------------------------------------------------------------------- atoms

void atomsSuite(Runner& R) {
  const Config& c = R.cfg();
  const BisectionConfig& bc = c.bisection;
  Grid ga = atomsGrid(c);
  Grid ga2 = refined(ga);
  int n = ga.dim();
  int top = std::min(4, maxLevelForGrid(ga));

  struct Named {
    std::string name;
    AtomFamily fam;
  };
  std::vector<Named> families{{"atom-K3-L2-d3", {3, 2, 3, false, 10}},
                              {"atom-K2-L3-d4", {2, 3, 4, false, 10}},
                              {"molecule-K3-L2-d3-M10", {3, 2, 3, true, 10}}};
  for (const Named& nf : families) {
    for (int j = 0; j <= top; ++j) {
      // The cube centered at 0 and, for j >= 1, the one centered at 1/2; both dilates stay in [-2,2]^n.
      for (long mi : {0L, 1L}) {
        if (j == 0 && mi == 1) continue;
        long shift = j >= 1 ? mi << (j - 1) : 0;
        LatticeIndex m{shift, n == 2 ? -shift : 0};
        R.run("certify-block/" + nf.name + "/j" + std::to_string(j) + "/m" + std::to_string(mi), [&] {
          std::shared_ptr<const GridFunction> blk = buildBlock(nf.fam, j, m, ga);
          BlockCheck k = verifyBuildingBlock(*blk, nf.fam, j, m, nf.fam.molecule);
          return check(k.pass(), k.worstDerivative, k.derivativeSlack, 1e-8);
        });
      }
    }
  }
  // The scaled atom is a molecule.
  R.run("certify-block/atom-as-molecule", [&] {
    AtomFamily fam{3, 2, 3, true, 10};
    LatticeIndex m{1, 0};
    GridFunction mol = buildAtom(fam, 2, m, ga).scaled(std::pow(1 + fam.d * std::sqrt(double(n)) / 2, -fam.M));
    BlockCheck k = verifyBuildingBlock(mol, fam, 2, m, true);
    return check(k.pass(), k.worstDerivative, k.derivativeSlack, 1e-8);
  });

  // Shipped weight families.
  int wl = top + 2;
  std::vector<std::pair<std::string, WeightSequence>> weights{
      {"unit", WeightSequence::unit(wl, n, ga.boxRadius())},
      {"constant-s-0.5", WeightSequence::constantSmoothness(0.5, wl, n, ga.boxRadius())},
      {"constant-s-minus-0.5", WeightSequence::constantSmoothness(-0.5, wl, n, ga.boxRadius())},
      {"variable-log-smooth", WeightSequence::variableSmoothness(VariableExponent::logSmooth(0.2, 0.6, n, 8), wl)},
      {"variable-canonical", WeightSequence::variableSmoothness(VariableExponent::canonical(0.1, 0.5, n, 8), wl)},
      {"config", c.weightSequence(wl)}};
  for (const auto& [name, w] : weights) {
    R.run("certify-weights/" + name, [&] {
      AdmissibilityReport rep = checkAdmissibleWeights(w, 256);
      return check(rep.pass(), rep.worstRatioLow, rep.worstRatioHigh, 0);
    });
  }

  AtomFamily fam;
  int J = maxLevelForGrid(ga), J2 = maxLevelForGrid(ga2);
  WeightSequence w = c.weightSequence(J + 1), w2 = c.weightSequence(J2 + 1);
  AdmissibleSystem sys(ga, J), sys2(ga2, J2);
  BallSearchSet balls = BallSearchSet::standard(ga, c.centerStride, c.midpoints);
  BallSearchSet balls2 = BallSearchSet::standard(ga2, c.centerStride, c.midpoints);
  SynthesisHypotheses hyp = synthesisHypotheses(c.p, c.q, c.u, w, fam, ga);
  bool met = hyp.used != "none";
  R.run("hypotheses/L", [&] { return info(fam.L, hyp.used == "alternative" ? hyp.lBoundAlt : hyp.lBound); });
  R.run("hypotheses/K", [&] { return info(fam.K, w.alpha2); });
  R.run("hypotheses/alternative-applies", [&] { return info(hyp.alternativeApplies, hyp.alternativeMet); });

  // Single atoms across levels.
  std::vector<double> perLevel;
  for (int j = 1; j <= top; ++j) {
    CoefficientArray lambda{{j, {0, 0}, 1.0}};
    SynthesisReport rep = synthesisBoundReport(c.p, c.q, c.u, w, fam, {lambda}, sys, balls, bc);
    perLevel.push_back(rep.ratios.empty() ? kNaN : rep.ratios[0]);
    R.run("synthesis/single-atom-j" + std::to_string(j), [&] { return info(perLevel.back(), j); });
  }
  R.run("synthesis/level-stability", [&] {
    double lo = *std::min_element(perLevel.begin(), perLevel.end());
    double hi = *std::max_element(perLevel.begin(), perLevel.end());
    bool ok = std::all_of(perLevel.begin(), perLevel.end(), [](double v) { return std::isfinite(v) && v > 0; });
    return gated(check(ok && hi <= 4 * lo, hi, lo, 4), met);
  });

  // Random sparse coefficients on two grids.
  std::vector<CoefficientArray> corpus;
  for (std::size_t t = 0; t < R.count(6); ++t) {
    TrialRng rng = R.rng("synthesis", t);
    corpus.push_back(randomCoefficients(rng, fam, ga, top));
  }
  SynthesisReport ra = synthesisBoundReport(c.p, c.q, c.u, w, fam, corpus, sys, balls, bc);
  SynthesisReport rb = synthesisBoundReport(c.p, c.q, c.u, w2, fam, corpus, sys2, balls2, bc);
  R.run("synthesis/max-ratio-" + gridLabel(ga), [&] { return info(ra.maxRatio, ra.minRatio); });
  R.run("synthesis/max-ratio-" + gridLabel(ga2), [&] { return info(rb.maxRatio, rb.minRatio); });
  R.run("synthesis/finite", [&] {
    return gated(check(ra.finite && rb.finite && !ra.ratios.empty(), ra.maxRatio, rb.maxRatio, 0), met);
  });
  R.run("synthesis/refinement", [&] { return refinementOutcome(ra.maxRatio, rb.maxRatio, met); });
  R.run("synthesis/phase-rotation", [&] {
    CoefficientArray rotated = corpus[0];
    for (Coefficient& co : rotated) co.value *= Complex(0, 1);
    SynthesisReport x = synthesisBoundReport(c.p, c.q, c.u, w, fam, {rotated}, sys, balls, bc);
    return agree(x.ratios[0], ra.ratios[0], 1e-10);
  });
  R.run("synthesis/scaling", [&] {
    CoefficientArray scaled = corpus[0];
    for (Coefficient& co : scaled) co.value *= 5.0;
    SynthesisReport x = synthesisBoundReport(c.p, c.q, c.u, w, fam, {scaled}, sys, balls, bc);
    return agree(x.ratios[0], ra.ratios[0], 1e-8);
  });
}

using SuiteFn = void (*)(Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{{"identities", identitiesSuite},
                                                              {"semimodular-axioms", semimodularSuite},
                                                              {"convolution", convolutionSuite},
                                                              {"peetre", peetreSuite},
                                                              {"atoms", atomsSuite},
                                                              {"embeddings", embeddingsSuite}};
  return r;
}

}  // namespace

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    v.push_back("all");
    return v;
  }();
  return names;
}

std::vector<SuiteResult> runSuite(const std::string& name, const Config& config, std::uint64_t seed, bool timings) {
  std::vector<SuiteResult> out;
  bool found = false;
  for (const auto& [suite, fn] : registry()) {
    if (name != "all" && name != suite) continue;
    found = true;
    Runner runner(suite, config, seed, timings, out);
    fn(runner);
  }
  if (!found) throw UsageError("unknown suite '" + name + "'");
  sortResults(out);
  return out;
}

}  // namespace vexspace
