#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "vexspace/atoms.hpp"
#include "vexspace/besov.hpp"
#include "vexspace/config.hpp"
#include "vexspace/convolution.hpp"
#include "vexspace/errors.hpp"
#include "vexspace/lebesgue.hpp"
#include "vexspace/mixed.hpp"
#include "vexspace/morrey.hpp"
#include "vexspace/parallel.hpp"
#include "vexspace/report.hpp"
#include "vexspace/suites.hpp"

using namespace vexspace;

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitOrdering = 2;
constexpr int kExitError = 3;

bool endsWith(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

std::string sig12(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << std::showpoint << v;
  return out.str();
}

nlohmann::json readConfigDoc(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  parseConfigText(buf.str());  // syntax and field errors with location
  return nlohmann::json::parse(buf.str());
}

// Exponents are rebuilt on the input's grid so evaluation covers its box.
Config configForGrid(nlohmann::json doc, const Grid& grid) {
  doc["grid"] = {{"dim", grid.dim()}, {"R", grid.boxRadius()}, {"N", grid.pointsPerAxis()}};
  return parseConfig(doc);
}

void printConstant(const std::string& name, const std::function<double()>& fn) {
  try {
    std::cout << name << ": " << sig12(fn()) << "\n";
  } catch (const DomainError& e) {
    std::cout << name << ": undefined (" << e.what() << ")\n";
  }
}

int runNorm(const std::string& space, const std::string& configPath, const std::string& input) {
  nlohmann::json doc = readConfigDoc(configPath);
  bool sequenceSpace = space == "mixed-lp" || space == "mixed-morrey";
  GridFunctionSequence fs = [&] {
    if (sequenceSpace && !endsWith(input, ".csv")) return readSequenceManifest(input);
    GridFunction f = readGridFunctionCsv(input);
    GridFunctionSequence s(f.grid());
    s.push(f);
    return s;
  }();
  const Grid& grid = fs.grid();
  Config c = configForGrid(doc, grid);
  BallSearchSet balls = c.ballSearchSet();

  double value = 0;
  if (space == "lp") {
    value = normLp(c.p, fs[0], c.bisection);
  } else if (space == "morrey") {
    value = morreyNormDirect(c.p, c.u, fs[0], balls, c.bisection);
  } else if (space == "mixed-lp") {
    value = normMixedLebesgue(c.p, c.q, fs, c.bisection);
  } else if (space == "mixed-morrey") {
    value = normMixedMorrey(c.p, c.q, c.u, fs, balls, c.bisection);
  } else if (space == "besov-morrey") {
    int J = c.besovLevels();
    AdmissibleSystem sys(grid, J);
    value = besovMorreyNorm(c.p, c.q, c.u, c.weightSequence(J + 1), sys, fs[0], balls, c.bisection);
  } else {
    throw UsageError("unknown space '" + space + "'");
  }

  std::cout << "value: " << sig12(value) << "\n";
  std::cout << "space: " << space << "\n";
  std::cout << "grid: dim=" << grid.dim() << " R=" << grid.boxRadius() << " N=" << grid.pointsPerAxis() << "\n";
  std::cout << "p: " << c.p.describe() << "\n";
  bool usesQ = space != "lp" && space != "morrey";
  bool usesU = space != "lp" && space != "mixed-lp";
  if (usesQ) std::cout << "q: " << c.q.describe() << "\n";
  if (usesU) std::cout << "u: " << c.u.describe() << "\n";
  auto logHolder = [](const VariableExponent& e) {
    ResolvedConstant r = resolveLogHolder(e);
    return std::make_pair(r.value, r.sampled ? "sampled" : "declared");
  };
  auto [cp, cpHow] = logHolder(c.p);
  std::cout << "c_log(1/p): " << sig12(cp) << " (" << cpHow << ")\n";
  if (usesQ) {
    auto [cq, cqHow] = logHolder(c.q);
    std::cout << "c_log(1/q): " << sig12(cq) << " (" << cqHow << ")\n";
  }
  if (usesU) {
    printConstant("c_inf(1/p,1/u)", [&] { return cInfinityPU(c.p, c.u, 256); });
    if (space == "morrey")
      printConstant("convolution threshold m >", [&] { return grid.dim() * (1 + cInfinityPU(c.p, c.u, 256)); });
    else
      printConstant("convolution threshold m >", [&] { return convolutionThreshold(c.p, c.q, c.u).value; });
  }
  if (space == "besov-morrey") {
    int J = c.besovLevels();
    WeightSequence w = c.weightSequence(J + 1);
    std::cout << "levels: " << J + 1 << "\n";
    std::cout << "weights: " << w.name << " alpha=" << sig12(w.alpha) << " alpha1=" << sig12(w.alpha1)
              << " alpha2=" << sig12(w.alpha2) << "\n";
    printConstant("peetre a >", [&] { return peetreSizeBound(c.p, c.q, c.u, w); });
    try {
      SynthesisHypotheses h = synthesisHypotheses(c.p, c.q, c.u, w, AtomFamily{}, grid);
      std::cout << "synthesis L >: " << sig12(h.lBound) << "\n";
      std::cout << "synthesis M >: " << sig12(h.mBound) << "\n";
      if (h.alternativeApplies) {
        std::cout << "synthesis L > (alternative): " << sig12(h.lBoundAlt) << "\n";
        std::cout << "synthesis M > (alternative): " << sig12(h.mBoundAlt) << "\n";
      }
      std::cout << "synthesis K >: " << sig12(w.alpha2) << "\n";
      if (h.infUAtBoundary) std::cout << "note: inf u attained at the sampled boundary\n";
    } catch (const DomainError& e) {
      std::cout << "synthesis bounds: undefined (" << e.what() << ")\n";
    }
  }
  if (usesQ && innerInfimumNeedsDirectBranch(c.p, c.q, grid))
    std::cout << "note: q = inf with p < inf at some node; inner infimum by direct bisection\n";
  return 0;
}

int runVerify(const std::string& suite, std::uint64_t seed, const std::string& configPath, const std::string& out,
              std::string format, bool timings) {
  Config c = configPath.empty() ? defaultConfig() : loadConfig(configPath);
  std::vector<SuiteResult> results = runSuite(suite, c, seed, timings);
  if (out.empty()) {
    if (format == "json")
      writeJson(std::cout, results);
    else if (format == "svg-summary")
      writeSvgSummary(std::cout, results);
    else
      writeCsv(std::cout, results);
  } else {
    emitReport(results, format, out);
  }
  std::size_t pass = 0, fail = 0, other = 0;
  for (const SuiteResult& r : results) {
    if (r.verdict == Verdict::pass)
      ++pass;
    else if (r.verdict == Verdict::fail)
      ++fail;
    else
      ++other;
  }
  std::cerr << suite << ": " << pass << " pass, " << fail << " fail, " << other << " informational\n";
  for (const SuiteResult& r : results)
    if (r.verdict == Verdict::fail) std::cerr << "  FAIL " << r.suite << "/" << r.caseId << "\n";
  return fail == 0 ? 0 : kExitFailures;
}

int runSynth(const std::string& specPath, const std::string& out) {
  std::ifstream in(specPath);
  if (!in) throw IoError("cannot open spec " + specPath);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("atom spec: " + std::string(e.what()));
  }
  AtomSpec spec = parseAtomSpec(doc);
  GridFunction f = synthesize(spec.family, spec.coefficients, spec.grid);
  writeGridFunctionCsv(out, f);
  std::cerr << "synthesized " << spec.coefficients.size() << (spec.family.molecule ? " molecules" : " atoms")
            << " on dim=" << spec.grid.dim() << " R=" << spec.grid.boxRadius() << " N=" << spec.grid.pointsPerAxis()
            << "\n";
  return 0;
}

// Indicator of [lo, hi) (a box in 2-D) times a scale, for quick inputs.
int runSample(int dim, double radius, std::size_t points, double lo, double hi, double scale, const std::string& out) {
  Grid g(dim, radius, points);
  GridFunction f = boxIndicator(g, {lo, dim == 2 ? lo : 0}, {hi, dim == 2 ? hi : 0}).scaled(scale);
  writeGridFunctionCsv(out, f);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  configureThreadsFromEnvironment();
  CLI::App app{"vexspace: norms and verification suites for variable exponent Besov-Morrey spaces"};
  app.require_subcommand(1);

  std::string space, configPath, input;
  CLI::App* norm = app.add_subcommand("norm", "compute a norm of an input function or sequence");
  norm->add_option("--space", space, "lp | morrey | mixed-lp | mixed-morrey | besov-morrey")
      ->required()
      ->check(CLI::IsMember({"lp", "morrey", "mixed-lp", "mixed-morrey", "besov-morrey"}));
  norm->add_option("--config", configPath, "configuration JSON");
  norm->add_option("--input", input, "grid function CSV, or a sequence manifest JSON for mixed spaces")->required();

  std::string suite, out, format = "csv";
  std::uint64_t seed = 42;
  bool timings = false;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suiteNames()));
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--config", configPath, "configuration JSON");
  verify->add_option("--out", out, "report path (stdout when omitted)");
  verify->add_option("--format", format, "csv | json | svg-summary")
      ->check(CLI::IsMember({"csv", "json", "svg-summary"}));
  verify->add_flag("--timings", timings, "record wall times (reports are then not reproducible)");

  std::string specPath;
  CLI::App* synth = app.add_subcommand("synth", "synthesize a function from atoms or molecules");
  synth->add_option("--spec", specPath, "atom specification JSON")->required();
  synth->add_option("--out", out, "output grid function CSV")->required();

  int dim = 1;
  double radius = 8, lo = 0, hi = 1, scale = 1;
  std::size_t points = 512;
  CLI::App* sample = app.add_subcommand("sample", "write a scaled indicator of [lo, hi) as a grid function CSV");
  sample->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
  sample->add_option("--R", radius);
  sample->add_option("--N", points);
  sample->add_option("--lo", lo);
  sample->add_option("--hi", hi);
  sample->add_option("--scale", scale);
  sample->add_option("--out", out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*norm) return runNorm(space, configPath, input);
    if (*verify) return runVerify(suite, seed, configPath, out, format, timings);
    if (*synth) return runSynth(specPath, out);
    if (*sample) return runSample(dim, radius, points, lo, hi, scale, out);
  } catch (const OrderingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOrdering;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
