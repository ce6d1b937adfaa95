#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vexspace/grid.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " \"" VEXSPACE_CLI_PATH "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

double valueOf(const std::string& out) {
  auto pos = out.find("value: ");
  REQUIRE(pos != std::string::npos);
  return std::stod(out.substr(pos + 7));
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("vexspace_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text = "") const {
    std::string p = (path / name).string();
    if (!text.empty()) std::ofstream(p) << text;
    return p;
  }
};

}  // namespace

TEST_CASE("norm command") {
  TempDir dir;
  std::string chi = dir.file("chi.csv");
  REQUIRE(run("sample --lo 0 --hi 1 --out " + chi).code == 0);

  RunResult lp = run("norm --space lp --config " + dir.file("p2.json", R"({"p": 2})") + " --input " + chi);
  CHECK(lp.code == 0);
  CHECK(lp.out.find("value: 1.00000000000\n") != std::string::npos);
  CHECK(std::abs(valueOf(lp.out) - 1) <= 1e-8);

  std::string cfg = dir.file("m.json", R"({"p": 1, "u": 2, "q": 1})");
  RunResult m = run("norm --space morrey --config " + cfg + " --input " + chi);
  CHECK(m.code == 0);
  CHECK(std::abs(valueOf(m.out) / std::sqrt(2.0) - 1) <= 0.02);
  CHECK(m.out.find("convolution threshold") != std::string::npos);

  RunResult mm = run("norm --space mixed-morrey --config " + cfg + " --input " + chi);
  CHECK(mm.code == 0);
  CHECK(valueOf(mm.out) == doctest::Approx(valueOf(m.out)).epsilon(1e-8));

  // Manifest input with two copies: q = 1 sums the two Morrey norms.
  vexspace::GridFunctionSequence seq(vexspace::Grid(1, 8, 512));
  vexspace::GridFunction f = vexspace::readGridFunctionCsv(chi);
  seq.push(f);
  seq.push(f);
  std::string manifest = dir.file("seq.json");
  vexspace::writeSequenceManifest(manifest, seq);
  RunResult two = run("norm --space mixed-morrey --config " + cfg + " --input " + manifest);
  CHECK(two.code == 0);
  CHECK(valueOf(two.out) == doctest::Approx(2 * valueOf(m.out)).epsilon(1e-8));

  RunResult bm = run("norm --space besov-morrey --config " + dir.file("b.json", R"({"p": 2, "q": 2, "u": 3})") +
                     " --input " + chi);
  CHECK(bm.code == 0);
  CHECK(bm.out.find("peetre a >") != std::string::npos);
  CHECK(bm.out.find("synthesis L >") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir dir;
  std::string chi = dir.file("chi.csv");
  REQUIRE(run("sample --lo 0 --hi 1 --out " + chi).code == 0);
  CHECK(run("norm --space morrey --config " + dir.file("bad.json", R"({"p": 3, "u": 2})") + " --input " + chi).code ==
        2);
  CHECK(run("norm --space lp --input " + dir.file("missing.csv")).code == 3);
  CHECK(run("norm --space lp --config " + dir.file("syntax.json", "{\"p\": }") + " --input " + chi).code == 3);
  CHECK(run("verify --suite nonsense").code != 0);

  std::string small = dir.file("small.json", R"({"grid": {"dim": 1, "R": 8, "N": 128}, "trials": 0.1})");
  RunResult ok = run("verify --suite identities --seed 42 --config " + small);
  CHECK(ok.out.rfind("suite,case,", 0) == 0);
  // Only the indicator example depends on the grid; everything else must pass here.
  std::istringstream rows(ok.out);
  std::string line;
  while (std::getline(rows, line))
    if (line.find(",fail,") != std::string::npos) CHECK(line.find("example-morrey-indicator") != std::string::npos);

  // A loose bisection tolerance breaks the 1e-8 identities.
  std::string loose = dir.file("loose.json", R"({"grid": {"dim": 1, "R": 8, "N": 128}, "trials": 0.1,
                                                 "bisection": {"tolerance": 0.05}})");
  CHECK(run("verify --suite identities --config " + loose).code == 1);
}

TEST_CASE("verify output is independent of the thread count") {
  TempDir dir;
  std::string small = dir.file("small.json", R"({"grid": {"dim": 1, "R": 8, "N": 128}, "trials": 0.1})");
  RunResult a = run("verify --suite semimodular-axioms --seed 7 --config " + small, "VEXSPACE_THREADS=1");
  RunResult b = run("verify --suite semimodular-axioms --seed 7 --config " + small, "VEXSPACE_THREADS=4");
  CHECK(a.code == b.code);
  CHECK(!a.out.empty());
  CHECK(a.out == b.out);

  std::string json = dir.file("r.json");
  run("verify --suite semimodular-axioms --seed 7 --format json --out " + json + " --config " + small);
  std::ifstream in(json);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str().front() == '[');
}

TEST_CASE("synth command") {
  TempDir dir;
  std::string spec = dir.file("atoms.json", R"({"K": 3, "L": 2, "d": 3, "grid": {"dim": 1, "R": 2, "N": 512},
      "coefficients": [{"j": 1, "m": [1], "re": 0.5, "im": 0}, {"j": 2, "m": [-3], "re": 0, "im": 1}]})");
  std::string out = dir.file("f.csv");
  REQUIRE(run("synth --spec " + spec + " --out " + out).code == 0);
  vexspace::GridFunction f = vexspace::readGridFunctionCsv(out);
  CHECK(f.grid() == vexspace::Grid(1, 2, 512));
  CHECK(f.maxAbs() > 0);
  CHECK(std::abs(vexspace::integrate(f)) < 1e-8);
  CHECK(run("synth --spec " + dir.file("bad.json", "[1,2") + " --out " + out).code == 3);
}
