#include "vexspace/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "vexspace/errors.hpp"

namespace vexspace {

const char* verdictName(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    default:
      return "informational";
  }
}

Verdict parseVerdict(const std::string& text) {
  if (text == "pass") return Verdict::pass;
  if (text == "fail") return Verdict::fail;
  if (text == "informational") return Verdict::informational;
  throw ParseError("unknown verdict '" + text + "'");
}

void sortResults(std::vector<SuiteResult>& results) {
  std::stable_sort(results.begin(), results.end(), [](const SuiteResult& a, const SuiteResult& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    return a.caseId < b.caseId;
  });
}

bool anyFailure(const std::vector<SuiteResult>& results) {
  return std::any_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.verdict == Verdict::fail; });
}

namespace {

constexpr const char* kHeader = "suite,case,lhs,rhs,ratio,tolerance,verdict,wall_ms";

std::string formatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parseNumber(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'");
  }
  if (used != s.size()) throw ParseError("bad number '" + s + "'");
  return v;
}

// Suite and case ids are plain tokens; commas and quotes are not allowed.
void checkToken(const std::string& s) {
  if (s.find_first_of(",\"\n\r") != std::string::npos) throw UsageError("report field contains a separator: " + s);
}

std::vector<std::string> splitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void writeCsv(std::ostream& out, const std::vector<SuiteResult>& results) {
  out << kHeader << '\n';
  for (const SuiteResult& r : results) {
    checkToken(r.suite);
    checkToken(r.caseId);
    out << r.suite << ',' << r.caseId << ',' << formatNumber(r.lhs) << ',' << formatNumber(r.rhs) << ','
        << formatNumber(r.ratio) << ',' << formatNumber(r.tolerance) << ',' << verdictName(r.verdict) << ','
        << formatNumber(r.wallMs) << '\n';
  }
}

std::vector<SuiteResult> readCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw ParseError("report CSV: line 1: unexpected header");
  std::vector<SuiteResult> out;
  int lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::vector<std::string> f = splitCsv(line);
    if (f.size() != 8) throw ParseError("report CSV: line " + std::to_string(lineNo) + ": expected 8 fields");
    try {
      out.push_back({f[0], f[1], parseNumber(f[2]), parseNumber(f[3]), parseNumber(f[4]), parseNumber(f[5]),
                     parseVerdict(f[6]), parseNumber(f[7])});
    } catch (const ParseError& e) {
      throw ParseError("report CSV: line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json encodeNumber(double v) {
  if (std::isfinite(v)) return v;
  return formatNumber(v);
}

double decodeNumber(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parseNumber(v.get<std::string>());
  throw ParseError(where + ": expected a number");
}

}  // namespace

void writeJson(std::ostream& out, const std::vector<SuiteResult>& results) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const SuiteResult& r : results) {
    nlohmann::ordered_json e;
    e["suite"] = r.suite;
    e["case"] = r.caseId;
    e["lhs"] = encodeNumber(r.lhs);
    e["rhs"] = encodeNumber(r.rhs);
    e["ratio"] = encodeNumber(r.ratio);
    e["tolerance"] = encodeNumber(r.tolerance);
    e["verdict"] = verdictName(r.verdict);
    e["wall_ms"] = encodeNumber(r.wallMs);
    doc.push_back(std::move(e));
  }
  out << doc.dump(2) << '\n';
}

std::vector<SuiteResult> readJson(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("report JSON: top level must be an array");
  std::vector<SuiteResult> out;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const nlohmann::json& e = doc[k];
    std::string where = "report JSON: [" + std::to_string(k) + "]";
    for (const char* key : {"suite", "case", "lhs", "rhs", "ratio", "tolerance", "verdict", "wall_ms"})
      if (!e.contains(key)) throw ParseError(where + ": missing '" + key + "'");
    SuiteResult r;
    r.suite = e.at("suite").get<std::string>();
    r.caseId = e.at("case").get<std::string>();
    r.lhs = decodeNumber(e.at("lhs"), where + ".lhs");
    r.rhs = decodeNumber(e.at("rhs"), where + ".rhs");
    r.ratio = decodeNumber(e.at("ratio"), where + ".ratio");
    r.tolerance = decodeNumber(e.at("tolerance"), where + ".tolerance");
    r.verdict = parseVerdict(e.at("verdict").get<std::string>());
    r.wallMs = decodeNumber(e.at("wall_ms"), where + ".wall_ms");
    out.push_back(std::move(r));
  }
  return out;
}

void writeSvgSummary(std::ostream& out, const std::vector<SuiteResult>& results) {
  struct Counts {
    int pass = 0, fail = 0, info = 0;
  };
  std::map<std::string, Counts> bySuite;
  for (const SuiteResult& r : results) {
    Counts& c = bySuite[r.suite];
    if (r.verdict == Verdict::pass) ++c.pass;
    else if (r.verdict == Verdict::fail) ++c.fail;
    else ++c.info;
  }
  const int rowHeight = 28, labelWidth = 180, barWidth = 420, top = 40;
  int height = top + rowHeight * static_cast<int>(bySuite.size()) + 30;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << labelWidth + barWidth + 140 << "\" height=\""
      << height << "\" font-family=\"monospace\" font-size=\"12\">\n";
  out << "<text x=\"10\" y=\"20\" font-size=\"14\">verification summary</text>\n";
  int row = 0;
  for (const auto& [suite, c] : bySuite) {
    int total = c.pass + c.fail + c.info;
    int y = top + row * rowHeight;
    out << "<text x=\"10\" y=\"" << y + 15 << "\">" << suite << "</text>\n";
    double x = labelWidth;
    auto bar = [&](int count, const char* color) {
      if (count == 0) return;
      double w = barWidth * static_cast<double>(count) / total;
      char buf[160];
      std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%d\" width=\"%.2f\" height=\"20\" fill=\"%s\"/>\n", x, y,
                    w, color);
      out << buf;
      x += w;
    };
    bar(c.pass, "#3a9d4b");
    bar(c.fail, "#c8342b");
    bar(c.info, "#9aa3ad");
    out << "<text x=\"" << labelWidth + barWidth + 10 << "\" y=\"" << y + 15 << "\">" << c.pass << "/" << c.fail
        << "/" << c.info << "</text>\n";
    ++row;
  }
  out << "<text x=\"10\" y=\"" << height - 10 << "\">pass / fail / informational</text>\n";
  out << "</svg>\n";
}

void emitReport(const std::vector<SuiteResult>& results, const std::string& format, const std::string& path) {
  if (results.empty()) throw UsageError("no results to report");
  std::ostringstream buf;
  if (format == "csv")
    writeCsv(buf, results);
  else if (format == "json")
    writeJson(buf, results);
  else if (format == "svg-summary")
    writeSvgSummary(buf, results);
  else
    throw UsageError("unknown report format '" + format + "'");
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << buf.str();
  if (!file) throw IoError("failed writing " + path);
}

}  // namespace vexspace
