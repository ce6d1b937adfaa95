#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vexspace {

enum class Verdict { pass, fail, informational };

const char* verdictName(Verdict v);
Verdict parseVerdict(const std::string& text);

struct SuiteResult {
  std::string suite;
  std::string caseId;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  double tolerance = 0;
  Verdict verdict = Verdict::informational;
  double wallMs = 0;

  bool operator==(const SuiteResult&) const = default;
};

// Canonical order: by suite, then case id.
void sortResults(std::vector<SuiteResult>& results);
bool anyFailure(const std::vector<SuiteResult>& results);

// Header "suite,case,lhs,rhs,ratio,tolerance,verdict,wall_ms"; numbers as %.17g.
void writeCsv(std::ostream& out, const std::vector<SuiteResult>& results);
std::vector<SuiteResult> readCsv(std::istream& in);

// Array of objects; non-finite numbers are written as the strings "inf", "-inf", "nan".
void writeJson(std::ostream& out, const std::vector<SuiteResult>& results);
std::vector<SuiteResult> readJson(std::istream& in);

// Per-suite bar panel of pass / fail / informational counts.
void writeSvgSummary(std::ostream& out, const std::vector<SuiteResult>& results);

// Dispatch by format name (csv, json, svg-summary). Throws UsageError for an
// empty result list or unknown format, IoError when the file cannot be written.
void emitReport(const std::vector<SuiteResult>& results, const std::string& format, const std::string& path);

}  // namespace vexspace
