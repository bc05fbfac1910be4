#pragma once

#include <map>
#include <string>
#include <vector>

namespace slidekit {

enum class Verdict { pass, fail, vacuous };
const char* to_string(Verdict v);

/// Result of one estimate check. Hypothesis failures give `vacuous`, never
/// `fail`: the estimates are conditional statements.
struct CheckReport {
  std::string check;
  std::map<std::string, bool> hypotheses;
  double lhs = 0;
  double rhs = 0;
  double tolerance = 0;
  Verdict verdict = Verdict::vacuous;
  std::vector<std::map<std::string, double>> series;
  std::map<std::string, double> extras;
  std::vector<std::string> notes;

  bool hypotheses_hold() const;
  /// Throws unknown_name if absent.
  double extra(const std::string& key) const;
};

inline constexpr int kReportSchemaVersion = 1;

/// JSON text with sorted keys; +/-inf and NaN become strings.
std::string to_json(const CheckReport& r);
/// CSV of the series rows (union of column names, sorted); empty if no series.
std::string series_csv(const CheckReport& r);

}  // namespace slidekit
