#include "slidekit/report.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "slidekit/error.hpp"

namespace slidekit {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::vacuous: return "vacuous";
  }
  return "vacuous";
}

bool CheckReport::hypotheses_hold() const {
  for (const auto& [k, v] : hypotheses)
    if (!v) return false;
  return true;
}

double CheckReport::extra(const std::string& key) const {
  auto it = extras.find(key);
  if (it == extras.end()) fail(ErrorKind::unknown_name, "report has no entry '" + key + "'");
  return it->second;
}

namespace {

nlohmann::json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

std::string to_json(const CheckReport& r) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["check"] = r.check;
  j["hypotheses"] = nlohmann::json::object();
  for (const auto& [k, v] : r.hypotheses) j["hypotheses"][k] = v;
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["tolerance"] = number(r.tolerance);
  j["verdict"] = to_string(r.verdict);
  j["series"] = nlohmann::json::array();
  for (const auto& row : r.series) {
    nlohmann::json jr = nlohmann::json::object();
    for (const auto& [k, v] : row) jr[k] = number(v);
    j["series"].push_back(jr);
  }
  j["extras"] = nlohmann::json::object();
  for (const auto& [k, v] : r.extras) j["extras"][k] = number(v);
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string series_csv(const CheckReport& r) {
  if (r.series.empty()) return {};
  std::set<std::string> cols;
  for (const auto& row : r.series)
    for (const auto& [k, v] : row) cols.insert(k);
  std::string out;
  bool first = true;
  for (const auto& c : cols) {
    out += first ? "" : ",";
    out += c;
    first = false;
  }
  out += '\n';
  char buf[40];
  for (const auto& row : r.series) {
    first = true;
    for (const auto& c : cols) {
      out += first ? "" : ",";
      first = false;
      auto it = row.find(c);
      if (it != row.end()) {
        std::snprintf(buf, sizeof buf, "%.17g", it->second);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace slidekit
