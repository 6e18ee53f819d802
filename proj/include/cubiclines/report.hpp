#pragma once

// Identity-check ledger and deterministic report serialization.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubiclines/core.hpp"

namespace cubiclines {

using Json = nlohmann::ordered_json;

/// How lhs is compared with rhs.
enum class CheckKind { exact, absolute, relative, less, less_equal, greater, within, holds };

inline std::string_view to_string(CheckKind k) {
  switch (k) {
    case CheckKind::exact: return "exact";
    case CheckKind::absolute: return "absolute";
    case CheckKind::relative: return "relative";
    case CheckKind::less: return "less";
    case CheckKind::less_equal: return "less_equal";
    case CheckKind::greater: return "greater";
    case CheckKind::within: return "within";
    case CheckKind::holds: return "holds";
  }
  return "?";
}

struct Check {
  std::string name;
  std::string anchor;  // the identity or bound being exercised
  Json lhs;
  Json rhs;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::exact;
  bool pass = false;
  std::string note;
};

inline Json wide(u128 v) {
  if (v <= u128(std::uint64_t(-1))) return Json(static_cast<std::uint64_t>(v));
  return Json(to_string(v));
}

inline Json wide(i128 v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return Json(static_cast<std::int64_t>(v));
  return Json(to_string(v));
}

namespace checks {

inline Check exact(std::string name, std::string anchor, u128 lhs, u128 rhs) {
  return {std::move(name), std::move(anchor), wide(lhs), wide(rhs), 0.0, CheckKind::exact, lhs == rhs, {}};
}

inline Check exact_i(std::string name, std::string anchor, i128 lhs, i128 rhs) {
  return {std::move(name), std::move(anchor), wide(lhs), wide(rhs), 0.0, CheckKind::exact, lhs == rhs, {}};
}

inline Check absolute(std::string name, std::string anchor, double lhs, double rhs, double tol) {
  const bool ok = std::isfinite(lhs) && std::isfinite(rhs) && std::abs(lhs - rhs) <= tol;
  return {std::move(name), std::move(anchor), lhs, rhs, tol, CheckKind::absolute, ok, {}};
}

/// |lhs - rhs| <= tol * max(|rhs|, floor).
inline Check relative(std::string name, std::string anchor, double lhs, double rhs, double tol,
                      double floor = 0.0) {
  const double scale = std::max(std::abs(rhs), floor);
  const bool ok = std::isfinite(lhs) && std::isfinite(rhs) && std::abs(lhs - rhs) <= tol * scale;
  return {std::move(name), std::move(anchor), lhs, rhs, tol, CheckKind::relative, ok, {}};
}

inline Check less(std::string name, std::string anchor, double lhs, double rhs) {
  return {std::move(name), std::move(anchor), lhs, rhs, 0.0, CheckKind::less, lhs < rhs, {}};
}

inline Check less_equal(std::string name, std::string anchor, double lhs, double rhs) {
  return {std::move(name), std::move(anchor), lhs, rhs, 0.0, CheckKind::less_equal, lhs <= rhs, {}};
}

inline Check greater(std::string name, std::string anchor, double lhs, double rhs) {
  return {std::move(name), std::move(anchor), lhs, rhs, 0.0, CheckKind::greater, lhs > rhs, {}};
}

inline Check within(std::string name, std::string anchor, double value, double lo, double hi) {
  return {std::move(name), std::move(anchor), value, Json::array({lo, hi}), 0.0, CheckKind::within,
          value >= lo && value <= hi, {}};
}

inline Check holds(std::string name, std::string anchor, bool ok, Json lhs = true, Json rhs = true) {
  return {std::move(name), std::move(anchor), std::move(lhs), std::move(rhs), 0.0, CheckKind::holds, ok, {}};
}

}  // namespace checks

struct Report {
  Json job = Json::object();
  Json results = Json::array();
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

/// Rounds every floating value to 12 significant digits, recursively.
inline Json rounded(const Json& j) {
  if (j.is_number_float()) return round_g12(j.get<double>());
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

inline std::string csv_cell(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  }
  if (j.is_array() || j.is_object()) return csv_cell(Json(j.dump()));
  return j.dump();
}

}  // namespace detail

inline Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["kind"] = std::string(to_string(c.kind));
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline Json to_json(const Report& r) {
  Json j;
  j["job"] = r.job;
  j["results"] = r.results;
  Json cs = Json::array();
  for (const auto& c : r.checks) cs.push_back(to_json(c));
  j["checks"] = cs;
  j["pass"] = r.passed();
  return detail::rounded(j);
}

/// JSON lines: one line for the job, one per result, one per check.
inline std::string to_jsonl(const Report& r) {
  const Json j = to_json(r);
  std::ostringstream os;
  os << Json{{"job", j["job"]}}.dump() << '\n';
  for (const auto& res : j["results"]) os << Json{{"result", res}}.dump() << '\n';
  for (const auto& c : j["checks"]) os << Json{{"check", c}}.dump() << '\n';
  os << Json{{"pass", j["pass"]}}.dump() << '\n';
  return os.str();
}

/// CSV: the result table (columns from the union of result keys in first-seen
/// order), then a blank line and the check table.
inline std::string to_csv(const Report& r) {
  const Json j = to_json(r);
  std::ostringstream os;
  std::vector<std::string> cols;
  for (const auto& res : j["results"])
    for (auto it = res.begin(); it != res.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
  if (!cols.empty()) {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& res : j["results"]) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) os << ',';
        if (res.contains(cols[i])) os << detail::csv_cell(res[cols[i]]);
      }
      os << '\n';
    }
  }
  if (!j["checks"].empty()) {
    if (!cols.empty()) os << '\n';
    os << "check,anchor,lhs,rhs,kind,tolerance,pass\n";
    for (const auto& c : j["checks"])
      os << detail::csv_cell(c["name"]) << ',' << detail::csv_cell(c["anchor"]) << ','
         << detail::csv_cell(c["lhs"]) << ',' << detail::csv_cell(c["rhs"]) << ','
         << detail::csv_cell(c["kind"]) << ',' << detail::csv_cell(c["tolerance"]) << ','
         << (c["pass"].get<bool>() ? "pass" : "fail") << '\n';
  }
  return os.str();
}

}  // namespace cubiclines
