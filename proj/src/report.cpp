#include "phm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "phm/error.hpp"

namespace phm {

using nlohmann::json;

const char* to_string(Relation r) {
  switch (r) {
    case Relation::LessEq: return "<=";
    case Relation::Greater: return ">";
    case Relation::GreaterEq: return ">=";
    case Relation::Equal: return "==";
    case Relation::Info: return "info";
  }
  return "?";
}

Relation relation_from_string(const std::string& s) {
  for (Relation r : {Relation::LessEq, Relation::Greater, Relation::GreaterEq, Relation::Equal, Relation::Info})
    if (s == to_string(r)) return r;
  throw Error(ErrorKind::ValidationError, "unknown relation '" + s + "'");
}

bool judge(const std::optional<double>& value, double tol, Relation rel) {
  if (!value) return false;
  const double v = *value;
  if (!std::isfinite(v)) return false;
  switch (rel) {
    case Relation::LessEq: return v <= tol;
    case Relation::Greater: return v > tol;
    case Relation::GreaterEq: return v >= tol;
    case Relation::Equal: return v == tol;
    case Relation::Info: return true;
  }
  return false;
}

Record make_record(std::vector<double> point, std::string check, double value, double tol, Relation rel,
                   json extra) {
  Record r;
  r.point = std::move(point);
  r.check = std::move(check);
  r.tol = tol;
  r.relation = rel;
  r.extra = std::move(extra);
  if (std::isfinite(value)) {
    r.value = value;
  } else {
    r.error = "non-finite value";
  }
  r.pass = judge(r.value, tol, rel);
  return r;
}

Record make_error_record(std::vector<double> point, std::string check, double tol, Relation rel, std::string error) {
  Record r;
  r.point = std::move(point);
  r.check = std::move(check);
  r.tol = tol;
  r.relation = rel;
  r.error = std::move(error);
  r.pass = false;
  return r;
}

bool Report::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

std::vector<Summary> Report::summaries() const {
  std::vector<Summary> out;
  std::map<std::string, size_t> where;
  std::map<std::string, int> valued;
  for (const Record& r : records) {
    auto it = where.find(r.check);
    if (it == where.end()) {
      it = where.emplace(r.check, out.size()).first;
      out.push_back({r.check});
    }
    Summary& s = out[it->second];
    ++s.count;
    if (!r.pass) ++s.failures;
    if (r.value) {
      const int k = valued[r.check]++;
      s.max = k == 0 ? *r.value : std::max(s.max, *r.value);
      s.mean += *r.value;
    }
  }
  for (Summary& s : out)
    if (valued[s.check] > 0) s.mean /= valued[s.check];
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const Report& r) {
  json j;
  j["schema"] = 1;
  j["provenance"] = {{"manifest_hash", r.provenance.manifest_hash},
                     {"seed", r.provenance.seed},
                     {"tool_version", r.provenance.tool_version}};
  json recs = json::array();
  for (const Record& rec : r.records) {
    json jr;
    jr["point"] = rec.point;
    jr["check"] = rec.check;
    jr["value"] = rec.value ? json(*rec.value) : json(nullptr);
    jr["tol"] = rec.tol;
    jr["relation"] = to_string(rec.relation);
    jr["pass"] = rec.pass;
    jr["error"] = rec.error.empty() ? json(nullptr) : json(rec.error);
    jr["extra"] = rec.extra;
    recs.push_back(std::move(jr));
  }
  j["records"] = std::move(recs);
  json sums = json::array();
  for (const Summary& s : r.summaries())
    sums.push_back({{"check", s.check}, {"count", s.count}, {"failures", s.failures}, {"max", s.max}, {"mean", s.mean}});
  j["summaries"] = std::move(sums);
  j["trace"] = r.trace;
  j["pass"] = r.all_pass();
  return j;
}

Report report_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != 1) throw Error(ErrorKind::ValidationError, "schema: unsupported version");
    Report r;
    const json& p = j.at("provenance");
    r.provenance.manifest_hash = p.at("manifest_hash").get<std::string>();
    r.provenance.seed = p.at("seed").get<std::uint64_t>();
    r.provenance.tool_version = p.at("tool_version").get<std::string>();
    for (const json& jr : j.at("records")) {
      Record rec;
      rec.point = jr.at("point").get<std::vector<double>>();
      rec.check = jr.at("check").get<std::string>();
      if (!jr.at("value").is_null()) rec.value = jr.at("value").get<double>();
      rec.tol = jr.at("tol").get<double>();
      rec.relation = relation_from_string(jr.at("relation").get<std::string>());
      rec.pass = jr.at("pass").get<bool>();
      if (!jr.at("error").is_null()) rec.error = jr.at("error").get<std::string>();
      rec.extra = jr.at("extra");
      r.records.push_back(std::move(rec));
    }
    r.trace = j.value("trace", json::array());
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ValidationError, std::string("report: ") + e.what());
  }
}

ReportFormat format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "table") return ReportFormat::Table;
  throw Error(ErrorKind::ValidationError, "format must be 'json' or 'table', got '" + s + "'");
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string point_text(const std::vector<double>& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%s%.4f", i ? ", " : "", p[i]);
    s += buf;
  }
  return s + ")";
}

std::string table(const Report& r) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"#", "check", "point", "value", "rel", "tol", "pass", "error"});
  for (size_t i = 0; i < r.records.size(); ++i) {
    const Record& rec = r.records[i];
    rows.push_back({std::to_string(i + 1), rec.check, point_text(rec.point), rec.value ? num(*rec.value) : "-",
                    to_string(rec.relation), num(rec.tol), rec.pass ? "pass" : "FAIL", rec.error});
  }
  std::vector<size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  os << "seed " << r.provenance.seed << "  manifest " << r.provenance.manifest_hash << "  version "
     << r.provenance.tool_version << "\n\n";
  for (const auto& row : rows) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      if (c + 1 < row.size()) cell.resize(width[c], ' ');
      line += (c ? "  " : "") + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  os << "\nsummary\n";
  for (const Summary& s : r.summaries())
    os << "  " << s.check << ": " << s.count << " records, " << s.failures << " failures, max " << num(s.max)
       << ", mean " << num(s.mean) << '\n';
  if (!r.trace.empty()) os << "\nflow trace: " << r.trace.size() << " entries\n";
  os << (r.all_pass() ? "ALL PASS\n" : "FAILURES PRESENT\n");
  return os.str();
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(r).dump(1) + "\n";
  return table(r);
}

}  // namespace phm
