#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace phm {

inline constexpr const char* kToolVersion = "0.1.0";

/// How a record's value is compared with its tolerance. `Info` records are
/// reported values that always pass.
enum class Relation { LessEq, Greater, GreaterEq, Equal, Info };

const char* to_string(Relation r);
Relation relation_from_string(const std::string& s);

struct Record {
  std::vector<double> point;
  std::string check;
  std::optional<double> value;  // empty when the operation raised
  double tol = 0.0;
  Relation relation = Relation::LessEq;
  bool pass = false;
  std::string error;      // "<ErrorKind>: message" when value is empty
  nlohmann::json extra = nlohmann::json::object();
};

/// Decide pass/fail of a record from its value, tolerance and relation.
bool judge(const std::optional<double>& value, double tol, Relation rel);

/// Record built from a value; `pass` is filled in by judge().
Record make_record(std::vector<double> point, std::string check, double value, double tol,
                   Relation rel = Relation::LessEq, nlohmann::json extra = nlohmann::json::object());
Record make_error_record(std::vector<double> point, std::string check, double tol, Relation rel, std::string error);

struct Summary {
  std::string check;
  int count = 0;
  int failures = 0;
  double max = 0.0;   // over records with a value
  double mean = 0.0;
};

struct Provenance {
  std::string manifest_hash;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
};

struct Report {
  Provenance provenance;
  std::vector<Record> records;
  nlohmann::json trace = nlohmann::json::array();

  bool all_pass() const;
  /// One summary per check name, in order of first appearance.
  std::vector<Summary> summaries() const;
};

/// FNV-1a, 64 bit, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

nlohmann::json to_json(const Report& r);
/// Errors: ValidationError on a malformed report document.
Report report_from_json(const nlohmann::json& j);

enum class ReportFormat { Json, Table };
ReportFormat format_from_string(const std::string& s);
std::string emit_report(const Report& r, ReportFormat format);

}  // namespace phm
