#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "phm/error.hpp"
#include "phm/manifest.hpp"
#include "phm/report.hpp"
#include "phm/runner.hpp"

using namespace phm;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Error error_of(const std::string& text) {
  try {
    parse_manifest(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("manifest was accepted");
  return Error(ErrorKind::ValidationError, "");
}

json example1_doc() { return json::parse(builtin_manifest("example1")); }

}  // namespace

TEST_CASE("builtin manifests") {
  const Manifest m = parse_manifest(builtin_manifest("example1"));
  CHECK(m.name == "example1");
  CHECK(m.dim == 2);
  CHECK(m.cdim == 3);
  CHECK(m.metric.is_constant());
  CHECK(m.target.is_constant());
  CHECK(m.map.target_cdim() == 3);
  CHECK(m.checks.size() == 3);
  CHECK(m.checks[2].negate);
  CHECK(m.sample.count == 100);
  CHECK(m.sample.seed == 42u);
  const Manifest e2 = load_manifest("example2");
  CHECK(e2.dim == 4);
  REQUIRE(e2.checks.size() == 4);
  CHECK(e2.checks[3].rank == 2);
  CHECK(builtin_manifest("nope").empty());
}

TEST_CASE("shipped manifests equal the builtins") {
  for (const std::string name : {"example1", "example2"}) {
    const Manifest file = load_manifest(std::string(PHM_SOURCE_DIR) + "/manifests/" + name + ".json");
    CHECK(file.hash() == parse_manifest(builtin_manifest(name)).hash());
  }
  for (const std::string name : {"heat_wave", "fubini_study_composite"})
    CHECK_NOTHROW(load_manifest(std::string(PHM_SOURCE_DIR) + "/manifests/" + name + ".json"));
}

TEST_CASE("manifest hash ignores formatting and key order") {
  json doc = example1_doc();
  const std::string compact = doc.dump();
  CHECK(parse_manifest(compact).hash() == parse_manifest(builtin_manifest("example1")).hash());
  doc["sample"]["seed"] = 43;
  CHECK(parse_manifest(doc.dump()).hash() != parse_manifest(compact).hash());
}

TEST_CASE("dimension mismatches name the field") {
  json doc = example1_doc();
  doc["map"]["components"] = {"x1", "x2"};
  Error e = error_of(doc.dump());
  CHECK(e.kind() == ErrorKind::ValidationError);
  CHECK(std::string(e.what()).find("map.components") != std::string::npos);

  doc = example1_doc();
  doc["map"]["components"][1] = "x3";
  e = error_of(doc.dump());
  CHECK(e.kind() == ErrorKind::ValidationError);
  CHECK(std::string(e.what()).find("map.components[1]") != std::string::npos);

  doc = example1_doc();
  doc["sample"]["box"] = {{-1, 1}};
  e = error_of(doc.dump());
  CHECK(std::string(e.what()).find("sample.box") != std::string::npos);

  doc = example1_doc();
  doc["domain"]["metric"] = json::array({json::array({"1", "0"}), json::array({"0.5", "1"})});
  e = error_of(doc.dump());
  CHECK(std::string(e.what()).find("domain.metric[1][0]") != std::string::npos);
}

TEST_CASE("malformed expressions are parse errors at the offending token") {
  json doc = example1_doc();
  doc["map"]["components"][0] = "x1 + * 2";
  const Error e = error_of(doc.dump());
  CHECK(e.kind() == ErrorKind::ParseError);
  const std::string msg = e.what();
  CHECK(msg.find("map.components[0]") != std::string::npos);
  CHECK(msg.find("column 6") != std::string::npos);
}

TEST_CASE("malformed JSON reports line and column") {
  const Error e = error_of("{\n  \"name\": \"x\",\n  \"domain\": {\"dim\": 2,,}\n}");
  CHECK(e.kind() == ErrorKind::ParseError);
  CHECK(std::string(e.what()).find("line 3") != std::string::npos);
}

TEST_CASE("unknown check names list the valid ones") {
  json doc = example1_doc();
  doc["checks"] = {"phwc", "harmonicity"};
  const Error e = error_of(doc.dump());
  CHECK(e.kind() == ErrorKind::ValidationError);
  const std::string msg = e.what();
  CHECK(msg.find("checks[1]") != std::string::npos);
  for (const std::string& name : check_names()) CHECK(msg.find(name) != std::string::npos);
}

TEST_CASE("a seed is required when points are sampled") {
  json doc = example1_doc();
  doc["sample"].erase("seed");
  const Error e = error_of(doc.dump());
  CHECK(e.kind() == ErrorKind::ValidationError);
  CHECK(std::string(e.what()).find("sample.seed") != std::string::npos);
  doc["sample"]["count"] = 0;
  CHECK_NOTHROW(parse_manifest(doc.dump()));
}

TEST_CASE("matrix targets must state whether they are Kaehler") {
  json doc = example1_doc();
  doc["target"] = {{"cdim", 3}, {"hermitian", {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}}};
  const Error e = error_of(doc.dump());
  CHECK(std::string(e.what()).find("target.kaehler") != std::string::npos);
}

TEST_CASE("example1 run") {
  const Manifest m = load_manifest("example1");
  const Report r = run_checks(m);
  CHECK(r.records.size() == 300);
  CHECK(r.all_pass());
  CHECK(r.provenance.seed == 42u);
  CHECK(r.provenance.manifest_hash == m.hash());
  const auto summaries = r.summaries();
  REQUIRE(summaries.size() == 3);
  CHECK(summaries[2].check == "hwc");
  CHECK(summaries[2].max == doctest::Approx(std::sqrt(48.0)));
  const std::string table = emit_report(r, ReportFormat::Table);
  int rows = 0;
  std::istringstream is(table);
  for (std::string line; std::getline(is, line);)
    for (const char* name : {" phwc ", " tension ", " hwc "})
      if (line.find(name) != std::string::npos && line.find("records") == std::string::npos) ++rows;
  CHECK(rows == 300);
  CHECK(table.find("ALL PASS") != std::string::npos);
}

TEST_CASE("example2 run reports rank 2") {
  const Report r = run_checks(load_manifest("example2"), RunOptions{std::nullopt, 10, 0, {}});
  CHECK(r.records.size() == 40);
  CHECK(r.all_pass());
  for (const Record& rec : r.records)
    if (rec.check == "fstructure") CHECK(rec.extra["rank"] == 2);
}

TEST_CASE("negated checks fail when the value is small") {
  json doc = example1_doc();
  doc["checks"] = {{{"name", "phwc"}, {"negate", true}}};
  const Report r = run_checks(parse_manifest(doc.dump()), RunOptions{std::nullopt, 5, 0, {}});
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("tolerance overrides") {
  const Manifest m = load_manifest("example1");
  RunOptions opt;
  opt.points = 5;
  opt.tol["hwc"] = 10.0;
  const Report r = run_checks(m, opt);
  CHECK_FALSE(r.all_pass());
  for (const Record& rec : r.records)
    if (rec.check == "hwc") CHECK(rec.tol == 10.0);
}

TEST_CASE("operation errors are recorded per point") {
  json doc = example1_doc();
  doc["map"]["components"] = {"x1", "x2", "1"};
  doc["checks"] = {"f_holomorphy", "phwc"};
  const Report r = run_checks(parse_manifest(doc.dump()), RunOptions{std::nullopt, 4, 0, {}});
  REQUIRE(r.records.size() == 8);
  for (size_t k = 0; k < r.records.size(); k += 2) {
    CHECK_FALSE(r.records[k].value.has_value());
    CHECK(r.records[k].error.rfind("NotPHWCAtPoint", 0) == 0);
    CHECK_FALSE(r.records[k].pass);
    CHECK(r.records[k + 1].value.has_value());
  }
}

TEST_CASE("a target wrongly flagged Kaehler is caught") {
  json doc = example1_doc();
  doc["target"] = {{"cdim", 3},
                   {"kaehler", true},
                   {"hermitian", {{"1 + x3", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}}};
  doc["checks"] = {"tension", "tension_lc", "kaehler"};
  const Report r = run_checks(parse_manifest(doc.dump()), RunOptions{std::nullopt, 3, 0, {}});
  for (const Record& rec : r.records) {
    if (rec.check == "tension") CHECK(rec.error.rfind("TargetNotKaehler", 0) == 0);
    if (rec.check == "tension_lc") CHECK(rec.value.has_value());
    if (rec.check == "kaehler") CHECK_FALSE(rec.pass);
  }
}

TEST_CASE("JSON reports round trip byte for byte") {
  const Report r = run_checks(load_manifest("example2"), RunOptions{std::nullopt, 7, 0, {}});
  const std::string a = emit_report(r, ReportFormat::Json);
  const std::string b = emit_report(report_from_json(json::parse(a)), ReportFormat::Json);
  CHECK(a == b);

  const Report empty;
  const std::string e = emit_report(empty, ReportFormat::Json);
  const json parsed = json::parse(e);
  CHECK(parsed["records"].empty());
  CHECK(parsed["schema"] == 1);
  CHECK(emit_report(report_from_json(parsed), ReportFormat::Json) == e);

  Record err = make_error_record({0.5}, "phwc", 1e-10, Relation::LessEq, "NotPHWCAtPoint: gate");
  Report with_error;
  with_error.records.push_back(err);
  const std::string w = emit_report(with_error, ReportFormat::Json);
  CHECK(emit_report(report_from_json(json::parse(w)), ReportFormat::Json) == w);
}

TEST_CASE("malformed report documents are rejected") {
  CHECK_THROWS_AS(report_from_json(json::parse("{\"schema\": 2}")), Error);
  CHECK_THROWS_AS(report_from_json(json::parse("[]")), Error);
}

TEST_CASE("summaries are recomputable from records") {
  const Report r = run_checks(load_manifest("example1"), RunOptions{std::nullopt, 9, 0, {}});
  const json j = to_json(r);
  for (const auto& s : j["summaries"]) {
    int count = 0, failures = 0;
    double mx = 0.0;
    for (const auto& rec : j["records"])
      if (rec["check"] == s["check"]) {
        ++count;
        failures += !rec["pass"].get<bool>();
        if (!rec["value"].is_null()) mx = std::max(mx, rec["value"].get<double>());
      }
    CHECK(s["count"] == count);
    CHECK(s["failures"] == failures);
    CHECK(s["max"].get<double>() == mx);
  }
}

TEST_CASE("identical manifest and seed give identical reports") {
  const Manifest m = load_manifest("example2");
  const RunOptions opt{123u, 20, 0, {}};
  CHECK(emit_report(run_checks(m, opt), ReportFormat::Json) == emit_report(run_checks(m, opt), ReportFormat::Json));
  const RunOptions other{124u, 20, 0, {}};
  CHECK(emit_report(run_checks(m, opt), ReportFormat::Json) != emit_report(run_checks(m, other), ReportFormat::Json));
}

TEST_CASE("fnv1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
