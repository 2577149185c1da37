#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "phm/flow.hpp"
#include "phm/geometry.hpp"
#include "phm/maps.hpp"

namespace phm {

/// Names accepted in a manifest's `checks` list, in documentation order.
const std::vector<std::string>& check_names();
/// Tolerance used when neither the manifest nor the command line gives one.
double default_tolerance(const std::string& check);

struct CheckSpec {
  std::string name;
  std::optional<double> tol;
  bool negate = false;          // pass iff value > tol
  std::optional<int> rank;      // fstructure only: required rank of F
};

struct SampleSpec {
  int count = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<double, double>> box;  // one interval per domain axis
};

struct FlowSpec {
  std::vector<int> dims;
  FlowConfig config;
  std::string snapshot;  // optional output path for the final grid
};

struct Manifest {
  std::string name;
  int dim = 0;
  int cdim = 0;
  MetricField metric = MetricField::euclidean(1);
  HermitianMetricField target = HermitianMetricField::flat(1);
  SmoothMap map = SmoothMap(0, {});
  std::vector<CheckSpec> checks;
  SampleSpec sample;
  std::optional<FlowSpec> flow;
  nlohmann::json source;  // the validated document, keys sorted

  /// Hash of the canonical (sorted-key, compact) document.
  std::string hash() const;
};

/// Errors: ParseError (malformed JSON or expression, with line and column),
/// ValidationError (with the offending field path).
Manifest parse_manifest(const std::string& text);

/// Text of a built-in manifest ("example1", "example2"), or empty.
std::string builtin_manifest(const std::string& name);

/// Built-in name or a file path. Errors: ValidationError for unreadable files.
Manifest load_manifest(const std::string& name_or_path);

}  // namespace phm
