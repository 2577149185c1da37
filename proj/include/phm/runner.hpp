#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phm/manifest.hpp"
#include "phm/random.hpp"
#include "phm/report.hpp"

namespace phm {

struct RunOptions {
  std::optional<std::uint64_t> seed;      // overrides sample.seed
  std::optional<int> points;              // overrides sample.count
  int minimum_points = 0;                 // floor applied when `points` is unset (sweep)
  std::map<std::string, double> tol;      // per-check overrides
};

/// Evaluate every manifest check at seeded uniform points of the sample box.
/// Operation errors become failing records; they never abort the sweep.
Report run_checks(const Manifest& m, const RunOptions& opt = {});

/// Run the manifest's flow block from the map sampled on the torus grid and
/// screen the result at seeded interpolation points.
Report run_manifest_flow(const Manifest& m, const RunOptions& opt = {});

/// Individual regression suites; check names are prefixed with the suite name.
std::vector<Record> suite_examples(Rng& rng, int points);
std::vector<Record> suite_equivalence(Rng& rng, int triples);
std::vector<Record> suite_composition(Rng& rng, int maps, int points);
std::vector<Record> suite_pullback(Rng& rng, int functions, int points);
std::vector<Record> suite_fstructure(Rng& rng, int samples, int points);
std::vector<Record> suite_theorems(Rng& rng, int composites, int points);

/// All suites above with their standard sizes, each from its own stream derived from `seed`.
Report verify_paper(std::uint64_t seed);

}  // namespace phm
