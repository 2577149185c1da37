#pragma once

#include <iosfwd>
#include <vector>

#include "phm/geometry.hpp"
#include "phm/maps.hpp"
#include "phm/tensor.hpp"

namespace phm {

/// Samples of a map from the flat torus [0, 2π)^m into C^n on a uniform grid.
/// Node (j_1, ..., j_m) sits at x_a = 2π j_a / dims[a]; axis 0 varies fastest.
struct GridMap {
  std::vector<int> dims;
  MatrixXcd values;  // n × nodes

  GridMap() = default;
  GridMap(std::vector<int> dims, int cdim);

  int domain_dim() const { return static_cast<int>(dims.size()); }
  int cdim() const { return static_cast<int>(values.rows()); }
  int nodes() const { return static_cast<int>(values.cols()); }
  double spacing(int axis) const;
  double cell_volume() const;
  VectorXd coordinate(int node) const;
  /// Node reached from `node` by moving `step` cells along `axis`, wrapping.
  int neighbour(int node, int axis, int step) const;

  /// Evaluate φ at every node.
  static GridMap sample(const SmoothMap& phi, std::vector<int> dims);
};

struct FlowConfig {
  double dt = 1e-3;
  int max_steps = 1000;
  double stop_tol = 1e-6;
  bool energy_backtrack = true;

  /// Errors: ValidationError (dt ≤ 0, max_steps < 0, stop_tol < 0, or a flat
  /// target with dt at or above the explicit-Euler bound h²/(2m)).
  void validate(const GridMap& u, const HermitianMetricField& h) const;
};

struct FlowTraceEntry {
  int step = 0;
  double energy = 0.0;
  double max_tension = 0.0;
  double dt = 0.0;  // step size accepted to reach this state (0 for the initial state)
};

struct FlowResult {
  GridMap map;
  std::vector<FlowTraceEntry> trace;
  bool converged = false;
};

/// E = ½ Σ_nodes Σ_i h_{αβ̄}(u) ∂_i u^α conj(∂_i u^β) · cell volume, central differences.
double dirichlet_energy(const GridMap& u, const HermitianMetricField& h);

/// τ^α = Δu^α + Γ^α_{βγ}(u) Σ_i ∂_i u^β ∂_i u^γ with the compact (2m+1)-point
/// Laplacian and central first differences. Errors: TargetNotKaehler.
MatrixXcd discrete_tension(const GridMap& u, const HermitianMetricField& h);

/// Explicit Euler on ∂u/∂t = τ(u). A step that raises the energy is retried
/// with dt halved, at most 20 times. Errors: ValidationError, TargetNotKaehler,
/// StepSizeUnderflow.
FlowResult run_flow(const GridMap& u0, const HermitianMetricField& h, const FlowConfig& cfg);

/// Value, first and second derivatives at x of the trigonometric interpolant
/// of u (Nyquist modes split evenly between ±N/2).
DifferentialPoint interpolate(const GridMap& u, const VectorXd& x);

/// Text snapshot: a header block, then one line per node with the node
/// coordinates followed by re/im pairs of each component.
void write_snapshot(std::ostream& os, const GridMap& u);

}  // namespace phm
