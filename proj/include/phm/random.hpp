#pragma once

#include <cstdint>
#include <random>

#include "phm/expr.hpp"
#include "phm/geometry.hpp"
#include "phm/maps.hpp"
#include "phm/tensor.hpp"

namespace phm {

/// Seeded generator whose outputs are identical on every platform: the
/// engine is fully specified by the standard, and the distributions are
/// implemented here rather than taken from <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double normal();
  Complex complex_uniform(double radius) { return {uniform(-radius, radius), uniform(-radius, radius)}; }
  VectorXd point(const VectorXd& lo, const VectorXd& hi);
  VectorXd point(int dim, double lo, double hi);
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Random expression tree in `vars` real variables mixing every operation of
/// the grammar. Denominators and negative powers are kept away from zero.
Expr random_expression(Rng& rng, int vars, int depth);

/// Holomorphic polynomial in the interleaved coordinates of C^cdim.
Expr random_holomorphic_polynomial(Rng& rng, int cdim, int degree);
/// Components are independent holomorphic polynomials: C^cdim → C^out.
SmoothMap random_holomorphic_map(Rng& rng, int cdim, int out, int degree);

/// g = Id + BᵀB with B affine in x: SPD everywhere.
MetricField random_spd_metric(Rng& rng, int dim);

/// Orthogonal m×m matrix (QR of a Gaussian matrix, signs normalized).
MatrixXd random_orthogonal(Rng& rng, int m);

/// A PHWC map with its metric: φ = ψ(a_1·Ax, ..., a_k·Ax) with isotropic a_j,
/// metric g = e^{2σ(x)} AᵀA (σ affine, or 0 when `conformal` is false).
struct PhwcSample {
  SmoothMap map;
  MetricField g;
};
PhwcSample random_phwc_sample(Rng& rng, int dim, int k, int out, int degree, bool conformal);

/// A generic complex polynomial map of degree ≤ 2 (almost surely not PHWC).
SmoothMap random_generic_map(Rng& rng, int dim, int out);

}  // namespace phm
