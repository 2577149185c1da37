#include "phm/examples.hpp"

#include <string>

namespace phm {

namespace {

const Expr x(int k) { return Expr::var(k - 1); }
const Expr kI = Expr(Complex(0.0, 1.0));

std::vector<VectorXd> sample_points(Rng& rng, int dim, int count, double lo, double hi) {
  std::vector<VectorXd> pts;
  for (int i = 0; i < count; ++i) pts.push_back(rng.point(dim, lo, hi));
  return pts;
}

}  // namespace

SmoothMap example1() {
  const Expr z = x(1) + kI * x(2);
  return SmoothMap(2, {z, z, z});
}

SmoothMap example2() {
  const Expr w = kI * (x(1) + x(2)) + x(3) + x(4);
  return SmoothMap(4, {w, w});
}

std::vector<SuiteCase> standard_theorem_suite(Rng& rng, int composites, int points) {
  std::vector<SuiteCase> cases;
  cases.push_back({"example1", example1(), MetricField::euclidean(2), HermitianMetricField::flat(3),
                   sample_points(rng, 2, points, -1, 1)});
  cases.push_back({"example2", example2(), MetricField::euclidean(4), HermitianMetricField::flat(2),
                   sample_points(rng, 4, points, -1, 1)});
  for (int c = 0; c < composites; ++c) {
    const bool first = c % 2 == 0;
    const SmoothMap base = first ? example1() : example2();
    const int out = rng.integer(1, 3);
    const SmoothMap psi = random_holomorphic_map(rng, base.target_cdim(), out, 3);
    cases.push_back({std::string(first ? "example1" : "example2") + "-composite-" + std::to_string(c),
                     compose(psi, base), MetricField::euclidean(base.domain_dim()), HermitianMetricField::flat(out),
                     sample_points(rng, base.domain_dim(), points, -1, 1)});
  }
  const Expr z = x(1) + kI * x(2);
  const Expr warp = exp(Expr(2.0) * x(3));
  cases.push_back({"warped-harmonic", SmoothMap(3, {z}),
                   MetricField(3, {{warp, 0.0, 0.0}, {0.0, warp, 0.0}, {0.0, 0.0, 1.0}}),
                   HermitianMetricField::flat(1), sample_points(rng, 3, points, -1, 1)});
  cases.push_back({"stretched-fibre", SmoothMap(3, {z}),
                   MetricField(3, {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, Expr(1.0) + pow(x(1), 2)}}),
                   HermitianMetricField::flat(1), sample_points(rng, 3, points, -1, 1)});
  return cases;
}

SuiteCase forged_kaehler_control(Rng& rng, int points) {
  const Expr z = x(1) + kI * x(2);
  const HermitianMetricField h(2, {{Expr(1.0) + x(3), 0.0}, {0.0, 1.0}}, false);
  return {"forged-kaehler", SmoothMap(2, {z, z}), MetricField::euclidean(2), h.with_kaehler_flag(true),
          sample_points(rng, 2, points, -0.5, 0.5)};
}

}  // namespace phm
