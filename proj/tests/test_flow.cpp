#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "phm/error.hpp"
#include "phm/flow.hpp"
#include "phm/parser.hpp"
#include "phm/random.hpp"

using namespace phm;

namespace {

const double kPi = std::acos(-1.0);

GridMap wave(int n) { return GridMap::sample(SmoothMap(2, {parse_expr("exp(i*x1)")}), {n, n}); }

double max_time_slope(const std::vector<FlowTraceEntry>& trace) {
  // Least-squares slope of log E against elapsed time.
  double t = 0.0, st = 0, se = 0, stt = 0, ste = 0;
  const double n = static_cast<double>(trace.size());
  for (const auto& e : trace) {
    t += e.dt;
    const double le = std::log(e.energy);
    st += t;
    se += le;
    stt += t * t;
    ste += t * le;
  }
  return (n * ste - st * se) / (n * stt - st * st);
}

}  // namespace

TEST_CASE("grid geometry") {
  const GridMap u({4, 8}, 1);
  CHECK(u.nodes() == 32);
  CHECK(u.spacing(0) == doctest::Approx(kPi / 2));
  CHECK(u.spacing(1) == doctest::Approx(kPi / 4));
  CHECK(u.cell_volume() == doctest::Approx(kPi * kPi / 8));
  CHECK(u.coordinate(5)(0) == doctest::Approx(kPi / 2));
  CHECK(u.coordinate(5)(1) == doctest::Approx(kPi / 4));
  CHECK(u.neighbour(0, 0, -1) == 3);
  CHECK(u.neighbour(3, 0, 1) == 0);
  CHECK(u.neighbour(0, 1, -1) == 28);
}

TEST_CASE("Dirichlet energy") {
  const HermitianMetricField flat = HermitianMetricField::flat(1);
  CHECK(dirichlet_energy(GridMap::sample(SmoothMap(2, {Expr(Complex(1, 2))}), {8, 8}), flat) == 0.0);
  const double exact = 2 * kPi * kPi;
  CHECK(std::abs(dirichlet_energy(wave(64), flat) / exact - 1.0) <= 0.005);
  const double e16 = std::abs(dirichlet_energy(wave(16), flat) - exact);
  const double e32 = std::abs(dirichlet_energy(wave(32), flat) - exact);
  const double e64 = std::abs(dirichlet_energy(wave(64), flat) - exact);
  CHECK(std::log2(e16 / e32) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::log2(e32 / e64) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("energy uses the target metric") {
  // h = 4 Id scales the energy by 4.
  const HermitianMetricField four(1, {{Expr(4.0)}}, true);
  const GridMap u = wave(16);
  CHECK(dirichlet_energy(u, four) == doctest::Approx(4.0 * dirichlet_energy(u, HermitianMetricField::flat(1))));
}

TEST_CASE("discrete tension") {
  const HermitianMetricField flat = HermitianMetricField::flat(1);
  const GridMap c = GridMap::sample(SmoothMap(2, {Expr(3.0)}), {8, 8});
  CHECK(discrete_tension(c, flat).cwiseAbs().maxCoeff() == 0.0);
  double prev = 0.0;
  for (int n : {16, 32, 64}) {
    const GridMap u = wave(n);
    const double err = (discrete_tension(u, flat) + u.values).cwiseAbs().maxCoeff();
    const double h = u.spacing(0);
    CHECK(err <= h * h / 12 * 1.001);
    if (prev > 0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.01));
    prev = err;
  }
}

TEST_CASE("flat tension is the five-point Laplacian") {
  Rng rng(3);
  GridMap u({12, 10}, 2);
  for (int k = 0; k < u.nodes(); ++k)
    for (int a = 0; a < 2; ++a) u.values(a, k) = rng.complex_uniform(1.0);
  const MatrixXcd tau = discrete_tension(u, HermitianMetricField::flat(2));
  const double hx = u.spacing(0), hy = u.spacing(1);
  double worst = 0.0;
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 12; ++i) {
      const int k = i + 12 * j;
      const int e = (i + 1) % 12 + 12 * j, w = (i + 11) % 12 + 12 * j;
      const int nn = i + 12 * ((j + 1) % 10), s = i + 12 * ((j + 9) % 10);
      for (int a = 0; a < 2; ++a) {
        const Complex lap = (u.values(a, e) - 2.0 * u.values(a, k) + u.values(a, w)) / (hx * hx) +
                            (u.values(a, nn) - 2.0 * u.values(a, k) + u.values(a, s)) / (hy * hy);
        worst = std::max(worst, std::abs(lap - tau(a, k)));
      }
    }
  CHECK(worst <= 1e-12);
}

TEST_CASE("tension requires a Kaehler-flagged target") {
  const GridMap u = wave(8);
  try {
    discrete_tension(u, HermitianMetricField::fubini_study(1).with_kaehler_flag(false));
    FAIL("expected TargetNotKaehler");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TargetNotKaehler);
  }
  CHECK_NOTHROW(discrete_tension(u, HermitianMetricField::fubini_study(1)));
}

TEST_CASE("flow configuration validation") {
  const GridMap u = wave(16);
  const HermitianMetricField flat = HermitianMetricField::flat(1);
  const double bound = u.spacing(0) * u.spacing(0) / 4;
  auto kind = [&](FlowConfig cfg) {
    try {
      cfg.validate(u, flat);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  FlowConfig cfg;
  CHECK_NOTHROW(cfg.validate(u, flat));
  cfg.dt = bound;
  CHECK(kind(cfg) == ErrorKind::ValidationError);
  cfg.dt = 0.0;
  CHECK(kind(cfg) == ErrorKind::ValidationError);
  cfg = FlowConfig{};
  cfg.max_steps = -1;
  CHECK(kind(cfg) == ErrorKind::ValidationError);
  cfg = FlowConfig{};
  cfg.stop_tol = -1e-3;
  CHECK(kind(cfg) == ErrorKind::ValidationError);
  CHECK_THROWS_AS(run_flow(u, flat, FlowConfig{bound * 1.5, 10, 1e-6, true}), Error);
}

TEST_CASE("a constant map is a fixed point") {
  const GridMap c = GridMap::sample(SmoothMap(2, {Expr(Complex(0.5, -1))}), {8, 8});
  FlowConfig cfg;
  cfg.max_steps = 1;
  cfg.stop_tol = 0.0;
  const FlowResult r = run_flow(c, HermitianMetricField::flat(1), cfg);
  CHECK(r.trace.size() == 2);
  CHECK(r.map.values == c.values);
  cfg.stop_tol = 1e-6;
  const FlowResult s = run_flow(c, HermitianMetricField::flat(1), cfg);
  CHECK(s.trace.size() == 1);
  CHECK(s.converged);
}

TEST_CASE("single-mode heat flow decays at rate two") {
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.max_steps = 1000;
  cfg.stop_tol = 0.0;
  const FlowResult r = run_flow(wave(64), HermitianMetricField::flat(1), cfg);
  CHECK(r.trace.size() == 1001);
  CHECK(max_time_slope(r.trace) == doctest::Approx(-2.0).epsilon(0.05));
  for (size_t k = 1; k < r.trace.size(); ++k) {
    CHECK(r.trace[k].energy <= r.trace[k - 1].energy + 1e-12);
    CHECK(r.trace[k].dt == cfg.dt);
  }
  CHECK(r.map.values.cwiseAbs().maxCoeff() < std::exp(-0.99));
}

TEST_CASE("flat flow matches the modal oracle") {
  // Mode e^{i k·x} is an eigenvector of the compact Laplacian with eigenvalue
  // −Σ 4 sin²(k_a h/2)/h², so each Euler step multiplies it by 1 − dt λ.
  Rng rng(8);
  const int n = 8;
  const double h = 2 * kPi / n;
  std::vector<std::pair<std::array<int, 2>, Complex>> modes;
  for (int t = 0; t < 6; ++t) modes.push_back({{rng.integer(-3, 4), rng.integer(-3, 4)}, rng.complex_uniform(1.0)});
  auto field = [&](int steps, double dt) {
    GridMap u({n, n}, 1);
    for (int node = 0; node < u.nodes(); ++node) {
      const VectorXd x = u.coordinate(node);
      Complex v = 0.0;
      for (const auto& [k, c] : modes) {
        const double lambda =
            4 * std::pow(std::sin(k[0] * h / 2), 2) / (h * h) + 4 * std::pow(std::sin(k[1] * h / 2), 2) / (h * h);
        v += c * std::pow(1.0 - dt * lambda, steps) * std::exp(Complex(0, k[0] * x(0) + k[1] * x(1)));
      }
      u.values(0, node) = v;
    }
    return u;
  };
  FlowConfig cfg;
  cfg.dt = 0.05;
  cfg.max_steps = 40;
  cfg.stop_tol = 0.0;
  const FlowResult r = run_flow(field(0, cfg.dt), HermitianMetricField::flat(1), cfg);
  CHECK((r.map.values - field(40, cfg.dt).values).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("flow into Fubini-Study decreases the energy") {
  Rng rng(12);
  GridMap u({16, 16}, 1);
  for (int node = 0; node < u.nodes(); ++node) {
    const VectorXd x = u.coordinate(node);
    u.values(0, node) = 0.8 * std::exp(Complex(0, x(0))) + 0.3 * std::cos(x(1)) + 0.05 * rng.complex_uniform(1.0);
  }
  FlowConfig cfg;
  cfg.dt = 0.02;
  cfg.max_steps = 300;
  cfg.stop_tol = 1e-8;
  const FlowResult r = run_flow(u, HermitianMetricField::fubini_study(1), cfg);
  for (size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].energy <= r.trace[k - 1].energy + 1e-12);
  CHECK(r.trace.back().energy < 0.5 * r.trace.front().energy);
}

TEST_CASE("converged maps are harmonic between the nodes") {
  Rng rng(44);
  const int n = 16;
  GridMap u({n, n}, 2);
  for (int node = 0; node < u.nodes(); ++node) {
    const VectorXd x = u.coordinate(node);
    u.values(0, node) = std::exp(Complex(0, x(0) + x(1))) + 0.2 * rng.complex_uniform(1.0);
    u.values(1, node) = std::sin(2 * x(1)) + 0.2 * rng.complex_uniform(1.0);
  }
  FlowConfig cfg;
  cfg.dt = 0.9 * std::pow(2 * kPi / n, 2) / 4;
  cfg.max_steps = 20000;
  cfg.stop_tol = 1e-6;
  const HermitianMetricField flat = HermitianMetricField::flat(2);
  const FlowResult r = run_flow(u, flat, cfg);
  REQUIRE(r.converged);
  CHECK(r.trace.back().max_tension < cfg.stop_tol);
  const MetricField g = MetricField::euclidean(2);
  for (int t = 0; t < 20; ++t) {
    const VectorXd x = rng.point(2, 0, 2 * kPi);
    CHECK(tension_at(interpolate(r.map, x), g, flat, x).harmonic_residual() <= 10 * cfg.stop_tol);
  }
}

TEST_CASE("trigonometric interpolation reproduces band-limited maps") {
  const SmoothMap phi(2, {parse_expr("exp(i*(x1 + 2*x2)) + 0.5*cos(3*x1)"), parse_expr("sin(x2)*cos(x1)")});
  const GridMap u = GridMap::sample(phi, {12, 16});
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const VectorXd x = rng.point(2, 0, 2 * kPi);
    const DifferentialPoint a = interpolate(u, x), b = differential(phi, x);
    CHECK((a.value - b.value).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((a.dphi - b.dphi).cwiseAbs().maxCoeff() <= 1e-11);
    for (int c = 0; c < 2; ++c) CHECK((a.second[c] - b.second[c]).cwiseAbs().maxCoeff() <= 1e-10);
  }
  // At a node the interpolant returns the sample.
  CHECK((interpolate(u, u.coordinate(37)).value - u.values.col(37)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("snapshot format") {
  const GridMap u = GridMap::sample(SmoothMap(2, {parse_expr("x1 + i*x2"), parse_expr("1")}), {3, 4});
  std::ostringstream os;
  write_snapshot(os, u);
  std::istringstream is(os.str());
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  REQUIRE(lines.size() == 4 + 12);
  CHECK(lines[0] == "# phm grid snapshot v1");
  CHECK(lines[1] == "# dims 3 4");
  CHECK(lines[2] == "# cdim 2");
  CHECK(lines[3].rfind("# ", 0) == 0);
  std::istringstream row(lines[4 + 8]);
  double x1, x2, re1, im1, re2, im2;
  row >> x1 >> x2 >> re1 >> im1 >> re2 >> im2;
  CHECK(x1 == doctest::Approx(4 * kPi / 3));
  CHECK(x2 == doctest::Approx(kPi));
  CHECK(re1 == x1);
  CHECK(im1 == x2);
  CHECK(re2 == 1.0);
  CHECK(im2 == 0.0);
}
