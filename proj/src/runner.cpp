#include "phm/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "phm/error.hpp"
#include "phm/examples.hpp"
#include "phm/flow.hpp"
#include "phm/fstruct.hpp"
#include "phm/jet.hpp"

namespace phm {

using nlohmann::json;

namespace {

constexpr double kAngleTol = 1e-8;
constexpr double kKaehlerGate = 1e-10;

std::vector<double> as_vector(const VectorXd& p) { return {p.data(), p.data() + p.size()}; }

std::string describe(const Error& e) { return std::string(to_string(e.kind())) + ": " + e.what(); }

struct Outcome {
  double value = 0.0;
  json extra = json::object();
  bool extra_ok = true;  // conditions beyond value-vs-tol (fstructure rank and round trip)
};

// A user-supplied target claims to be Kähler; the checks that rely on the claim verify it at φ(p).
void require_kaehler_at(const Manifest& m, const VectorXd& p) {
  if (m.target.is_constant()) return;
  const double r = kaehler_residual(m.target, real_point(differential(m.map, p).value));
  if (r > kKaehlerGate) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", r);
    throw Error(ErrorKind::TargetNotKaehler, std::string("target is flagged Kaehler but its Kaehler residual is ") + buf);
  }
}

Outcome evaluate_check(const Manifest& m, const CheckSpec& c, double tol, const VectorXd& p, double h_step) {
  Outcome o;
  const std::string& n = c.name;
  if (n == "phwc") {
    o.value = phwc_residual_coord(m.map, m.metric, p);
  } else if (n == "isotropy") {
    o.value = isotropy_residual(m.map, m.metric, p);
  } else if (n == "commutator") {
    o.value = phwc_residual_commutator(m.map, m.metric, m.target, p);
  } else if (n == "hwc") {
    const HWCReport r = hwc_report(m.map, m.metric, m.target, p);
    o.value = r.defect;
    o.extra["lambda_sq"] = r.lambda_sq;
  } else if (n == "tension") {
    require_kaehler_at(m, p);
    o.value = tension(m.map, m.metric, m.target, p).harmonic_residual();
  } else if (n == "tension_lc") {
    o.value = tension_levi_civita(m.map, m.metric, m.target, p).harmonic_residual();
  } else if (n == "kaehler") {
    o.value = kaehler_residual(m.target, real_point(differential(m.map, p).value));
  } else if (n == "fstructure") {
    const MetricPoint mp = evaluate_metric(m.metric, p);
    const DifferentialPoint d = differential(m.map, p);
    const FStructurePoint fs = associated_f_structure_at(d.dphi, mp);
    const FAlgebraResiduals alg = f_algebra_residuals(fs, mp.g);
    const BijectionCheck bij = bijection_round_trip(fs, d.dphi, mp.g);
    o.value = alg.max();
    o.extra = {{"rank", fs.rank},
               {"isotropy", bij.isotropy},
               {"angle_covectors", bij.angle_covectors},
               {"angle_vectors", bij.angle_vectors},
               {"zero_part", d.dphi.size() ? (d.dphi * fs.Pzero).cwiseAbs().maxCoeff() : 0.0}};
    o.extra_ok = bij.isotropy <= tol && bij.angle_covectors <= kAngleTol && bij.angle_vectors <= kAngleTol;
    if (c.rank) {
      o.extra["expected_rank"] = *c.rank;
      o.extra_ok = o.extra_ok && fs.rank == *c.rank;
    }
  } else if (n == "f_holomorphy") {
    const FStructurePoint fs = associated_f_structure(m.map, m.metric, p);
    o.value = f_holomorphy_residual(m.map, fs, p);
    o.extra["zero_part"] = zero_part_residual(m.map, fs, p);
  } else if (n == "nijenhuis") {
    o.value = nijenhuis_residual(associated_f_field(m.map, m.metric), p, h_step);
  } else if (n == "parallel") {
    o.value = parallel_residual(associated_f_field(m.map, m.metric), m.metric, p, h_step);
  } else if (n == "domega12") {
    o.value = domega_12_residual(m.metric, associated_f_field(m.map, m.metric), p, h_step);
  } else if (n == "met") {
    o.value = met_residual(m.metric, associated_f_field(m.map, m.metric), p, h_step);
  } else if (n == "pluriharmonic") {
    const HermitianMetricField source = HermitianMetricField::flat(m.dim / 2);
    if (!m.target.is_constant()) require_kaehler_at(m, p);
    o.value = m.target.is_constant() ? pluriharmonic_residual(m.map, source, p)
                                     : pluriharmonic_residual(m.map, source, m.target, p);
  } else {
    throw Error(ErrorKind::ValidationError, "unknown check '" + n + "'");
  }
  return o;
}

std::vector<VectorXd> sample_points(const Manifest& m, Rng& rng, int count) {
  VectorXd lo(m.dim), hi(m.dim);
  for (int i = 0; i < m.dim; ++i) {
    lo(i) = m.sample.box[i].first;
    hi(i) = m.sample.box[i].second;
  }
  std::vector<VectorXd> pts;
  for (int k = 0; k < count; ++k) pts.push_back(rng.point(lo, hi));
  return pts;
}

std::uint64_t resolved_seed(const Manifest& m, const RunOptions& opt) {
  if (opt.seed) return *opt.seed;
  return m.sample.seed.value_or(0);
}

int resolved_count(const Manifest& m, const RunOptions& opt) {
  if (opt.points) return *opt.points;
  return std::max(m.sample.count, opt.minimum_points);
}

}  // namespace

Report run_checks(const Manifest& m, const RunOptions& opt) {
  Report rep;
  rep.provenance.manifest_hash = m.hash();
  rep.provenance.seed = resolved_seed(m, opt);
  Rng rng(rep.provenance.seed);
  double diam = 0.0;
  for (const auto& [lo, hi] : m.sample.box) diam += (hi - lo) * (hi - lo);
  const double h_step = 1e-4 * std::sqrt(diam);
  for (const VectorXd& p : sample_points(m, rng, resolved_count(m, opt))) {
    for (const CheckSpec& c : m.checks) {
      double tol = c.tol.value_or(default_tolerance(c.name));
      if (auto it = opt.tol.find(c.name); it != opt.tol.end()) tol = it->second;
      const Relation rel = c.negate ? Relation::Greater : Relation::LessEq;
      try {
        const Outcome o = evaluate_check(m, c, tol, p, h_step);
        Record r = make_record(as_vector(p), c.name, o.value, tol, rel, o.extra);
        r.pass = r.pass && o.extra_ok;
        rep.records.push_back(std::move(r));
      } catch (const Error& e) {
        rep.records.push_back(make_error_record(as_vector(p), c.name, tol, rel, describe(e)));
      }
    }
  }
  return rep;
}

Report run_manifest_flow(const Manifest& m, const RunOptions& opt) {
  if (!m.flow) throw Error(ErrorKind::ValidationError, "flow: manifest has no flow block");
  const FlowSpec& fs = *m.flow;
  Report rep;
  rep.provenance.manifest_hash = m.hash();
  rep.provenance.seed = resolved_seed(m, opt);
  const GridMap u0 = GridMap::sample(m.map, fs.dims);
  FlowResult res;
  try {
    res = run_flow(u0, m.target, fs.config);
  } catch (const Error& e) {
    rep.records.push_back(make_error_record({}, "flow/run", 0.0, Relation::Info, describe(e)));
    rep.records.back().pass = false;
    return rep;
  }
  double worst_rise = 0.0;
  for (size_t k = 0; k < res.trace.size(); ++k) {
    const FlowTraceEntry& t = res.trace[k];
    rep.trace.push_back({{"step", t.step}, {"energy", t.energy}, {"max_tension", t.max_tension}, {"dt", t.dt}});
    if (k > 0) worst_rise = std::max(worst_rise, t.energy - res.trace[k - 1].energy);
  }
  const double stop_tol = fs.config.stop_tol;
  rep.records.push_back(make_record({}, "flow/energy_monotone", worst_rise, 1e-12,
                                    fs.config.energy_backtrack ? Relation::LessEq : Relation::Info));
  rep.records.push_back(make_record({}, "flow/converged", res.trace.back().max_tension, stop_tol, Relation::LessEq,
                                    {{"steps", res.trace.back().step}}));

  Rng rng(rep.provenance.seed);
  const int count = opt.points.value_or(std::max(m.sample.count, 1));
  const MetricField flat = MetricField::euclidean(m.dim);
  for (int k = 0; k < count; ++k) {
    const VectorXd x = rng.point(m.dim, 0.0, 2.0 * M_PI);
    try {
      const DifferentialPoint d = interpolate(res.map, x);
      rep.records.push_back(make_record(as_vector(x), "flow/harmonic",
                                        tension_at(d, flat, m.target, x).harmonic_residual(), 10 * stop_tol));
      rep.records.push_back(make_record(as_vector(x), "flow/phwc",
                                        d.dphi.size() ? phwc_gram(d.dphi, MatrixXd::Identity(m.dim, m.dim))
                                                            .cwiseAbs()
                                                            .maxCoeff()
                                                      : 0.0,
                                        0.0, Relation::Info));
    } catch (const Error& e) {
      rep.records.push_back(make_error_record(as_vector(x), "flow/harmonic", 10 * stop_tol, Relation::LessEq,
                                              describe(e)));
    }
  }
  if (!fs.snapshot.empty()) {
    std::ofstream out(fs.snapshot);
    if (!out) throw Error(ErrorKind::ValidationError, "flow.snapshot: cannot write " + fs.snapshot);
    write_snapshot(out, res.map);
  }
  return rep;
}

namespace {

// Evaluate `fn` and append a record, turning library errors into failing records.
template <typename Fn>
void record(std::vector<Record>& out, const VectorXd& p, const std::string& check, double tol, Relation rel,
            json extra, Fn&& fn) {
  try {
    out.push_back(make_record(as_vector(p), check, fn(), tol, rel, std::move(extra)));
  } catch (const Error& e) {
    out.push_back(make_error_record(as_vector(p), check, tol, rel, describe(e)));
  }
}

SmoothMap conj_map(const SmoothMap& f) {
  std::vector<Expr> c;
  for (const Expr& e : f.components()) c.push_back(conj(e));
  return SmoothMap(f.domain_dim(), std::move(c));
}

}  // namespace

std::vector<Record> suite_examples(Rng& rng, int points) {
  std::vector<Record> out;
  const SmoothMap e1 = example1(), e2 = example2();
  const MetricField g2 = MetricField::euclidean(2), g4 = MetricField::euclidean(4);
  const HermitianMetricField h3 = HermitianMetricField::flat(3), h2 = HermitianMetricField::flat(2);
  for (int k = 0; k < points; ++k) {
    const VectorXd p = rng.point(2, -1, 1);
    record(out, p, "example1/phwc", 1e-12, Relation::LessEq, {}, [&] { return phwc_residual_coord(e1, g2, p); });
    record(out, p, "example1/tension", 1e-12, Relation::LessEq, {},
           [&] { return tension(e1, g2, h3, p).harmonic_residual(); });
    const HWCReport r = hwc_report(e1, g2, h3, p);
    out.push_back(make_record(as_vector(p), "example1/hwc_defect", r.defect, 0.5, Relation::Greater,
                              {{"lambda_sq", r.lambda_sq}}));
    record(out, p, "example1/f_holomorphy", 1e-10, Relation::LessEq, {},
           [&] { return f_holomorphy_residual(e1, associated_f_structure(e1, g2, p), p); });
  }
  for (int k = 0; k < points; ++k) {
    const VectorXd p = rng.point(4, -1, 1);
    record(out, p, "example2/phwc", 1e-12, Relation::LessEq, {}, [&] { return phwc_residual_coord(e2, g4, p); });
    record(out, p, "example2/tension", 1e-12, Relation::LessEq, {},
           [&] { return tension(e2, g4, h2, p).harmonic_residual(); });
    const HWCReport r = hwc_report(e2, g4, h2, p);
    out.push_back(make_record(as_vector(p), "example2/hwc_defect", r.defect, 1.0, Relation::GreaterEq,
                              {{"lambda_sq", r.lambda_sq}}));
    try {
      const FStructurePoint fs = associated_f_structure(e2, g4, p);
      out.push_back(make_record(as_vector(p), "example2/rank", fs.rank, 2.0, Relation::Equal));
      out.push_back(make_record(as_vector(p), "example2/zero_part", zero_part_residual(e2, fs, p), 1e-10));
      out.push_back(make_record(as_vector(p), "example2/f_holomorphy", f_holomorphy_residual(e2, fs, p), 1e-10));
    } catch (const Error& e) {
      out.push_back(make_error_record(as_vector(p), "example2/rank", 2.0, Relation::Equal, describe(e)));
    }
  }
  return out;
}

std::vector<Record> suite_equivalence(Rng& rng, int triples) {
  std::vector<Record> out;
  for (int t = 0; t < triples; ++t) {
    const int dim = rng.integer(2, 5);
    const int cdim = rng.integer(1, 3);
    const bool phwc_case = t % 2 == 0;
    SmoothMap phi(dim, {});
    MetricField g = MetricField::euclidean(dim);
    if (phwc_case) {
      PhwcSample s = random_phwc_sample(rng, dim, rng.integer(1, dim / 2), cdim, 3, t % 4 == 0);
      phi = std::move(s.map);
      g = std::move(s.g);
    } else {
      phi = random_generic_map(rng, dim, cdim);
      g = random_spd_metric(rng, dim);
    }
    const HermitianMetricField h = t % 3 == 0 ? HermitianMetricField::fubini_study(cdim) : HermitianMetricField::flat(cdim);
    const VectorXd p = rng.point(dim, -1, 1);
    const json extra = {{"triple", t}, {"constructed_phwc", phwc_case}};
    try {
      const double coord = phwc_residual_coord(phi, g, p);
      const double iso = isotropy_residual(phi, g, p);
      const double comm = phwc_residual_commutator(phi, g, h, p);
      json e = extra;
      e["coord"] = coord;
      e["isotropy"] = iso;
      out.push_back(make_record(as_vector(p), "equivalence/coord_vs_isotropy", std::abs(coord - iso), 1e-12,
                                Relation::LessEq, e));
      e["commutator"] = comm;
      const bool zero = coord <= 1e-8;
      out.push_back(make_record(as_vector(p), "equivalence/commutator", comm, 1e-8,
                                zero ? Relation::LessEq : Relation::Greater, e));
    } catch (const Error& e) {
      out.push_back(make_error_record(as_vector(p), "equivalence/coord_vs_isotropy", 1e-12, Relation::LessEq,
                                      describe(e)));
    }
  }
  return out;
}

std::vector<Record> suite_composition(Rng& rng, int maps, int points) {
  std::vector<Record> out;
  for (int j = 0; j < maps; ++j) {
    const bool first = j % 2 == 0;
    const SmoothMap base = first ? example1() : example2();
    const int outdim = rng.integer(1, 3);
    SmoothMap psi = random_holomorphic_map(rng, base.target_cdim(), outdim, 3);
    const bool anti = j % 4 == 3;
    if (anti) psi = conj_map(psi);
    // Every third composite lands in a Fubini–Study chart instead of flat C^r.
    const bool curved = j % 3 == 2;
    const HermitianMetricField target =
        curved ? HermitianMetricField::fubini_study(outdim) : HermitianMetricField::flat(outdim);
    const SmoothMap comp = compose(psi, base);
    const MetricField g = MetricField::euclidean(base.domain_dim());
    const json extra = {{"map", j}, {"base", first ? "example1" : "example2"}, {"antiholomorphic", anti},
                        {"target", curved ? "fubini_study" : "flat"}};
    for (int k = 0; k < points; ++k) {
      const VectorXd p = rng.point(base.domain_dim(), -1, 1);
      record(out, p, "composition/phwc", 1e-10, Relation::LessEq, extra,
             [&] { return phwc_residual_coord(comp, g, p); });
      record(out, p, "composition/tension", 1e-9, Relation::LessEq, extra,
             [&] { return tension(comp, g, target, p).harmonic_residual(); });
    }
  }
  // Control: ψ(w) = w1 + conj(w2) is neither holomorphic nor antiholomorphic.
  const SmoothMap psi(6, {Expr::complex_coord(0) + conj(Expr::complex_coord(1))});
  const SmoothMap comp = compose(psi, example1());
  for (int k = 0; k < points; ++k) {
    const VectorXd p = rng.point(2, -1, 1);
    record(out, p, "composition/control_phwc", 1e-3, Relation::Greater, {},
           [&] { return phwc_residual_coord(comp, MetricField::euclidean(2), p); });
  }
  return out;
}

std::vector<Record> suite_pullback(Rng& rng, int functions, int points) {
  std::vector<Record> out;
  const SmoothMap e1 = example1();
  const MetricField g = MetricField::euclidean(2);
  const HermitianMetricField flat3 = HermitianMetricField::flat(3);
  for (int j = 0; j < 2 * functions; ++j) {
    const bool holomorphic = j < functions;
    Expr f = random_holomorphic_polynomial(rng, 3, 3);
    std::string kind = "holomorphic";
    if (holomorphic && j % 2 == 1) {
      f = conj(f);
      kind = "antiholomorphic";
    } else if (!holomorphic) {
      f = re(f);
      kind = "pluriharmonic";
    }
    const SmoothMap fmap(6, {f});
    const Expr pulled = compose(fmap, e1)[0];
    const SmoothMap pulled_map(2, {pulled});
    const json extra = {{"function", j}, {"kind", kind}};
    const VectorXd w = rng.point(6, -1, 1);
    record(out, w, "pullback/input_pluriharmonic", 1e-10, Relation::LessEq, extra,
           [&] { return pluriharmonic_residual(fmap, flat3, w); });
    for (int k = 0; k < points; ++k) {
      const VectorXd p = rng.point(2, -1, 1);
      record(out, p, "pullback/laplacian", 1e-9, Relation::LessEq, extra,
             [&] { return std::abs(laplace_beltrami_complex(pulled, g, p)); });
      if (holomorphic)
        record(out, p, "pullback/hwc_defect", 1e-9, Relation::LessEq, extra,
               [&] { return hwc_report(pulled_map, g, HermitianMetricField::flat(1), p).defect; });
    }
  }
  // Witness for the converse: φ = x1 + 2i x2 is not PHWC and w² pulls back to
  // a non-harmonic function.
  const Expr phi = Expr::var(0) + Expr(Complex(0, 2)) * Expr::var(1);
  const Expr pulled = pow(phi, 2);
  for (int k = 0; k < points; ++k) {
    const VectorXd p = rng.point(2, -1, 1);
    record(out, p, "pullback/witness_nonphwc", 1e-3, Relation::Greater, {},
           [&] { return std::abs(laplace_beltrami_complex(pulled, g, p)); });
  }
  return out;
}

std::vector<Record> suite_fstructure(Rng& rng, int samples, int points) {
  std::vector<Record> out;
  struct Case {
    SmoothMap map;
    MetricField g;
    std::string name;
  };
  std::vector<Case> cases;
  cases.push_back({example1(), MetricField::euclidean(2), "example1"});
  cases.push_back({example2(), MetricField::euclidean(4), "example2"});
  for (int s = 0; s < samples; ++s) {
    const int dim = rng.integer(2, 6);
    PhwcSample ps = random_phwc_sample(rng, dim, rng.integer(1, dim / 2), rng.integer(1, 3), 3, s % 2 == 1);
    cases.push_back({std::move(ps.map), std::move(ps.g), "random-" + std::to_string(s)});
  }
  for (const Case& c : cases) {
    const json extra = {{"case", c.name}};
    for (int k = 0; k < points; ++k) {
      const VectorXd p = rng.point(c.map.domain_dim(), -1, 1);
      try {
        const MetricPoint mp = evaluate_metric(c.g, p);
        const DifferentialPoint d = differential(c.map, p);
        const FStructurePoint fs = associated_f_structure_at(d.dphi, mp);
        const FAlgebraResiduals alg = f_algebra_residuals(fs, mp.g);
        const BijectionCheck bij = bijection_round_trip(fs, d.dphi, mp.g);
        json e = extra;
        e["rank"] = fs.rank;
        const std::vector<double> pt = as_vector(p);
        out.push_back(make_record(pt, "fstructure/cubic", alg.cubic, 1e-10, Relation::LessEq, e));
        out.push_back(make_record(pt, "fstructure/skew", alg.skew, 1e-10, Relation::LessEq, e));
        out.push_back(make_record(pt, "fstructure/projectors", alg.projector, 1e-10, Relation::LessEq, e));
        out.push_back(make_record(pt, "fstructure/reality", alg.reality, 1e-12, Relation::LessEq, e));
        out.push_back(make_record(pt, "fstructure/round_trip_isotropy", bij.isotropy, 1e-10, Relation::LessEq, e));
        out.push_back(make_record(pt, "fstructure/round_trip_angle",
                                  std::max(bij.angle_covectors, bij.angle_vectors), kAngleTol, Relation::LessEq, e));
        out.push_back(make_record(pt, "fstructure/f_holomorphy", f_holomorphy_residual(c.map, fs, p), 1e-9,
                                  Relation::LessEq, e));
        out.push_back(
            make_record(pt, "fstructure/zero_part", zero_part_residual(c.map, fs, p), 1e-9, Relation::LessEq, e));
      } catch (const Error& e) {
        out.push_back(make_error_record(as_vector(p), "fstructure/cubic", 1e-10, Relation::LessEq, describe(e)));
      }
    }
  }
  return out;
}

namespace {

json sample_json(const SampleDiagnostics& s) {
  return {{"case", s.case_name},  {"point_index", s.point_index}, {"rank", s.rank},
          {"phwc", s.phwc},       {"harmonic", s.harmonic},       {"harmonic_kaehler", s.harmonic_kaehler},
          {"parallel", s.parallel}, {"nijenhuis", s.nijenhuis},   {"met", s.met},
          {"domega12", s.domega12}};
}

}  // namespace

std::vector<Record> suite_theorems(Rng& rng, int composites, int points) {
  std::vector<Record> out;
  const TheoremSuiteReport rep = theorem_suite(standard_theorem_suite(rng, composites, points));
  const json counts = {{"evaluated", rep.evaluated()},
                       {"skipped", rep.skipped()},
                       {"premise_parallel", rep.premise_parallel},
                       {"premise_prop", rep.premise_prop}};
  out.push_back(make_record({}, "theorem/counterexamples", static_cast<double>(rep.counterexamples.size()), 0.0,
                            Relation::LessEq, counts));
  for (const Counterexample& c : rep.counterexamples) {
    json e = sample_json(c.sample);
    e["theorem"] = c.theorem;
    out.push_back(make_record(as_vector(c.sample.point), "theorem/counterexample", c.sample.harmonic, 1e-6,
                              Relation::LessEq, e));
  }
  out.push_back(make_record({}, "theorem/evaluated", rep.evaluated(), 1.0, Relation::GreaterEq, counts));
  out.push_back(make_record({}, "theorem/premise_parallel", rep.premise_parallel, 1.0, Relation::GreaterEq));
  out.push_back(make_record({}, "theorem/premise_prop", rep.premise_prop, 1.0, Relation::GreaterEq));

  // Non-PHWC maps never enter the implications.
  SuiteCase gated{"non-phwc", SmoothMap(2, {Expr::var(0) + Expr(Complex(0, 2)) * Expr::var(1)}),
                  MetricField::euclidean(2), HermitianMetricField::flat(1), {}};
  for (int k = 0; k < points; ++k) gated.points.push_back(rng.point(2, -1, 1));
  const TheoremSuiteReport gate = theorem_suite({gated});
  out.push_back(make_record({}, "theorem/gate_skipped", gate.skipped(), static_cast<double>(points), Relation::Equal));

  const TheoremSuiteReport forged = theorem_suite({forged_kaehler_control(rng, points)});
  json fe = {{"evaluated", forged.evaluated()}};
  if (!forged.counterexamples.empty()) fe["first"] = sample_json(forged.counterexamples.front().sample);
  out.push_back(make_record({}, "theorem/forged_control_counterexamples",
                            static_cast<double>(forged.counterexamples.size()), 1.0, Relation::GreaterEq, fe));
  return out;
}

Report verify_paper(std::uint64_t seed) {
  Report rep;
  rep.provenance.manifest_hash = fnv1a_hex("verify-paper");
  rep.provenance.seed = seed;
  // Each suite draws from its own stream so that resizing one leaves the others unchanged.
  auto stream = [seed](std::uint64_t k) { return Rng(seed * 0x9e3779b97f4a7c15ULL + k); };
  auto append = [&rep](std::vector<Record> recs) {
    for (Record& r : recs) rep.records.push_back(std::move(r));
  };
  Rng r1 = stream(1), r2 = stream(2), r3 = stream(3), r4 = stream(4), r5 = stream(5), r6 = stream(6);
  append(suite_examples(r1, 100));
  append(suite_equivalence(r2, 200));
  append(suite_composition(r3, 20, 50));
  append(suite_pullback(r4, 20, 50));
  append(suite_fstructure(r5, 40, 5));
  append(suite_theorems(r6, 20, 10));
  return rep;
}

}  // namespace phm
