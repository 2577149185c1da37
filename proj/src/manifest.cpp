#include "phm/manifest.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "phm/error.hpp"
#include "phm/jet.hpp"
#include "phm/parser.hpp"
#include "phm/report.hpp"

namespace phm {

using nlohmann::json;

namespace {

const std::map<std::string, double>& tolerance_table() {
  static const std::map<std::string, double> table = {
      {"phwc", 1e-10},       {"isotropy", 1e-10}, {"commutator", 1e-10}, {"hwc", 1e-8},
      {"tension", 1e-10},    {"tension_lc", 1e-10}, {"kaehler", 1e-10},  {"fstructure", 1e-10},
      {"f_holomorphy", 1e-10}, {"nijenhuis", 1e-6}, {"parallel", 1e-6},   {"domega12", 1e-6},
      {"met", 1e-6},         {"pluriharmonic", 1e-10},
  };
  return table;
}

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ValidationError, path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) invalid(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) invalid(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

int positive_int(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 1) invalid(path, "expected a positive integer");
  return v.get<int>();
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) invalid(path, "expected a number");
  return v.get<double>();
}

Expr expression(const json& v, const std::string& path) {
  if (v.is_number()) return Expr(v.get<double>());
  if (!v.is_string()) invalid(path, "expected an expression string");
  try {
    return parse_expr(v.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

std::vector<std::vector<Expr>> expression_matrix(const json& v, int size, const std::string& path) {
  if (!v.is_array() || static_cast<int>(v.size()) != size)
    invalid(path, "expected a " + std::to_string(size) + "x" + std::to_string(size) + " matrix");
  std::vector<std::vector<Expr>> out(size);
  for (int i = 0; i < size; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != size)
      invalid(row_path, "expected " + std::to_string(size) + " entries");
    for (int j = 0; j < size; ++j) out[i].push_back(expression(v[i][j], row_path + "[" + std::to_string(j) + "]"));
  }
  return out;
}

void require_vars(const Expr& e, int limit, const std::string& path) {
  if (e.num_vars() > limit)
    invalid(path, "uses x" + std::to_string(e.num_vars()) + " but only " + std::to_string(limit) +
                      " coordinates are available");
}

// Manifest matrices list every entry; the library reads the upper triangle,
// so the lower one must agree with it (checked at a reference point).
void require_symmetric(const std::vector<std::vector<Expr>>& m, const VectorXd& at, bool hermitian,
                       const std::string& path) {
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const Complex lower = eval_value(m[i][j], at);
      Complex upper = eval_value(m[j][i], at);
      if (hermitian) upper = std::conj(upper);
      if (std::abs(lower - upper) > 1e-12 * std::max(1.0, std::abs(upper)))
        invalid(path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                hermitian ? "matrix is not Hermitian" : "matrix is not symmetric");
    }
  }
}

CheckSpec check_spec(const json& v, const std::string& path) {
  CheckSpec c;
  if (v.is_string()) {
    c.name = v.get<std::string>();
  } else if (v.is_object()) {
    c.name = field(v, "name", path).is_string() ? v["name"].get<std::string>() : "";
    if (v.contains("tol")) c.tol = number(v["tol"], path + ".tol");
    if (v.contains("negate")) {
      if (!v["negate"].is_boolean()) invalid(path + ".negate", "expected a boolean");
      c.negate = v["negate"].get<bool>();
    }
    if (v.contains("rank")) {
      if (!v["rank"].is_number_integer()) invalid(path + ".rank", "expected an integer");
      c.rank = v["rank"].get<int>();
    }
    for (const auto& [key, _] : v.items())
      if (key != "name" && key != "tol" && key != "negate" && key != "rank") invalid(path + "." + key, "unknown field");
  } else {
    invalid(path, "expected a check name or object");
  }
  if (!tolerance_table().count(c.name)) {
    std::string valid;
    for (const auto& n : check_names()) valid += (valid.empty() ? "" : ", ") + n;
    invalid(path, "unknown check '" + c.name + "'; valid checks: " + valid);
  }
  if (c.rank && c.name != "fstructure") invalid(path + ".rank", "only the fstructure check takes a rank");
  return c;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "phwc",         "isotropy",  "commutator", "hwc",      "tension", "tension_lc", "kaehler",
      "fstructure",   "f_holomorphy", "nijenhuis", "parallel", "domega12", "met",      "pluriharmonic"};
  return names;
}

double default_tolerance(const std::string& check) {
  auto it = tolerance_table().find(check);
  if (it == tolerance_table().end()) throw Error(ErrorKind::ValidationError, "unknown check '" + check + "'");
  return it->second;
}

std::string Manifest::hash() const { return fnv1a_hex(source.dump()); }

Manifest parse_manifest(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line and column.
    const size_t at = e.byte > 0 ? e.byte - 1 : 0;
    int line = 1, col = 1;
    for (size_t k = 0; k < at && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed manifest JSON");
  }
  if (!doc.is_object()) invalid("(root)", "expected an object");
  for (const auto& [key, _] : doc.items())
    if (key != "name" && key != "domain" && key != "target" && key != "map" && key != "checks" && key != "sample" &&
        key != "flow")
      invalid(key, "unknown field");

  Manifest m;
  m.source = doc;
  m.name = doc.value("name", std::string("manifest"));

  const json& domain = field(doc, "domain", "");
  m.dim = positive_int(field(domain, "dim", "domain"), "domain.dim");
  const json& metric = field(domain, "metric", "domain");

  const json& target = field(doc, "target", "");
  m.cdim = positive_int(field(target, "cdim", "target"), "target.cdim");

  const json& map = field(doc, "map", "");
  const json& comps = field(map, "components", "map");
  if (!comps.is_array()) invalid("map.components", "expected a list of expression strings");
  if (static_cast<int>(comps.size()) != m.cdim)
    invalid("map.components", "has " + std::to_string(comps.size()) + " entries but target.cdim is " +
                                  std::to_string(m.cdim));
  std::vector<Expr> exprs;
  for (size_t a = 0; a < comps.size(); ++a) {
    const std::string path = "map.components[" + std::to_string(a) + "]";
    exprs.push_back(expression(comps[a], path));
    require_vars(exprs.back(), m.dim, path);
  }
  m.map = SmoothMap(m.dim, exprs);

  // Sample block first: the box centre is the reference point for symmetry checks.
  if (doc.contains("sample")) {
    const json& s = doc["sample"];
    if (!s.is_object()) invalid("sample", "expected an object");
    if (s.contains("count")) {
      if (!s["count"].is_number_integer() || s["count"].get<long long>() < 0)
        invalid("sample.count", "expected a non-negative integer");
      m.sample.count = s["count"].get<int>();
    }
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) invalid("sample.seed", "expected a non-negative integer");
      m.sample.seed = s["seed"].get<std::uint64_t>();
    }
    if (s.contains("box")) {
      const json& box = s["box"];
      if (!box.is_array() || static_cast<int>(box.size()) != m.dim)
        invalid("sample.box", "expected " + std::to_string(m.dim) + " intervals (one per domain axis)");
      for (size_t i = 0; i < box.size(); ++i) {
        const std::string path = "sample.box[" + std::to_string(i) + "]";
        if (!box[i].is_array() || box[i].size() != 2) invalid(path, "expected [lo, hi]");
        const double lo = number(box[i][0], path + "[0]"), hi = number(box[i][1], path + "[1]");
        if (!(lo < hi)) invalid(path, "lower bound must be below upper bound");
        m.sample.box.emplace_back(lo, hi);
      }
    }
  }
  if (m.sample.box.empty()) m.sample.box.assign(m.dim, {-1.0, 1.0});
  VectorXd centre(m.dim);
  for (int i = 0; i < m.dim; ++i) centre(i) = 0.5 * (m.sample.box[i].first + m.sample.box[i].second);

  if (metric.is_string()) {
    if (metric.get<std::string>() != "euclidean")
      invalid("domain.metric", "unknown builtin '" + metric.get<std::string>() + "'; valid builtins: euclidean");
    m.metric = MetricField::euclidean(m.dim);
  } else {
    const auto grid = expression_matrix(metric, m.dim, "domain.metric");
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j)
        require_vars(grid[i][j], m.dim, "domain.metric[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    require_symmetric(grid, centre, false, "domain.metric");
    m.metric = MetricField(m.dim, grid);
  }

  const json& herm = field(target, "hermitian", "target");
  std::optional<bool> kaehler;
  if (target.contains("kaehler")) {
    if (!target["kaehler"].is_boolean()) invalid("target.kaehler", "expected a boolean");
    kaehler = target["kaehler"].get<bool>();
  }
  if (herm.is_string()) {
    const std::string name = herm.get<std::string>();
    if (name == "flat") m.target = HermitianMetricField::flat(m.cdim);
    else if (name == "fubini_study") m.target = HermitianMetricField::fubini_study(m.cdim);
    else invalid("target.hermitian", "unknown builtin '" + name + "'; valid builtins: flat, fubini_study");
    if (kaehler) m.target = m.target.with_kaehler_flag(*kaehler);
  } else {
    if (!kaehler) invalid("target.kaehler", "required when target.hermitian is a matrix");
    const auto grid = expression_matrix(herm, m.cdim, "target.hermitian");
    for (int i = 0; i < m.cdim; ++i)
      for (int j = 0; j < m.cdim; ++j)
        require_vars(grid[i][j], 2 * m.cdim,
                     "target.hermitian[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    const DifferentialPoint d = differential(m.map, centre);
    require_symmetric(grid, real_point(d.value), true, "target.hermitian");
    m.target = HermitianMetricField(m.cdim, grid, *kaehler);
  }

  if (doc.contains("checks")) {
    const json& checks = doc["checks"];
    if (!checks.is_array()) invalid("checks", "expected a list");
    for (size_t k = 0; k < checks.size(); ++k)
      m.checks.push_back(check_spec(checks[k], "checks[" + std::to_string(k) + "]"));
  }
  for (size_t k = 0; k < m.checks.size(); ++k)
    if (m.checks[k].name == "pluriharmonic" && m.dim % 2 != 0)
      invalid("checks[" + std::to_string(k) + "]", "pluriharmonic needs an even-dimensional (complex) domain");

  if (m.sample.count > 0 && !m.sample.seed) invalid("sample.seed", "required when sample.count > 0");

  if (doc.contains("flow")) {
    const json& f = doc["flow"];
    if (!f.is_object()) invalid("flow", "expected an object");
    FlowSpec fs;
    const json& dims = field(f, "dims", "flow");
    if (!dims.is_array() || static_cast<int>(dims.size()) != m.dim)
      invalid("flow.dims", "expected " + std::to_string(m.dim) + " grid sizes (one per domain axis)");
    for (size_t i = 0; i < dims.size(); ++i) {
      const int n = positive_int(dims[i], "flow.dims[" + std::to_string(i) + "]");
      if (n < 3) invalid("flow.dims[" + std::to_string(i) + "]", "at least 3 nodes per axis");
      fs.dims.push_back(n);
    }
    if (f.contains("dt")) fs.config.dt = number(f["dt"], "flow.dt");
    if (f.contains("max_steps")) {
      if (!f["max_steps"].is_number_integer()) invalid("flow.max_steps", "expected an integer");
      fs.config.max_steps = f["max_steps"].get<int>();
    }
    if (f.contains("stop_tol")) fs.config.stop_tol = number(f["stop_tol"], "flow.stop_tol");
    if (f.contains("energy_backtrack")) {
      if (!f["energy_backtrack"].is_boolean()) invalid("flow.energy_backtrack", "expected a boolean");
      fs.config.energy_backtrack = f["energy_backtrack"].get<bool>();
    }
    if (f.contains("snapshot")) {
      if (!f["snapshot"].is_string()) invalid("flow.snapshot", "expected a path string");
      fs.snapshot = f["snapshot"].get<std::string>();
    }
    if (!m.metric.is_constant() || !metric.is_string())
      invalid("domain.metric", "the flow runs on the flat torus; use the builtin 'euclidean'");
    m.flow = fs;
  }
  return m;
}

std::string builtin_manifest(const std::string& name) {
  if (name == "example1")
    return R"({
  "name": "example1",
  "domain": {"dim": 2, "metric": "euclidean"},
  "target": {"cdim": 3, "hermitian": "flat", "kaehler": true},
  "map": {"components": ["x1 + i*x2", "x1 + i*x2", "x1 + i*x2"]},
  "checks": ["phwc", "tension", {"name": "hwc", "tol": 0.5, "negate": true}],
  "sample": {"count": 100, "seed": 42, "box": [[-1, 1], [-1, 1]]}
}
)";
  if (name == "example2")
    return R"({
  "name": "example2",
  "domain": {"dim": 4, "metric": "euclidean"},
  "target": {"cdim": 2, "hermitian": "flat", "kaehler": true},
  "map": {"components": ["i*(x1 + x2) + x3 + x4", "i*(x1 + x2) + x3 + x4"]},
  "checks": ["phwc", "tension", {"name": "hwc", "tol": 1, "negate": true}, {"name": "fstructure", "rank": 2}],
  "sample": {"count": 100, "seed": 42, "box": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]]}
}
)";
  return {};
}

Manifest load_manifest(const std::string& name_or_path) {
  std::ifstream in(name_or_path);
  if (!in) {
    const std::string text = builtin_manifest(name_or_path);
    if (text.empty())
      throw Error(ErrorKind::ValidationError,
                  name_or_path + ": no such file and not a builtin manifest (example1, example2)");
    return parse_manifest(text);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

}  // namespace phm
