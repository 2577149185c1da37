#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "phm/error.hpp"
#include "phm/manifest.hpp"
#include "phm/report.hpp"
#include "phm/runner.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kSweepMinimum = 1000;

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
  std::vector<std::string> tol;
  std::string out;
  std::string format = "table";
};

void add_common(CLI::App* cmd, Common& c, bool with_points) {
  cmd->add_option("--seed", c.seed, "Sampling seed (overrides the manifest)");
  if (with_points) cmd->add_option("--points", c.points, "Number of sample points")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tol", c.tol, "Tolerance override, check=value (repeatable)");
  cmd->add_option("--out", c.out, "Write the report here instead of stdout");
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "table"}));
}

phm::RunOptions options_from(const Common& c) {
  phm::RunOptions opt;
  opt.seed = c.seed;
  opt.points = c.points;
  for (const std::string& item : c.tol) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw phm::Error(phm::ErrorKind::ValidationError, "--tol expects check=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    phm::default_tolerance(name);  // rejects unknown names
    try {
      size_t used = 0;
      const double v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
      opt.tol[name] = v;
    } catch (const std::logic_error&) {
      throw phm::Error(phm::ErrorKind::ValidationError, "--tol " + name + ": not a number");
    }
  }
  return opt;
}

int emit(const phm::Report& r, const Common& c) {
  const std::string text = phm::emit_report(r, phm::format_from_string(c.format));
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw phm::Error(phm::ErrorKind::ValidationError, "--out: cannot write " + c.out);
    f << text;
  }
  return r.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for pseudo horizontally weakly conformal maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", phm::kToolVersion);

  Common check_opts, sweep_opts, flow_opts, paper_opts, report_opts;
  std::string check_manifest, sweep_manifest, flow_manifest, report_input;

  auto* check = app.add_subcommand("check", "Evaluate manifest checks at sampled points");
  check->add_option("manifest", check_manifest, "Manifest file or builtin name (example1, example2)")->required();
  add_common(check, check_opts, true);

  auto* sweep = app.add_subcommand("sweep", "Like check, with at least 1000 points unless --points is given");
  sweep->add_option("manifest", sweep_manifest, "Manifest file or builtin name")->required();
  add_common(sweep, sweep_opts, true);

  auto* flow = app.add_subcommand("flow", "Run the manifest's gradient flow and screen the result");
  flow->add_option("manifest", flow_manifest, "Manifest file with a flow block")->required();
  add_common(flow, flow_opts, true);

  auto* paper = app.add_subcommand("verify-paper", "Run the example regressions and all property suites");
  add_common(paper, paper_opts, false);

  auto* report = app.add_subcommand("report", "Re-emit a saved JSON report in another format");
  report->add_option("input", report_input, "JSON report file")->required();
  add_common(report, report_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*check) return emit(phm::run_checks(phm::load_manifest(check_manifest), options_from(check_opts)), check_opts);
    if (*sweep) {
      phm::RunOptions opt = options_from(sweep_opts);
      opt.minimum_points = kSweepMinimum;
      return emit(phm::run_checks(phm::load_manifest(sweep_manifest), opt), sweep_opts);
    }
    if (*flow)
      return emit(phm::run_manifest_flow(phm::load_manifest(flow_manifest), options_from(flow_opts)), flow_opts);
    if (*paper) {
      options_from(paper_opts);
      return emit(phm::verify_paper(paper_opts.seed.value_or(42)), paper_opts);
    }
    if (*report) {
      std::ifstream in(report_input);
      if (!in) throw phm::Error(phm::ErrorKind::ValidationError, report_input + ": cannot read");
      std::stringstream ss;
      ss << in.rdbuf();
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(ss.str());
      } catch (const nlohmann::json::parse_error& e) {
        throw phm::Error(phm::ErrorKind::ParseError, report_input + ": " + e.what());
      }
      return emit(phm::report_from_json(j), report_opts);
    }
  } catch (const phm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool usage = e.kind() == phm::ErrorKind::ParseError || e.kind() == phm::ErrorKind::ValidationError;
    return usage ? kExitUsage : kExitFail;
  }
  return kExitUsage;
}
