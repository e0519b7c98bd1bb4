#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "v1sim/experiments/csv.h"
#include "v1sim/experiments/experiments.h"
#include "v1sim/sim/errors.h"

namespace fs = std::filesystem;
using namespace v1sim;
using namespace v1sim::experiments;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAudit = 2;
constexpr int kExitNotConverged = 3;

struct Options {
  std::string config;
  std::vector<std::string> overrides;
  std::string out = "out";
  unsigned jobs = 1;
};

bool load(const Options& o, ScenarioConfig& cfg) {
  const std::string source = o.config.empty() ? "defaults" : o.config;
  ParseResult r = o.config.empty() ? parse_config("", o.overrides) : load_config(o.config, o.overrides);
  for (const auto& d : r.diagnostics) std::cerr << format_diagnostic(d, d.line == 0 && !d.key.empty() ? "--set" : source) << '\n';
  if (!r.ok()) return false;
  cfg = std::move(r.config);
  return true;
}

void write_file(const fs::path& dir, const std::string& name, const std::string& body) {
  fs::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  f << body;
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", (dir / name).string()));
  std::cout << "wrote " << (dir / name).string() << '\n';
}

int run_experiment(const std::string& which, const Options& o) {
  ScenarioConfig cfg;
  if (!load(o, cfg)) return kExitConfig;
  const fs::path out(o.out);
  int code = kExitOk;
  std::cout << "config " << config_hash(cfg) << " seed " << cfg.seed << '\n';
  if (which == "fig3" || which == "all") {
    auto rows = run_fig3(cfg, o.jobs);
    write_file(out, "fig3.csv", fig3_csv(cfg, rows));
    std::cout << fig3_summary_text(rows);
  }
  if (which == "fig4" || which == "all") {
    auto runs = run_fig4(cfg, o.jobs);
    write_file(out, "fig4_series.csv", fig4_series_csv(cfg, runs));
    write_file(out, "fig4_summary.csv", fig4_summary_csv(cfg, runs));
    std::cout << fig4_summary_text(runs);
    for (const auto& r : runs) {
      if (!r.t95) code = kExitNotConverged;
    }
  }
  if (which == "tab1" || which == "all") {
    auto rows = run_tab1(cfg, o.jobs);
    write_file(out, "tab1.csv", tab1_csv(cfg, rows));
    std::cout << tab1_summary_text(rows);
    for (const auto& r : rows) {
      if (r.incomplete_warning) std::cerr << "warning: " << mode_name(r.mode) << " lost more than 1% of probes\n";
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDCP-RLC split over XGS-PON simulator"};
  app.require_subcommand(1);

  Options opts;
  const auto add_common = [&opts](CLI::App* cmd, bool with_config_flag) {
    if (with_config_flag) cmd->add_option("--config", opts.config, "Config file (key = value)")->check(CLI::ExistingFile);
    cmd->add_option("--set", opts.overrides, "Override a config key, e.g. --set pon.cycle=250us");
  };

  std::string which;
  auto* run = app.add_subcommand("run", "Run an experiment and write CSV");
  run->add_option("experiment", which, "fig3 | fig4 | tab1 | all")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4", "tab1", "all"}));
  add_common(run, true);
  run->add_option("--out", opts.out, "Output directory")->capture_default_str();
  run->add_option("--jobs", opts.jobs, "Sweep cells run concurrently")->check(CLI::Range(1u, 256u))->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "Check a config file and print its canonical form");
  validate_cmd->add_option("config", opts.config, "Config file")->required()->check(CLI::ExistingFile);
  add_common(validate_cmd, false);

  auto* grants = app.add_subcommand("grants-log", "Export the per-cycle DBA trace of one PON uplink run");
  add_common(grants, true);
  grants->add_option("--out", opts.out, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_experiment(which, opts);
    if (*validate_cmd) {
      ScenarioConfig cfg;
      if (!load(opts, cfg)) return kExitConfig;
      std::cout << canonical_dump(cfg) << "hash=" << config_hash(cfg) << '\n';
      return kExitOk;
    }
    if (*grants) {
      ScenarioConfig cfg;
      if (!load(opts, cfg)) return kExitConfig;
      const RunResult r = run_grants_log(cfg);
      write_file(opts.out, "grants.csv", grants_csv(cfg, r.grant_log));
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const AuditFailure& e) {
    std::cerr << e.what() << '\n';
    return kExitAudit;
  }
  return kExitOk;
}
