// thermoqfi: QFI, bounds and attainability for thermal states of spin models.
//
//   thermoqfi scan     --config ising_coupling_scan.json [--out ising_coupling_scan.csv] [--threads 4]
//   thermoqfi grid     --config ising_field_grid.json [--out ising_field_grid.csv]
//   thermoqfi report   --config xyz.json  [--out xyz.json]
//   thermoqfi selftest
//
// Exit codes: 0 success, 2 config error, 3 numerical-contract violation.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "thermoqfi/experiment.hpp"
#include "thermoqfi/format.hpp"
#include "thermoqfi/selftest.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kContractViolation = 3;

std::string output_path(const std::string& flag, const std::string& from_config,
                        const char* kind) {
  if (!flag.empty()) return flag;
  if (!from_config.empty()) return from_config;
  throw tqfi::ConfigError(std::string("/outputs/") + kind + ": no output path (use --out)");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw tqfi::ConfigError("cannot write '" + path + "'");
  return os;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Fisher information of thermal spin states"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  int threads = 1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--out", out_path, "output file (overrides the config)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  };
  auto* scan = app.add_subcommand("scan", "one CSV row per (size, scan point)");
  auto* grid = app.add_subcommand("grid", "QFI quadratic form over a 2-D parameter grid");
  auto* report = app.add_subcommand("report", "JSON report at a single parameter point");
  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
  add_common(scan);
  add_common(grid);
  add_common(report);

  CLI11_PARSE(app, argc, argv);

  try {
    if (selftest->parsed()) {
      const auto results = tqfi::run_selftest();
      tqfi::print_results(std::cout, results);
      for (const auto& r : results) {
        if (!r.passed) return kContractViolation;
      }
      return 0;
    }

    const tqfi::ExperimentConfig cfg = tqfi::load_config(config_path);
    if (scan->parsed()) {
      if (!cfg.scan) throw tqfi::ConfigError("/scan: required for the scan subcommand");
      const auto rows = tqfi::run_scan(cfg, threads);
      auto os = open_output(output_path(out_path, cfg.csv_path, "csv"));
      tqfi::write_scan_csv(os, cfg, rows);
      const auto bad = tqfi::contract_violations(rows);
      for (const auto& b : bad) std::cerr << "contract violation: " << b << "\n";
      return bad.empty() ? 0 : kContractViolation;
    }
    if (grid->parsed()) {
      if (!cfg.grid) throw tqfi::ConfigError("/grid: required for the grid subcommand");
      const auto rows = tqfi::run_grid(cfg, threads);
      auto os = open_output(output_path(out_path, cfg.csv_path, "csv"));
      tqfi::write_grid_csv(os, cfg, rows);
      return 0;
    }
    if (report->parsed()) {
      const auto doc = tqfi::run_report(cfg);
      auto os = open_output(output_path(out_path, cfg.json_path, "json"));
      tqfi::write_json(os, doc);
      os << "\n";
      return 0;
    }
  } catch (const tqfi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const tqfi::SizeLimitExceeded& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const tqfi::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
