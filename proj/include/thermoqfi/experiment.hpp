#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "thermoqfi/models.hpp"
#include "thermoqfi/types.hpp"

namespace tqfi {

/// Invalid experiment configuration. The message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ModelSpec {
  std::string type;  // ising | local_field | xyz | disjoint_blocks
  double coupling = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  RVector theta;
  std::vector<int> block_sizes;

  int num_params() const;
  bool needs_sizes() const { return type == "ising" || type == "local_field"; }
};

struct ScanSpec {
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  double value(int k) const;
};

struct GridSpec {
  std::string var_x;
  std::string var_y;
  double x_start = 0.0, x_stop = 0.0;
  double y_start = 0.0, y_stop = 0.0;
  int points = 0;  // per axis
};

struct Checks {
  bool run_oracle = true;
  bool run_bounds = true;
  bool run_attainability = true;
};

struct ExperimentConfig {
  ModelSpec model;
  double beta = 0.0;
  RVector direction_n;
  std::optional<ScanSpec> scan;
  std::optional<GridSpec> grid;
  std::vector<int> sizes;
  std::string csv_path;
  std::string json_path;
  Checks checks;
};

/// Parses and validates a JSON config. Unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// A numeric field that is either a finite value or unavailable with a
/// reason code.
struct Cell {
  std::optional<double> value;
  std::string reason;

  static Cell of(double v);
  static Cell unavailable(std::string why) { return Cell{std::nullopt, std::move(why)}; }
  std::string str() const;
};

struct RunRecord {
  int size = 0;
  std::string scan_var;
  double scan_value = 0.0;
  double qfi_nFn = 0.0;
  Cell bound_finiteT;
  Cell bound_gammaHL;
  Cell gap;
  Cell oracle_resid;
  std::string method;  // dense | transfer
};

struct GridRecord {
  double x = 0.0;
  double y = 0.0;
  double qfi_nFn = 0.0;
};

/// Evaluates one parameter point. Ising rings above the dense limit go
/// through the transfer matrix.
RunRecord evaluate_point(const ModelSpec& model, int size, double beta, const RVector& n,
                         const Checks& checks);

/// Sets a named variable (beta, J, B1, B2, theta<k>) on a model/beta pair.
void assign_variable(ModelSpec& model, double& beta, const std::string& name, double value);

/// Model size used when the config has no sizes list.
int implied_size(const ModelSpec& model);

/// Materializes the dense model for a spec and size.
ParamHamiltonian build_model(const ModelSpec& model, int size);
RVector model_theta(const ModelSpec& model);

std::vector<RunRecord> run_scan(const ExperimentConfig& cfg, int threads = 1);
std::vector<GridRecord> run_grid(const ExperimentConfig& cfg, int threads = 1);
nlohmann::ordered_json run_report(const ExperimentConfig& cfg);

void write_scan_csv(std::ostream& os, const ExperimentConfig& cfg,
                    const std::vector<RunRecord>& rows);
void write_grid_csv(std::ostream& os, const ExperimentConfig& cfg,
                    const std::vector<GridRecord>& rows);

/// Rows breaking qfi <= bound (finite-T and, where present, Gamma_HL chain).
std::vector<std::string> contract_violations(const std::vector<RunRecord>& rows);

}  // namespace tqfi
