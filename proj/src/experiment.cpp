#include "thermoqfi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "thermoqfi/bounds.hpp"
#include "thermoqfi/format.hpp"
#include "thermoqfi/qfi.hpp"

namespace tqfi {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// config parsing

namespace {

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&](const char* a) { return key == a; });
    if (!ok) throw ConfigError(path + ": unknown key '" + key + "'");
  }
}

double number(const json& obj, const char* key, const std::string& path,
              std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(path + "/" + key + ": required");
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "/" + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path + "/" + key + ": must be finite");
  return x;
}

int integer(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "/" + key + ": required");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(path + "/" + key + ": expected an integer");
  return v.get<int>();
}

std::string text(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "/" + key + ": required");
  const auto& v = obj.at(key);
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw ConfigError(path + "/" + key + ": expected a nonempty string");
  }
  return v.get<std::string>();
}

RVector vector_of(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path + ": expected a nonempty array of numbers");
  RVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number() || !std::isfinite(v[k].get<double>())) {
      throw ConfigError(path + "/" + std::to_string(k) + ": expected a finite number");
    }
    out[static_cast<Eigen::Index>(k)] = v[k].get<double>();
  }
  return out;
}

std::vector<int> ints_of(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path + ": expected a nonempty array of integers");
  std::vector<int> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number_integer() || v[k].get<int>() < 1) {
      throw ConfigError(path + "/" + std::to_string(k) + ": expected an integer >= 1");
    }
    out.push_back(v[k].get<int>());
  }
  return out;
}

bool flag(const json& obj, const char* key, const std::string& path, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigError(path + "/" + key + ": expected a boolean");
  return obj.at(key).get<bool>();
}

ModelSpec parse_model(const json& m) {
  const std::string path = "/model";
  if (!m.is_object()) throw ConfigError(path + ": expected an object");
  ModelSpec spec;
  spec.type = text(m, "type", path);
  if (spec.type == "ising") {
    only_keys(m, {"type", "J", "B1", "B2"}, path);
    spec.coupling = number(m, "J", path, 0.0);
    spec.b1 = number(m, "B1", path, 0.0);
    spec.b2 = number(m, "B2", path, 0.0);
  } else if (spec.type == "local_field") {
    only_keys(m, {"type", "theta"}, path);
    spec.theta = m.contains("theta") ? vector_of(m.at("theta"), path + "/theta") : RVector::Zero(1);
    if (spec.theta.size() != 1) throw ConfigError(path + "/theta: local_field has one parameter");
  } else if (spec.type == "xyz") {
    only_keys(m, {"type", "theta"}, path);
    spec.theta = m.contains("theta") ? vector_of(m.at("theta"), path + "/theta") : RVector{{0.0, 0.0, 1.0}};
    if (spec.theta.size() != 3) throw ConfigError(path + "/theta: xyz has three parameters");
  } else if (spec.type == "disjoint_blocks") {
    only_keys(m, {"type", "block_sizes", "theta"}, path);
    if (!m.contains("block_sizes")) throw ConfigError(path + "/block_sizes: required");
    spec.block_sizes = ints_of(m.at("block_sizes"), path + "/block_sizes");
    const auto nb = static_cast<Eigen::Index>(spec.block_sizes.size());
    spec.theta = m.contains("theta") ? vector_of(m.at("theta"), path + "/theta") : RVector::Zero(nb);
    if (spec.theta.size() != nb) throw ConfigError(path + "/theta: one entry per block required");
  } else {
    throw ConfigError(path + "/type: unknown model '" + spec.type +
                      "' (expected ising, local_field, xyz or disjoint_blocks)");
  }
  return spec;
}

bool valid_variable(const ModelSpec& m, const std::string& name) {
  if (name == "beta") return true;
  if (m.type == "ising") return name == "J" || name == "B1" || name == "B2";
  for (int k = 0; k < m.num_params(); ++k) {
    if (name == "theta" + std::to_string(k)) return true;
  }
  return false;
}

}  // namespace

int ModelSpec::num_params() const {
  return type == "ising" ? 2 : static_cast<int>(theta.size());
}

double ScanSpec::value(int k) const {
  if (k == points - 1) return stop;
  return start + (stop - start) * static_cast<double>(k) / static_cast<double>(points - 1);
}

ExperimentConfig parse_config(const json& doc) {
  only_keys(doc, {"model", "beta", "direction_n", "scan", "grid", "sizes", "outputs", "checks"}, "");
  ExperimentConfig cfg;
  if (!doc.contains("model")) throw ConfigError("/model: required");
  cfg.model = parse_model(doc.at("model"));

  cfg.beta = number(doc, "beta", "");
  if (cfg.beta <= 0.0) throw ConfigError("/beta: must be positive");

  if (!doc.contains("direction_n")) throw ConfigError("/direction_n: required");
  cfg.direction_n = vector_of(doc.at("direction_n"), "/direction_n");
  if (cfg.direction_n.size() != cfg.model.num_params()) {
    throw ConfigError("/direction_n: expected " + std::to_string(cfg.model.num_params()) + " entries");
  }
  if (cfg.direction_n.norm() == 0.0) throw ConfigError("/direction_n: must be nonzero");

  if (doc.contains("scan") && doc.contains("grid")) {
    throw ConfigError("/: scan and grid are mutually exclusive");
  }
  if (doc.contains("scan")) {
    const auto& s = doc.at("scan");
    only_keys(s, {"variable", "start", "stop", "points"}, "/scan");
    ScanSpec scan{text(s, "variable", "/scan"), number(s, "start", "/scan"),
                  number(s, "stop", "/scan"), integer(s, "points", "/scan")};
    if (scan.points < 2) throw ConfigError("/scan/points: must be >= 2");
    if (!valid_variable(cfg.model, scan.variable)) {
      throw ConfigError("/scan/variable: '" + scan.variable + "' is not a variable of this model");
    }
    cfg.scan = scan;
  }
  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    only_keys(g, {"var_x", "var_y", "x_range", "y_range", "points"}, "/grid");
    GridSpec grid;
    grid.var_x = text(g, "var_x", "/grid");
    grid.var_y = text(g, "var_y", "/grid");
    for (const auto* key : {"x_range", "y_range"}) {
      if (!g.contains(key)) throw ConfigError(std::string("/grid/") + key + ": required");
      const RVector r = vector_of(g.at(key), std::string("/grid/") + key);
      if (r.size() != 2) throw ConfigError(std::string("/grid/") + key + ": expected [start, stop]");
      (std::string(key) == "x_range" ? grid.x_start : grid.y_start) = r[0];
      (std::string(key) == "x_range" ? grid.x_stop : grid.y_stop) = r[1];
    }
    grid.points = integer(g, "points", "/grid");
    if (grid.points < 2) throw ConfigError("/grid/points: must be >= 2");
    for (const auto& v : {grid.var_x, grid.var_y}) {
      if (!valid_variable(cfg.model, v)) {
        throw ConfigError("/grid: '" + v + "' is not a variable of this model");
      }
    }
    if (grid.var_x == grid.var_y) throw ConfigError("/grid: var_x and var_y must differ");
    cfg.grid = grid;
  }

  if (doc.contains("sizes")) {
    if (!cfg.model.needs_sizes()) {
      throw ConfigError("/sizes: model '" + cfg.model.type + "' has a fixed size");
    }
    cfg.sizes = ints_of(doc.at("sizes"), "/sizes");
  } else if (cfg.model.needs_sizes()) {
    throw ConfigError("/sizes: required for model '" + cfg.model.type + "'");
  } else {
    cfg.sizes = {implied_size(cfg.model)};
  }
  if ((cfg.grid || !cfg.scan) && cfg.sizes.size() != 1) {
    throw ConfigError("/sizes: grid and single-point runs take exactly one size");
  }

  if (doc.contains("outputs")) {
    const auto& o = doc.at("outputs");
    only_keys(o, {"csv", "json"}, "/outputs");
    if (o.contains("csv")) cfg.csv_path = text(o, "csv", "/outputs");
    if (o.contains("json")) cfg.json_path = text(o, "json", "/outputs");
  }
  if (doc.contains("checks")) {
    const auto& c = doc.at("checks");
    only_keys(c, {"run_oracle", "run_bounds", "run_attainability"}, "/checks");
    cfg.checks.run_oracle = flag(c, "run_oracle", "/checks", true);
    cfg.checks.run_bounds = flag(c, "run_bounds", "/checks", true);
    cfg.checks.run_attainability = flag(c, "run_attainability", "/checks", true);
  }
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text_in) {
  json doc;
  try {
    doc = json::parse(text_in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// ---------------------------------------------------------------------------
// evaluation

Cell Cell::of(double v) {
  if (!std::isfinite(v)) return unavailable("nonfinite");
  return Cell{v, {}};
}

std::string Cell::str() const {
  return value ? format_shortest(*value) : "NA:" + reason;
}

int implied_size(const ModelSpec& model) {
  if (model.type == "xyz") return 1;
  if (model.type == "disjoint_blocks") {
    return std::accumulate(model.block_sizes.begin(), model.block_sizes.end(), 0);
  }
  throw ConfigError("model '" + model.type + "' needs an explicit size");
}

ParamHamiltonian build_model(const ModelSpec& model, int size) {
  if (model.type == "ising") return ising_alternating({size, model.coupling, model.b1, model.b2});
  if (model.type == "local_field") return local_field_chain(size);
  if (model.type == "xyz") return single_qubit_xyz();
  if (model.type == "disjoint_blocks") return disjoint_blocks_model(model.block_sizes);
  throw ConfigError("unknown model '" + model.type + "'");
}

RVector model_theta(const ModelSpec& model) {
  if (model.type == "ising") return RVector{{model.b1, model.b2}};
  return model.theta;
}

void assign_variable(ModelSpec& model, double& beta, const std::string& name, double value) {
  if (name == "beta") {
    beta = value;
  } else if (name == "J") {
    model.coupling = value;
  } else if (name == "B1") {
    model.b1 = value;
  } else if (name == "B2") {
    model.b2 = value;
  } else if (name.rfind("theta", 0) == 0) {
    const int k = std::stoi(name.substr(5));
    if (k < 0 || k >= model.theta.size()) throw ConfigError("variable '" + name + "' out of range");
    model.theta[k] = value;
  } else {
    throw ConfigError("unknown variable '" + name + "'");
  }
}

namespace {

bool uses_transfer(const ModelSpec& model, int size) {
  return model.type == "ising" && 2 * size > kMaxDenseQubits;
}

RunRecord evaluate_transfer(const ModelSpec& model, int size, double beta, const RVector& n,
                            const Checks& checks) {
  const IsingConfig cfg{size, model.coupling, model.b1, model.b2};
  const TransferResult tr = transfer_qfi(cfg, beta);
  RunRecord r;
  r.size = size;
  r.method = "transfer";
  r.qfi_nFn = quadratic_form(tr.qfi_2x2, n);
  if (checks.run_bounds) {
    // The ring is diagonal in the Z basis, so F = beta^2 Gamma exactly.
    r.bound_finiteT = Cell::of(r.qfi_nFn);
    r.bound_gammaHL = Cell::of(beta * beta * gamma_HL(ghz_spec_for(LocalStructure{{size, size}, 2.0}, n), n));
  } else {
    r.bound_finiteT = r.bound_gammaHL = Cell::unavailable("not_requested");
  }
  try {
    r.gap = Cell::of(ising_classical_gap(cfg));
  } catch (const DegenerateGroundState&) {
    r.gap = Cell::unavailable("degenerate_ground_state");
  } catch (const DegenerateSpectrum&) {
    r.gap = Cell::unavailable("degenerate_spectrum");
  }
  r.oracle_resid = Cell::unavailable(checks.run_oracle ? "no_dense_oracle" : "not_requested");
  return r;
}

RunRecord evaluate_dense(const ModelSpec& spec, int size, double beta, const RVector& n,
                         const Checks& checks) {
  const ParamHamiltonian model = build_model(spec, size);
  const RVector theta = model_theta(spec);
  const ThermalModelPoint p = thermal_point(model, theta, beta);
  const QfiMatrix f = qfi_matrix(p, theta);

  RunRecord r;
  r.size = size;
  r.method = "dense";
  r.qfi_nFn = quadratic_form(f, n);
  if (checks.run_bounds) {
    r.bound_finiteT = Cell::of(beta * beta * quadratic_form(covariance_matrix(p), n));
    r.bound_gammaHL = model.local_structure
        ? Cell::of(beta * beta * gamma_HL(ghz_spec_for(*model.local_structure, n), n))
        : Cell::unavailable("nonconforming_model");
  } else {
    r.bound_finiteT = r.bound_gammaHL = Cell::unavailable("not_requested");
  }
  try {
    r.gap = Cell::of(energy_gap(p.state.spectrum));
  } catch (const DegenerateGroundState&) {
    r.gap = Cell::unavailable("degenerate_ground_state");
  } catch (const DegenerateSpectrum&) {
    r.gap = Cell::unavailable("degenerate_spectrum");
  }
  if (checks.run_oracle) {
    r.oracle_resid = Cell::of(max_abs(f.entries - qfi_oracle_fd(model, theta, beta).entries));
  } else {
    r.oracle_resid = Cell::unavailable("not_requested");
  }
  return r;
}

// Evaluates fn(0..n-1) on a worker pool; results keep index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, int threads, Fn fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        out[k] = fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(workers, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void check_dense_reachable(const ModelSpec& model, int size) {
  if (model.type == "ising") {
    if (size < 1) throw ConfigError("/sizes: Ising sizes must be >= 1");
    return;
  }
  const int qubits = model.type == "local_field" ? size : implied_size(model);
  if (qubits > kMaxDenseQubits) {
    throw ConfigError("model of " + std::to_string(qubits) + " qubits exceeds the dense limit (" +
                      std::to_string(kMaxDenseQubits) + ") and has no transfer-matrix path");
  }
}

}  // namespace

RunRecord evaluate_point(const ModelSpec& model, int size, double beta, const RVector& n,
                         const Checks& checks) {
  check_dense_reachable(model, size);
  return uses_transfer(model, size) ? evaluate_transfer(model, size, beta, n, checks)
                                    : evaluate_dense(model, size, beta, n, checks);
}

std::vector<RunRecord> run_scan(const ExperimentConfig& cfg, int threads) {
  if (!cfg.scan) throw ConfigError("/scan: required for a scan run");
  const ScanSpec& scan = *cfg.scan;
  for (int size : cfg.sizes) check_dense_reachable(cfg.model, size);
  const std::size_t per_size = static_cast<std::size_t>(scan.points);
  auto rows = parallel_map<RunRecord>(cfg.sizes.size() * per_size, threads, [&](std::size_t k) {
    ModelSpec model = cfg.model;
    double beta = cfg.beta;
    const double value = scan.value(static_cast<int>(k % per_size));
    assign_variable(model, beta, scan.variable, value);
    if (!(beta > 0.0)) throw ConfigError("/scan: beta must stay positive");
    RunRecord r = evaluate_point(model, cfg.sizes[k / per_size], beta, cfg.direction_n, cfg.checks);
    r.scan_var = scan.variable;
    r.scan_value = value;
    return r;
  });
  std::stable_sort(rows.begin(), rows.end(), [](const RunRecord& a, const RunRecord& b) {
    return a.size != b.size ? a.size < b.size : a.scan_value < b.scan_value;
  });
  return rows;
}

std::vector<GridRecord> run_grid(const ExperimentConfig& cfg, int threads) {
  if (!cfg.grid) throw ConfigError("/grid: required for a grid run");
  const GridSpec& g = *cfg.grid;
  const int size = cfg.sizes.front();
  check_dense_reachable(cfg.model, size);
  const ScanSpec xs{g.var_x, g.x_start, g.x_stop, g.points};
  const ScanSpec ys{g.var_y, g.y_start, g.y_stop, g.points};
  const auto n = static_cast<std::size_t>(g.points);
  Checks checks;
  checks.run_oracle = checks.run_bounds = checks.run_attainability = false;
  return parallel_map<GridRecord>(n * n, threads, [&](std::size_t k) {
    ModelSpec model = cfg.model;
    double beta = cfg.beta;
    GridRecord r;
    r.x = xs.value(static_cast<int>(k / n));
    r.y = ys.value(static_cast<int>(k % n));
    assign_variable(model, beta, g.var_x, r.x);
    assign_variable(model, beta, g.var_y, r.y);
    if (!(beta > 0.0)) throw ConfigError("/grid: beta must stay positive");
    r.qfi_nFn = evaluate_point(model, size, beta, cfg.direction_n, checks).qfi_nFn;
    return r;
  });
}

namespace {

ordered_json matrix_json(const RMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

ordered_json vector_json(const RVector& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

ordered_json run_report(const ExperimentConfig& cfg) {
  if (cfg.scan || cfg.grid) throw ConfigError("/: report runs take a single-point config");
  const int size = cfg.sizes.front();
  check_dense_reachable(cfg.model, size);
  if (uses_transfer(cfg.model, size)) {
    throw ConfigError("/sizes: report needs a dense model (at most " +
                      std::to_string(kMaxDenseQubits / 2) + " Ising pairs)");
  }
  const ParamHamiltonian model = build_model(cfg.model, size);
  const RVector theta = model_theta(cfg.model);
  const RVector& n = cfg.direction_n;
  const double beta = cfg.beta;
  const ThermalModelPoint p = thermal_point(model, theta, beta);
  const QfiMatrix f = qfi_matrix(p, theta);

  ordered_json out;
  out["model"] = cfg.model.type;
  out["size"] = size;
  out["method"] = "dense";
  out["beta"] = beta;
  out["theta"] = vector_json(theta);
  out["direction_n"] = vector_json(n);
  out["qfi_matrix"] = matrix_json(f.entries);
  out["qfi_nFn"] = quadratic_form(f, n);
  out["covariance_gamma"] = matrix_json(covariance_matrix(p));

  if (cfg.checks.run_bounds) {
    const BoundReport b = bound_report(model, theta, beta, n);
    ordered_json bj;
    bj["finite_T"] = b.finite_T_bound;
    bj["gamma_HL"] = optional_json(b.gamma_HL_bound);
    bj["zero_T_limit"] = optional_json(b.zero_T_limit);
    bj["zero_T_bound"] = optional_json(b.zero_T_bound);
    bj["gap"] = optional_json(b.gap);
    bj["zero_T_status"] = b.zero_T_status;
    bj["gamma_HL_status"] = b.gamma_HL_bound ? "ok" : "nonconforming_model";
    bj["saturated"] = ordered_json{{"finite_T", b.finite_T_saturated},
                                   {"gamma_HL", b.gamma_HL_saturated},
                                   {"zero_T", b.zero_T_saturated}};
    out["bounds"] = bj;
  } else {
    out["bounds"] = nullptr;
  }

  if (cfg.checks.run_attainability) {
    const AttainabilityReport a = attainability(model, theta, beta);
    ordered_json aj;
    aj["weak"] = matrix_json(a.weak);
    aj["strong"] = matrix_json(a.strong);
    ordered_json gens = ordered_json::array();
    for (const auto& row : a.cond_gen_commute) gens.push_back(ordered_json(row));
    aj["conditions"] = ordered_json{{"H_commutes_with_generator", ordered_json(a.cond_H_commute)},
                                    {"generators_commute", gens}};
    out["attainability"] = aj;
  } else {
    out["attainability"] = nullptr;
  }

  if (cfg.checks.run_oracle) {
    const QfiMatrix fd = qfi_oracle_fd(model, theta, beta);
    out["oracle"] = ordered_json{{"fd_matrix", matrix_json(fd.entries)},
                                 {"max_residual", max_abs(f.entries - fd.entries)}};
  } else {
    out["oracle"] = nullptr;
  }
  return out;
}

namespace {

std::string join(const RVector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ";";
    s += format_shortest(v[i]);
  }
  return s;
}

std::string model_metadata(const ExperimentConfig& cfg) {
  const auto& m = cfg.model;
  std::string s = "# model=" + m.type;
  if (m.type == "ising") {
    s += " J=" + format_shortest(m.coupling) + " B1=" + format_shortest(m.b1) +
         " B2=" + format_shortest(m.b2);
  } else {
    s += " theta=" + join(m.theta);
  }
  s += " beta=" + format_shortest(cfg.beta) + " direction_n=" + join(cfg.direction_n);
  return s;
}

}  // namespace

void write_scan_csv(std::ostream& os, const ExperimentConfig& cfg,
                    const std::vector<RunRecord>& rows) {
  os << "# thermoqfi scan\n" << model_metadata(cfg) << "\n";
  os << "size,scan_var,scan_value,qfi_nFn,bound_finiteT,bound_gammaHL,gap,oracle_resid,method\n";
  for (const auto& r : rows) {
    os << r.size << ',' << r.scan_var << ',' << format_shortest(r.scan_value) << ','
       << format_shortest(r.qfi_nFn) << ',' << r.bound_finiteT.str() << ','
       << r.bound_gammaHL.str() << ',' << r.gap.str() << ',' << r.oracle_resid.str() << ','
       << r.method << '\n';
  }
}

void write_grid_csv(std::ostream& os, const ExperimentConfig& cfg,
                    const std::vector<GridRecord>& rows) {
  os << "# thermoqfi grid\n" << model_metadata(cfg) << " N=" << cfg.sizes.front() << "\n";
  os << cfg.grid->var_x << ',' << cfg.grid->var_y << ",qfi_nFn\n";
  for (const auto& r : rows) {
    os << format_shortest(r.x) << ',' << format_shortest(r.y) << ',' << format_shortest(r.qfi_nFn)
       << '\n';
  }
}

std::vector<std::string> contract_violations(const std::vector<RunRecord>& rows) {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    const std::string where =
        "size=" + std::to_string(r.size) + " " + r.scan_var + "=" + format_shortest(r.scan_value);
    if (r.bound_finiteT.value && !within_bound(r.qfi_nFn, *r.bound_finiteT.value)) {
      out.push_back(where + ": qfi_nFn exceeds bound_finiteT");
    }
    if (r.bound_finiteT.value && r.bound_gammaHL.value &&
        !within_bound(*r.bound_finiteT.value, *r.bound_gammaHL.value)) {
      out.push_back(where + ": bound_finiteT exceeds bound_gammaHL");
    }
  }
  return out;
}

}  // namespace tqfi
