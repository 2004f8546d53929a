#include "thermoqfi/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "thermoqfi/qfi.hpp"

namespace tqfi {

void validate(const IsingConfig& cfg) {
  if (cfg.n_pairs < 1) throw InvalidArgument("Ising ring needs n_pairs >= 1");
  if (!std::isfinite(cfg.coupling) || !std::isfinite(cfg.b1) || !std::isfinite(cfg.b2)) {
    throw InvalidArgument("Ising parameters must be finite");
  }
}

ParamHamiltonian ising_alternating(const IsingConfig& cfg) {
  validate(cfg);
  const int sites = 2 * cfg.n_pairs;
  if (sites > kMaxDenseQubits) {
    throw SizeLimitExceeded("Ising ring of " + std::to_string(sites) +
                            " sites exceeds the dense limit");
  }
  ParamHamiltonian h;
  h.num_qubits = sites;
  for (int i = 0; i < sites; ++i) {
    h.fixed_terms.push_back(
        pauli(-cfg.coupling, {{i, PauliAxis::Z}, {(i + 1) % sites, PauliAxis::Z}}));
  }
  h.generators.resize(2);
  for (int i = 0; i < sites; ++i) h.generators[static_cast<std::size_t>(i % 2)].push_back(single(1.0, i, PauliAxis::Z));
  h.param_names = {"B1", "B2"};
  h.local_structure = LocalStructure{{cfg.n_pairs, cfg.n_pairs}, 2.0};
  return h;
}

namespace {

// Eigenvalues of P(a) C P(b) C divided by e^{2|K|}, as (m+, m-).
std::pair<double, double> reduced_pair_eigenvalues(double k, double a, double b) {
  const double s = a + b;
  const double d = a - b;
  const double q = std::exp(-4.0 * std::abs(k));
  double t, excess;
  if (k >= 0.0) {
    t = std::cosh(s) + q * std::cosh(d);
    excess = 2.0 * std::pow(std::sinh(s / 2.0), 2) + q * (std::cosh(d) + 1.0);
  } else {
    t = q * std::cosh(s) + std::cosh(d);
    excess = 2.0 * std::pow(std::sinh(d / 2.0), 2) + q * (std::cosh(s) + 1.0);
  }
  const double det = (1.0 - q) * (1.0 - q);
  const double m_plus = t + std::sqrt(excess * (t + 1.0 - q));
  return {m_plus, det / m_plus};
}

}  // namespace

std::pair<double, double> transfer_lambdas(double coupling, double b1, double b2, double beta) {
  const double k = beta * coupling;
  const auto [mp, mm] = reduced_pair_eigenvalues(k, beta * b1, beta * b2);
  const double scale = std::exp(std::abs(k));
  return {scale * std::sqrt(mp), scale * std::sqrt(mm)};
}

std::pair<double, double> uniform_field_lambdas(double coupling, double field, double beta) {
  const double t = beta * field;
  const double root = std::sqrt(std::pow(std::sinh(t), 2) + std::exp(-4.0 * beta * coupling));
  const double pre = std::exp(beta * coupling);
  return {pre * (std::cosh(t) + root), pre * (std::cosh(t) - root)};
}

double transfer_field_log_partition(const IsingConfig& cfg, double beta) {
  validate(cfg);
  const auto [mp, mm] = reduced_pair_eigenvalues(beta * cfg.coupling, beta * cfg.b1, beta * cfg.b2);
  const double n = cfg.n_pairs;
  return n * std::log(mp) + std::log1p(std::pow(mm / mp, n));
}

double transfer_log_partition(const IsingConfig& cfg, double beta) {
  return 2.0 * cfg.n_pairs * beta * std::abs(cfg.coupling) + transfer_field_log_partition(cfg, beta);
}

TransferResult transfer_qfi(const IsingConfig& cfg, double beta) {
  validate(cfg);
  if (!std::isfinite(beta) || beta <= 0.0) throw InvalidArgument("beta must be positive");
  TransferResult r;
  std::tie(r.lambda_plus, r.lambda_minus) = transfer_lambdas(cfg.coupling, cfg.b1, cfg.b2, beta);
  r.log_partition = transfer_log_partition(cfg, beta);
  const double h = 1e-4 * std::max({1.0, std::abs(cfg.b1), std::abs(cfg.b2)});
  r.qfi_2x2 = hessian_fd(
      [&](const RVector& b) {
        IsingConfig c = cfg;
        c.b1 = b[0];
        c.b2 = b[1];
        return transfer_field_log_partition(c, beta);
      },
      ising_theta(cfg), h);
  return r;
}

namespace {

struct Level {
  double energy;
  double count;
};

// Keeps the two lowest distinct energies with their multiplicities.
void push_level(std::vector<Level>& levels, Level l, double tol) {
  for (auto& x : levels) {
    if (std::abs(x.energy - l.energy) <= tol) {
      x.count += l.count;
      return;
    }
  }
  levels.push_back(l);
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.energy < b.energy; });
  if (levels.size() > 2) levels.resize(2);
}

}  // namespace

IsingLevels ising_classical_levels(const IsingConfig& cfg) {
  validate(cfg);
  const int sites = 2 * cfg.n_pairs;
  const double tol = 1e-12 * sites * (1.0 + std::abs(cfg.coupling) + std::abs(cfg.b1) + std::abs(cfg.b2));
  auto field = [&](int site) { return site % 2 == 0 ? cfg.b1 : cfg.b2; };
  const int spins[2] = {1, -1};

  std::vector<Level> total;
  for (int first : spins) {
    // levels[k] for the current spin value spins[k]
    std::vector<Level> cur[2];
    cur[first == 1 ? 0 : 1].push_back({field(0) * first, 1.0});
    for (int i = 1; i < sites; ++i) {
      std::vector<Level> next[2];
      for (int k = 0; k < 2; ++k) {
        for (int prev = 0; prev < 2; ++prev) {
          for (const auto& l : cur[prev]) {
            const double e = l.energy - cfg.coupling * spins[prev] * spins[k] + field(i) * spins[k];
            push_level(next[k], {e, l.count}, tol);
          }
        }
      }
      cur[0] = std::move(next[0]);
      cur[1] = std::move(next[1]);
    }
    for (int k = 0; k < 2; ++k) {
      for (const auto& l : cur[k]) {
        push_level(total, {l.energy - cfg.coupling * spins[k] * first, l.count}, tol);
      }
    }
  }
  IsingLevels out;
  out.ground_energy = total[0].energy;
  out.ground_degeneracy = total[0].count;
  if (total.size() > 1) out.first_excited = total[1].energy;
  return out;
}

double ising_classical_gap(const IsingConfig& cfg) {
  const IsingLevels lv = ising_classical_levels(cfg);
  if (!lv.first_excited) throw DegenerateSpectrum("all configurations share one energy");
  if (lv.ground_degeneracy > 1.5) throw DegenerateGroundState("Ising ground level is degenerate");
  return *lv.first_excited - lv.ground_energy;
}

ParamHamiltonian local_field_chain(int num_qubits) {
  if (num_qubits < 1) throw InvalidArgument("chain needs at least one qubit");
  if (num_qubits > kMaxDenseQubits) throw SizeLimitExceeded("chain exceeds the dense limit");
  ParamHamiltonian h;
  h.num_qubits = num_qubits;
  h.generators.resize(1);
  for (int k = 0; k < num_qubits; ++k) h.generators[0].push_back(single(0.5, k, PauliAxis::Z));
  h.param_names = {"theta0"};
  h.local_structure = LocalStructure{{num_qubits}, 1.0};
  return h;
}

ParamHamiltonian single_qubit_xyz() {
  ParamHamiltonian h;
  h.num_qubits = 1;
  h.generators = {{single(1.0, 0, PauliAxis::X)},
                  {single(1.0, 0, PauliAxis::Y)},
                  {single(1.0, 0, PauliAxis::Z)}};
  h.param_names = {"theta0", "theta1", "theta2"};
  return h;
}

ParamHamiltonian disjoint_blocks_model(const std::vector<int>& block_sizes) {
  if (block_sizes.empty()) throw InvalidArgument("need at least one block");
  const int total = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  if (total > kMaxDenseQubits) throw SizeLimitExceeded("blocks exceed the dense limit");
  ParamHamiltonian h;
  h.num_qubits = total;
  int site = 0;
  for (std::size_t m = 0; m < block_sizes.size(); ++m) {
    if (block_sizes[m] < 1) throw InvalidArgument("block sizes must be >= 1");
    TermList g;
    for (int k = 0; k < block_sizes[m]; ++k) g.push_back(single(0.5, site++, PauliAxis::Z));
    h.generators.push_back(std::move(g));
    h.param_names.push_back("theta" + std::to_string(m));
  }
  h.local_structure = LocalStructure{block_sizes, 1.0};
  return h;
}

namespace {

PauliTerm random_string(std::mt19937_64& rng, int num_qubits, bool z_only) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> axis(0, 2);
  std::bernoulli_distribution keep(0.6);
  PauliTerm t;
  t.coefficient = coef(rng);
  for (int q = 0; q < num_qubits; ++q) {
    if (keep(rng)) {
      t.factors.push_back({q, z_only ? PauliAxis::Z : static_cast<PauliAxis>(axis(rng))});
    }
  }
  if (t.factors.empty()) {
    std::uniform_int_distribution<int> site(0, num_qubits - 1);
    t.factors.push_back({site(rng), z_only ? PauliAxis::Z : static_cast<PauliAxis>(axis(rng))});
  }
  return t;
}

TermList random_terms(std::mt19937_64& rng, int num_qubits, bool z_only) {
  std::uniform_int_distribution<int> count(1, 3);
  TermList terms;
  const int n = count(rng);
  for (int k = 0; k < n; ++k) terms.push_back(random_string(rng, num_qubits, z_only));
  return terms;
}

}  // namespace

ParamHamiltonian random_pauli_model(std::mt19937_64& rng, int num_qubits, int num_params,
                                    bool with_fixed_part) {
  ParamHamiltonian h;
  h.num_qubits = num_qubits;
  if (with_fixed_part) h.fixed_terms = random_terms(rng, num_qubits, false);
  for (int m = 0; m < num_params; ++m) {
    h.generators.push_back(random_terms(rng, num_qubits, false));
    h.param_names.push_back("theta" + std::to_string(m));
  }
  validate(h);
  return h;
}

ParamHamiltonian random_diagonal_model(std::mt19937_64& rng, int num_qubits, int num_params) {
  ParamHamiltonian h;
  h.num_qubits = num_qubits;
  h.fixed_terms = random_terms(rng, num_qubits, true);
  for (int m = 0; m < num_params; ++m) {
    h.generators.push_back(random_terms(rng, num_qubits, true));
    h.param_names.push_back("theta" + std::to_string(m));
  }
  validate(h);
  return h;
}

ParamHamiltonian random_local_model(std::mt19937_64& rng, const std::vector<int>& block_sizes,
                                    int fixed_terms) {
  ParamHamiltonian h = disjoint_blocks_model(block_sizes);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int site = 0;
  for (auto& g : h.generators) {
    RVector axis(3);
    for (int c = 0; c < 3; ++c) axis[c] = gauss(rng);
    axis.normalize();
    const auto n = static_cast<int>(g.size());
    g.clear();
    for (int k = 0; k < n; ++k, ++site) {
      g.push_back(single(0.5 * axis[0], site, PauliAxis::X));
      g.push_back(single(0.5 * axis[1], site, PauliAxis::Y));
      g.push_back(single(0.5 * axis[2], site, PauliAxis::Z));
    }
  }
  for (int k = 0; k < fixed_terms; ++k) h.fixed_terms.push_back(random_string(rng, h.num_qubits, false));
  return h;
}

}  // namespace tqfi
