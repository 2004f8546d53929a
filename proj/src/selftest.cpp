#include "thermoqfi/selftest.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "thermoqfi/bounds.hpp"
#include "thermoqfi/format.hpp"
#include "thermoqfi/models.hpp"
#include "thermoqfi/qfi.hpp"

namespace tqfi {

namespace {

RVector uniform_vector(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

CMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) a(i, j) = Complex{g(rng), g(rng)};
  }
  return (a + a.adjoint()) / 2.0;
}

CheckResult make(const std::string& name, bool ok, double worst, const std::string& what) {
  return {name, ok, what + " = " + format_shortest(worst)};
}

}  // namespace

std::vector<CheckResult> run_selftest(unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> qubits(1, 3);
  std::uniform_int_distribution<int> params(1, 3);
  const double betas[] = {0.2, 1.0, 5.0};
  std::vector<CheckResult> out;

  {
    double worst = 0.0;
    for (int k = 0; k < 12; ++k) {
      const auto model = random_pauli_model(rng, qubits(rng), params(rng));
      const RVector theta = uniform_vector(rng, model.num_params(), -1.0, 1.0);
      const double beta = betas[k % 3];
      const RMatrix f = qfi_matrix(model, theta, beta).entries;
      const RMatrix o = qfi_oracle_fd(model, theta, beta).entries;
      worst = std::max(worst, max_abs(f - o) / std::max(1.0, max_abs(f)));
    }
    out.push_back(make("qfi matches finite-difference oracle", worst <= 1e-6, worst, "max rel resid"));
  }
  {
    double worst = -1e300;
    for (int k = 0; k < 40; ++k) {
      std::vector<int> blocks(static_cast<std::size_t>(params(rng)), 1);
      const auto model = random_local_model(rng, blocks, 2);
      const RVector theta = uniform_vector(rng, model.num_params(), -1.0, 1.0);
      const RVector n = uniform_vector(rng, model.num_params(), -1.0, 1.0);
      const auto b = bound_report(model, theta, betas[k % 3], n);
      worst = std::max(worst, b.qfi_value - b.finite_T_bound - 1e-9 * (1.0 + b.finite_T_bound));
      worst = std::max(worst, b.finite_T_bound - *b.gamma_HL_bound - 1e-9 * (1.0 + *b.gamma_HL_bound));
    }
    out.push_back(make("bound chain qfi <= beta^2 Gamma <= beta^2 Gamma_HL", worst <= 0.0, worst,
                       "max excess"));
  }
  {
    double inv = 0.0, tr1 = 0.0, tr2 = 0.0;
    for (int k = 0; k < 5; ++k) {
      const auto model = random_pauli_model(rng, 3, 1);
      const auto st = gibbs(eigendecompose(assemble(model, uniform_vector(rng, 1, -1, 1))), betas[k % 3]);
      const CMatrix a = random_hermitian(rng, st.dimension());
      const CMatrix b = random_hermitian(rng, st.dimension());
      const CMatrix rho = st.density_matrix();
      inv = std::max(inv, max_abs(apply_superoperator(
                               SuperopKind::Bogoliubov, st,
                               apply_superoperator(SuperopKind::BogoliubovInverse, st, a)) - a));
      const CMatrix la = apply_superoperator(SuperopKind::KuboMori, st, a);
      const CMatrix lb = apply_superoperator(SuperopKind::KuboMori, st, b);
      tr1 = std::max(tr1, std::abs(la.trace().real() - (rho * a).trace().real()));
      tr2 = std::max(tr2, std::abs((la * b).trace().real() - (a * lb).trace().real()));
    }
    out.push_back(make("J_B o J_B^-1 = id", inv <= 1e-10, inv, "max abs"));
    out.push_back(make("Kubo-Mori trace identities", std::max(tr1, tr2) <= 1e-12, std::max(tr1, tr2),
                       "max abs"));
  }
  {
    std::uniform_real_distribution<double> u(1e-6, 1.0);
    int bad = 0;
    for (int k = 0; k < 10000; ++k) {
      const double a = u(rng);
      const double b = k % 10 == 0 ? a * (1.0 + 1e-9) : u(rng);
      if (kmb_weight(a, b) > bogoliubov_weight(a, b)) ++bad;
    }
    out.push_back(make("kmb weight <= Bogoliubov weight", bad == 0, bad, "violations"));
  }
  {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const IsingConfig cfg{n, 0.8, 0.1, -0.25};
      const double dense = log_partition(ising_alternating(cfg), ising_theta(cfg), 0.7);
      worst = std::max(worst, std::abs(dense - transfer_log_partition(cfg, 0.7)) / std::abs(dense));
    }
    out.push_back(make("transfer-matrix ln Z matches dense trace", worst <= 1e-9, worst, "max rel"));
  }
  {
    double worst = 0.0;
    for (int m = 1; m <= 2; ++m) {
      for (int size = 1; size <= 2; ++size) {
        const std::vector<int> blocks(static_cast<std::size_t>(m), size);
        const auto model = disjoint_blocks_model(blocks);
        const RVector n = uniform_vector(rng, m, -1.0, 1.0);
        const GhzSpec spec = ghz_spec_for(*model.local_structure, n);
        const double cov = quadratic_form(covariance_matrix(ghz_state(spec), model), n);
        worst = std::max(worst, std::abs(cov - gamma_HL(spec, n)));
      }
    }
    out.push_back(make("GHZ state saturates Gamma_HL", worst <= 1e-12, worst, "max abs"));
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 6; ++k) {
      const auto model = random_pauli_model(rng, 2, 2);
      const RVector theta = uniform_vector(rng, 2, -1.0, 1.0);
      const auto p = thermal_point(model, theta, betas[k % 3]);
      const CMatrix rho = p.state.density_matrix();
      for (int mu = 0; mu < 2; ++mu) {
        const CMatrix l = sld(p, mu);
        worst = std::max(worst, max_abs((rho * l + l * rho) / 2.0 - density_derivative(p, mu)));
      }
    }
    out.push_back(make("SLD defining relation", worst <= 1e-9, worst, "max abs"));
  }
  {
    ParamHamiltonian two_level;
    two_level.num_qubits = 1;
    two_level.generators = {{single(1.0, 0, PauliAxis::Z)}, {single(1.0, 0, PauliAxis::X)}};
    const RVector theta{{1.0, 0.0}};
    const RVector n{{0.0, 1.0}};
    const double lim = zero_temperature_limit(two_level, theta, n);
    const double at20 = quadratic_form(qfi_matrix(two_level, theta, 20.0), n);
    const double err = std::abs(at20 - lim);
    out.push_back(make("zero-temperature limit reached at beta=20", err <= 4.0 * std::exp(-40.0) + 1e-14,
                       err, "abs error"));
  }
  return out;
}

void print_results(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
  }
}

}  // namespace tqfi
