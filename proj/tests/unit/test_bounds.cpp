#include <doctest.h>

#include <cfloat>
#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "thermoqfi/bounds.hpp"
#include "thermoqfi/models.hpp"

using namespace tqfi;
namespace t = tqfi::testing;

namespace {

ParamHamiltonian zx_qubit() {
  ParamHamiltonian m;
  m.num_qubits = 1;
  m.generators = {{single(1.0, 0, PauliAxis::Z)}, {single(1.0, 0, PauliAxis::X)}};
  return m;
}

}  // namespace

TEST_CASE("covariance_matrix") {
  SUBCASE("infinite temperature, independent half spins") {
    for (int n = 1; n <= 4; ++n) {
      const auto model = local_field_chain(n);
      const ThermalState st = gibbs(eigendecompose(assemble(model, RVector{{0.7}})), 0.0);
      CHECK(covariance_matrix(st, model)(0, 0) == doctest::Approx(n / 4.0).epsilon(1e-14));
    }
  }
  SUBCASE("GHZ, two blocks of two") {
    const GhzSpec spec{{2, 2}, {1, 1}, 1.0};
    const RVector n = RVector::Constant(2, 1 / std::sqrt(2.0));
    const RMatrix g = covariance_matrix(ghz_state(spec), disjoint_blocks_model({2, 2}));
    CHECK(n.dot(g * n) == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("joint eigenstate has no fluctuations") {
    CVector psi = CVector::Zero(8);
    psi[5] = 1.0;
    CHECK(max_abs(covariance_matrix(psi, disjoint_blocks_model({1, 2}))) <= 1e-15);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(covariance_matrix(CVector::Zero(4), local_field_chain(3)), DimensionMismatch);
  }
  SUBCASE("symmetric PSD on random states") {
    std::mt19937_64 rng(3);
    const auto model = random_pauli_model(rng, 2, 3);
    CVector psi = CVector::Zero(4);
    for (int i = 0; i < 4; ++i) psi[i] = Complex(rng() % 7 - 3.0, rng() % 5 - 2.0);
    psi.normalize();
    const RMatrix g = covariance_matrix(psi, model);
    CHECK(max_abs(g - g.transpose()) == 0.0);
    CHECK(Eigen::SelfAdjointEigenSolver<RMatrix>(g).eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("finite-temperature bound") {
  SUBCASE("commuting qubit saturates") {
    const auto model = local_field_chain(1);
    const double b = finite_temperature_bound(model, RVector::Zero(1), 2.0, RVector{{1.0}});
    CHECK(b == doctest::Approx(1.0).epsilon(1e-14));
    const BoundReport r = bound_report(model, RVector::Zero(1), 2.0, RVector{{1.0}});
    CHECK(r.finite_T_saturated);
  }
  SUBCASE("dominates the QFI on random models") {
    std::mt19937_64 rng(44);
    for (int k = 0; k < 40; ++k) {
      const auto model = random_local_model(rng, {1 + k % 2, 1 + (k / 2) % 2}, k % 3);
      const RVector theta = t::random_vector(rng, 2, -1, 1);
      const RVector n = t::random_vector(rng, 2, -1, 1);
      const double beta = 0.2 + (k % 5);
      const BoundReport r = bound_report(model, theta, beta, n);
      CHECK(within_bound(r.qfi_value, r.finite_T_bound));
      REQUIRE(r.gamma_HL_bound.has_value());
      CHECK(within_bound(r.finite_T_bound, *r.gamma_HL_bound));
    }
  }
  SUBCASE("single parameter chain stays below beta^2 N^2 / 4") {
    for (int n = 1; n <= 6; ++n) {
      const double beta = 1.5;
      const BoundReport r = bound_report(local_field_chain(n), RVector{{0.3}}, beta, RVector{{1.0}});
      CHECK(r.qfi_value <= beta * beta * n * n / 4.0);
      CHECK(*r.gamma_HL_bound == doctest::Approx(beta * beta * n * n / 4.0));
    }
  }
}

TEST_CASE("gamma_HL") {
  CHECK(gamma_HL(GhzSpec{{5, 3}, {1, 1}, 1.0}, RVector{{1, 0}}) == doctest::Approx(25.0 / 4));
  const double s = 1 / std::sqrt(2.0);
  CHECK(gamma_HL(GhzSpec{{4, 4}, {1, 1}, 1.0}, RVector{{s, s}}) == doctest::Approx(8.0));
  CHECK(gamma_HL(GhzSpec{{4, 4}, {1, -1}, 1.0}, RVector{{s, -s}}) == doctest::Approx(8.0));
  CHECK_THROWS_AS(gamma_HL(GhzSpec{{4, 4}, {1, 1}, 1.0}, RVector{{s, -s}}), InvalidArgument);
  CHECK_THROWS_AS(gamma_HL(GhzSpec{{4, 4}, {1, 1}, 1.0}, RVector{{s}}), DimensionMismatch);
  CHECK_THROWS(gamma_HL(GhzSpec{{0, 4}, {1, 1}, 1.0}, RVector{{s, s}}));
  CHECK_THROWS(gamma_HL(GhzSpec{{1, 4}, {1, 2}, 1.0}, RVector{{s, s}}));
  // zero entry takes eps = +1
  const GhzSpec spec = ghz_spec_for(LocalStructure{{2, 3}, 1.0}, RVector{{0.0, -1.0}});
  CHECK(spec.signs == std::vector<int>{1, -1});
}

TEST_CASE("ghz_state") {
  SUBCASE("cat state") {
    const CVector psi = ghz_state(GhzSpec{{2}, {1}, 1.0});
    CVector expected = CVector::Zero(4);
    expected[0] = expected[3] = 1 / std::sqrt(2.0);
    CHECK(max_abs(psi - expected) == 0.0);
  }
  SUBCASE("normalised, zero mean, saturating for every pattern") {
    std::mt19937_64 rng(8);
    for (int m = 1; m <= 3; ++m) {
      for (int sizes = 0; sizes < 9; ++sizes) {
        std::vector<int> blocks;
        for (int k = 0; k < m; ++k) blocks.push_back(1 + (sizes + k * 2) % 3);
        const auto model = disjoint_blocks_model(blocks);
        for (int pattern = 0; pattern < (1 << m); ++pattern) {
          RVector n = t::random_vector(rng, m, 0.05, 1);
          for (int k = 0; k < m; ++k) if (pattern & (1 << k)) n[k] = -n[k];
          const GhzSpec spec = ghz_spec_for(*model.local_structure, n);
          const CVector psi = ghz_state(spec);
          CHECK(std::abs(psi.norm() - 1.0) <= 1e-14);
          const CMatrix he = effective_generator(model, n);
          CHECK(std::abs(psi.dot(he * psi)) <= 1e-14);
          const double q = n.dot(covariance_matrix(psi, model) * n);
          CHECK(std::abs(q - gamma_HL(spec, n)) <= 1e-12);
        }
      }
    }
  }
  SUBCASE("size limit") {
    CHECK_THROWS_AS(ghz_state(GhzSpec{{7, 6}, {1, 1}, 1.0}), SizeLimitExceeded);
  }
}

TEST_CASE("energy_gap") {
  CHECK(energy_gap(eigendecompose(t::sz())) == doctest::Approx(2.0));
  CHECK(energy_gap(eigendecompose(assemble(zx_qubit(), RVector{{1, 0}}))) == doctest::Approx(2.0));
  const IsingConfig cfg{2, 1.0, 0.0, 0.0};
  const auto ring = eigendecompose(assemble(ising_alternating(cfg), ising_theta(cfg)));
  CHECK_THROWS_AS(energy_gap(ring), DegenerateGroundState);
  CHECK_THROWS_AS(energy_gap(eigendecompose(CMatrix::Identity(4, 4))), DegenerateSpectrum);
  CHECK_THROWS_AS(energy_gap(eigendecompose(CMatrix::Identity(1, 1))), InvalidArgument);
}

TEST_CASE("zero-temperature quantities") {
  SUBCASE("two-level closed form and saturation") {
    const RVector theta{{1, 0}}, n{{0, 1}};
    CHECK(zero_temperature_limit(zx_qubit(), theta, n) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(zero_temperature_bound(zx_qubit(), theta, n) == doctest::Approx(1.0).epsilon(1e-14));
    const BoundReport r = bound_report(zx_qubit(), theta, 3.0, n);
    CHECK(r.zero_T_saturated);
    CHECK(r.zero_T_status == "ok");
  }
  SUBCASE("converges exponentially") {
    const RVector theta{{1, 0}}, n{{0, 1}};
    const double v = quadratic_form(qfi_matrix(zx_qubit(), theta, 20.0), n);
    CHECK(std::abs(v - 1.0) <= 10.0 * std::exp(-20.0 * 2.0) + 4 * DBL_EPSILON);
    // F = tanh^2(beta) here
    CHECK(quadratic_form(qfi_matrix(zx_qubit(), theta, 1.0), n) ==
          doctest::Approx(std::pow(std::tanh(1.0), 2)).epsilon(1e-12));
  }
  SUBCASE("commuting model has zero limit") {
    const auto model = disjoint_blocks_model({1, 2});
    CHECK(zero_temperature_limit(model, RVector{{0.5, 0.8}}, RVector{{1, 1}}) <= 1e-14);
  }
  SUBCASE("degenerate ground state") {
    const IsingConfig cfg{2, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(zero_temperature_limit(ising_alternating(cfg), ising_theta(cfg), RVector{{1, 1}}),
                    DegenerateGroundState);
    const BoundReport r = bound_report(ising_alternating(cfg), ising_theta(cfg), 1.0, RVector{{1, 1}});
    CHECK(r.zero_T_status == "degenerate_ground_state");
    CHECK_FALSE(r.gap.has_value());
  }
  SUBCASE("bound dominates the limit on random gapped models") {
    std::mt19937_64 rng(90);
    int tested = 0;
    for (int k = 0; k < 30; ++k) {
      const auto model = random_pauli_model(rng, 2 + k % 2, 2);
      const RVector theta = t::random_vector(rng, 2, -1, 1);
      const RVector n = t::random_vector(rng, 2, -1, 1);
      try {
        const double lim = zero_temperature_limit(model, theta, n);
        const double bnd = zero_temperature_bound(model, theta, n);
        CHECK(within_bound(lim, bnd));
        ++tested;
      } catch (const DegenerateGroundState&) {
      }
    }
    CHECK(tested >= 20);
  }
  SUBCASE("chain bound scales as N^2 / gap^2") {
    // all spins down is the unique ground state once theta > 0
    for (int n = 1; n <= 4; ++n) {
      const auto model = local_field_chain(n);
      const double theta = 1.0;
      const double gap = energy_gap(eigendecompose(assemble(model, RVector{{theta}})));
      CHECK(gap == doctest::Approx(1.0));
      CHECK(zero_temperature_bound(model, RVector{{theta}}, RVector{{1.0}}) ==
            doctest::Approx(double(n * n)));
    }
  }
}
