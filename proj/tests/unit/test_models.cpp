#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "thermoqfi/models.hpp"
#include "thermoqfi/qfi.hpp"

using namespace tqfi;
namespace t = tqfi::testing;

TEST_CASE("ising_alternating") {
  SUBCASE("smallest ring") {
    const auto m = ising_alternating({1, 1.0, 0.0, 0.0});
    CHECK(m.num_qubits == 2);
    CHECK(max_abs(assemble_generator(m, 0) - t::embed(t::sz(), 0, 2)) == 0.0);
    CHECK(max_abs(assemble_generator(m, 1) - t::embed(t::sz(), 1, 2)) == 0.0);
  }
  SUBCASE("matches an explicit ring") {
    const IsingConfig cfg{3, 0.7, 0.2, -0.4};
    const int n = 6;
    CMatrix expected = CMatrix::Zero(64, 64);
    for (int i = 0; i < n; ++i) {
      expected -= 0.7 * t::embed(t::sz(), i, n) * t::embed(t::sz(), (i + 1) % n, n);
      expected += (i % 2 == 0 ? 0.2 : -0.4) * t::embed(t::sz(), i, n);
    }
    CHECK(max_abs(assemble(ising_alternating(cfg), ising_theta(cfg)) - expected) <= 1e-14);
  }
  SUBCASE("everything commutes, field terms have spread 2") {
    const IsingConfig cfg{2, 1.0, 0.3, 0.1};
    const auto m = ising_alternating(cfg);
    const CMatrix h = assemble(m, ising_theta(cfg));
    for (int mu = 0; mu < 2; ++mu) CHECK(commutes(h, assemble_generator(m, mu)));
    CHECK(commutes(assemble_generator(m, 0), assemble_generator(m, 1)));
    CHECK(spectral_spread(t::sz()) == 2.0);
    CHECK(m.local_structure->local_spread == 2.0);
    CHECK(m.local_structure->block_sizes == std::vector<int>{2, 2});
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(ising_alternating({0, 1.0, 0.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(ising_alternating({7, 1.0, 0.0, 0.0}), SizeLimitExceeded);
    CHECK_THROWS_AS(ising_alternating({2, std::nan(""), 0.0, 0.0}), InvalidArgument);
  }
}

TEST_CASE("transfer lambdas") {
  SUBCASE("zero field") {
    const auto [lp, lm] = transfer_lambdas(1.0, 0.0, 0.0, 1.0);
    const double e = std::exp(1.0);
    CHECK(lp == doctest::Approx(e + 1 / e).epsilon(1e-14));
    CHECK(lm == doctest::Approx(e - 1 / e).epsilon(1e-14));
  }
  SUBCASE("uniform-field formula agrees on the B1 = B2 line") {
    for (double j : {-0.8, 0.0, 0.5, 3.0}) {
      for (double b : {-0.3, 0.0, 0.1, 1.2}) {
        for (double beta : {0.4, 1.0, 2.5}) {
          const auto exact = transfer_lambdas(j, b, b, beta);
          const auto eq = uniform_field_lambdas(j, b, beta);
          CHECK(exact.first == doctest::Approx(eq.first).epsilon(1e-12));
          // the closed form goes negative for J < 0; only |lambda| enters Z
          CHECK(exact.second == doctest::Approx(std::abs(eq.second)).epsilon(1e-9));
        }
      }
    }
  }
  SUBCASE("product of lambda^2 is the two-site determinant") {
    for (double j : {0.3, 1.0}) {
      for (double b1 : {-0.2, 0.5}) {
        const double b2 = 0.1, beta = 0.9;
        const auto [lp, lm] = transfer_lambdas(j, b1, b2, beta);
        const double k = beta * j;
        const double det = std::pow(std::exp(2 * k) - std::exp(-2 * k), 2);
        const double tr = 2 * std::exp(2 * k) * std::cosh(-beta * (b1 + b2)) +
                          2 * std::exp(-2 * k) * std::cosh(beta * (b1 - b2));
        CHECK(lp * lp * lm * lm == doctest::Approx(det).epsilon(1e-12));
        CHECK(lp * lp + lm * lm == doctest::Approx(tr).epsilon(1e-12));
        CHECK(lp >= lm);
        CHECK(lm >= 0.0);
      }
    }
  }
  SUBCASE("no overflow at strong coupling") {
    const IsingConfig cfg{1000, 50.0, 0.1, -0.05};
    const double lz = transfer_log_partition(cfg, 2.0);
    CHECK(std::isfinite(lz));
    // aligned ground state: -2N J - N |B1 + B2|
    CHECK(lz == doctest::Approx(2.0 * (2000 * 50.0 + 1000 * 0.05)).epsilon(1e-6));
  }
}

TEST_CASE("transfer ln Z against enumeration") {
  SUBCASE("reference point") {
    const IsingConfig cfg{3, 1.0, 0.1, 0.2};
    const double lz = transfer_log_partition(cfg, 0.7);
    CHECK(lz == doctest::Approx(t::ising_log_z_enumerated(3, 1.0, 0.1, 0.2, 0.7)).epsilon(1e-12));
    CHECK(lz == doctest::Approx(5.688903).epsilon(1e-6));
    const double dense = log_partition(ising_alternating(cfg), ising_theta(cfg), 0.7);
    CHECK(lz == doctest::Approx(dense).epsilon(1e-9));
  }
  SUBCASE("lattice") {
    for (int n = 1; n <= 4; ++n) {
      for (double j : {-1.0, 0.0, 0.4, 2.0}) {
        for (double b1 : {-0.3, 0.25}) {
          for (double b2 : {0.0, 0.6}) {
            for (double beta : {0.3, 1.5}) {
              const double lz = transfer_log_partition({n, j, b1, b2}, beta);
              const double ref = t::ising_log_z_enumerated(n, j, b1, b2, beta);
              CHECK(std::abs(lz - ref) <= 1e-9 * std::abs(ref) + 1e-12);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("transfer_qfi") {
  SUBCASE("matches the dense QFI") {
    for (int n : {3, 4}) {
      const IsingConfig cfg{n, 0.8, 0.15, -0.05};
      const TransferResult tr = transfer_qfi(cfg, 0.9);
      const RMatrix dense = qfi_matrix(ising_alternating(cfg), ising_theta(cfg), 0.9).entries;
      CHECK(max_abs(tr.qfi_2x2 - dense) <= 1e-6 * max_abs(dense));
      CHECK(std::abs(tr.qfi_2x2(0, 1) - tr.qfi_2x2(1, 0)) <= 1e-9 * max_abs(dense));
    }
  }
  SUBCASE("swap symmetry of the fields") {
    const TransferResult a = transfer_qfi({10, 6.0, 0.13, -0.07}, 0.5);
    const TransferResult b = transfer_qfi({10, 6.0, -0.07, 0.13}, 0.5);
    CHECK(a.qfi_2x2(0, 0) == doctest::Approx(b.qfi_2x2(1, 1)).epsilon(1e-9));
    CHECK(a.qfi_2x2(0, 1) == doctest::Approx(b.qfi_2x2(0, 1)).epsilon(1e-9));
  }
  SUBCASE("anti-diagonals are nearly flat at strong coupling") {
    const RVector n{{0.5, 0.5}};
    const double f0 = quadratic_form(transfer_qfi({10, 6.0, 0.0, 0.0}, 0.5).qfi_2x2, n);
    for (double d : {0.05, 0.1, 0.2}) {
      const double fd = quadratic_form(transfer_qfi({10, 6.0, d, -d}, 0.5).qfi_2x2, n);
      CHECK(std::abs(fd - f0) <= 1e-4 * f0);
    }
    // but not exactly: the staggered field still enters ln Z
    const double far = quadratic_form(transfer_qfi({10, 6.0, 0.2, -0.2}, 0.5).qfi_2x2, n);
    CHECK(std::abs(far - f0) > 1e-9);
  }
  SUBCASE("decreases with the total field") {
    const RVector n{{0.5, 0.5}};
    double prev = INFINITY;
    for (double s : {0.0, 0.05, 0.1, 0.2, 0.4}) {
      const double f = quadratic_form(transfer_qfi({10, 1.0, s / 2, s / 2}, 0.5).qfi_2x2, n);
      CHECK(f < prev);
      prev = f;
    }
  }
  SUBCASE("N = 20 stays under beta^2 N^2") {
    for (double j : {0.0, 1.0, 5.0, 10.0}) {
      const double f = quadratic_form(transfer_qfi({20, j, 0.0, 0.06}, 0.5).qfi_2x2, RVector{{0.5, 0.5}});
      CHECK(f > 0.0);
      CHECK(f <= 100.0);
    }
  }
}

TEST_CASE("classical levels") {
  const IsingLevels lv = ising_classical_levels({2, 1.0, 0.0, 0.0});
  CHECK(lv.ground_energy == doctest::Approx(-4.0));
  CHECK(lv.ground_degeneracy == 2.0);
  CHECK_THROWS_AS(ising_classical_gap({2, 1.0, 0.0, 0.0}), DegenerateGroundState);
  for (int n = 1; n <= 4; ++n) {
    const IsingConfig cfg{n, 0.6, 0.3, -0.1};
    const auto spec = eigendecompose(assemble(ising_alternating(cfg), ising_theta(cfg)));
    CHECK(ising_classical_levels(cfg).ground_energy == doctest::Approx(spec.eigenvalues[0]));
    CHECK(ising_classical_gap(cfg) == doctest::Approx(spec.eigenvalues[1] - spec.eigenvalues[0]));
  }
  // far beyond dense reach: flipping the whole ring costs 2 N B2, below a domain wall pair
  CHECK(ising_classical_gap({20, 1.0, 0.0, 0.06}) == doctest::Approx(2.4));
  // stronger field: a single flip on the field-free sublattice (4J) wins
  CHECK(ising_classical_gap({20, 1.0, 0.0, 0.5}) == doctest::Approx(4.0));
  CHECK(ising_classical_gap({20, 1.0, 0.5, 0.5}) == doctest::Approx(5.0));
}

TEST_CASE("xyz model") {
  const auto m = single_qubit_xyz();
  CHECK(m.num_params() == 3);
  CHECK_FALSE(commutes(assemble_generator(m, 0), assemble_generator(m, 2)));
  const double tt = 0.8, beta = 1.2;
  const RMatrix fz = qfi_matrix(m, RVector{{0, 0, tt}}, beta).entries;
  const RMatrix fx = qfi_matrix(m, RVector{{tt, 0, 0}}, beta).entries;
  // rotating z onto x maps parameter 2 -> 0 and 0 -> 2
  CHECK(fz(2, 2) == doctest::Approx(fx(0, 0)));
  CHECK(fz(0, 0) == doctest::Approx(fx(2, 2)));
  CHECK(fz(1, 1) == doctest::Approx(fx(1, 1)));
  CHECK(max_abs(fz - fz.transpose()) <= 1e-12);
}

TEST_CASE("disjoint blocks") {
  const auto m = disjoint_blocks_model({2, 3});
  CHECK(m.num_qubits == 5);
  CHECK(m.fixed_terms.empty());
  CHECK(max_abs(assemble_generator(m, 1) - (t::embed(t::sz(), 2, 5) + t::embed(t::sz(), 3, 5) +
                                             t::embed(t::sz(), 4, 5)) / 2.0) == 0.0);
  const auto one = disjoint_blocks_model({4});
  CHECK(max_abs(assemble_generator(one, 0) - assemble_generator(local_field_chain(4), 0)) == 0.0);
  CHECK_THROWS_AS(disjoint_blocks_model({}), InvalidArgument);
  CHECK_THROWS_AS(disjoint_blocks_model({7, 6}), SizeLimitExceeded);
  CHECK_THROWS_AS(disjoint_blocks_model({2, 0}), InvalidArgument);
}

TEST_CASE("random builders are reproducible and valid") {
  std::mt19937_64 a(99), b(99);
  const auto ma = random_pauli_model(a, 3, 2);
  const auto mb = random_pauli_model(b, 3, 2);
  const RVector th{{0.3, -0.6}};
  CHECK(max_abs(assemble(ma, th) - assemble(mb, th)) == 0.0);
  std::mt19937_64 c(5);
  const auto diag = random_diagonal_model(c, 3, 2);
  const CMatrix h = assemble(diag, th);
  CHECK(max_abs(CMatrix(h.diagonal().asDiagonal()) - h) == 0.0);
}
