#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "thermoqfi/operators.hpp"

namespace tqfi {

/// Ring of 2N spins, H = -J sum_i Z_i Z_{i+1} + B1 sum_even Z + B2 sum_odd Z
/// (0-based sites, cyclic).
struct IsingConfig {
  int n_pairs = 1;
  double coupling = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

struct TransferResult {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double log_partition = 0.0;
  RMatrix qfi_2x2;
};

/// Lowest two distinct classical energies of the Ising ring.
struct IsingLevels {
  double ground_energy = 0.0;
  double ground_degeneracy = 0.0;
  std::optional<double> first_excited;
};

void validate(const IsingConfig& cfg);

ParamHamiltonian ising_alternating(const IsingConfig& cfg);
inline RVector ising_theta(const IsingConfig& cfg) { return RVector{{cfg.b1, cfg.b2}}; }

/// Per-site transfer eigenvalues: Z = lambda_+^{2N} + lambda_-^{2N} on a ring
/// of 2N sites. They are the square roots of the eigenvalues of the two-site
/// transfer matrix P(B1) C P(B2) C.
std::pair<double, double> transfer_lambdas(double coupling, double b1, double b2, double beta);

/// Closed form e^{beta J}(cosh t +- sqrt(sinh^2 t + e^{-4 beta J})), t = beta B.
/// Valid for a uniform field B1 = B2 = B only.
std::pair<double, double> uniform_field_lambdas(double coupling, double field, double beta);

/// ln(lambda_+^{2N} + lambda_-^{2N}) without overflow.
double transfer_log_partition(const IsingConfig& cfg, double beta);

/// Field-dependent part of the log partition function: ln Z - 2N beta |J|.
double transfer_field_log_partition(const IsingConfig& cfg, double beta);

/// 2x2 QFI from central second differences of ln Z in (B1, B2), step
/// 1e-4 max(1, |B1|, |B2|).
TransferResult transfer_qfi(const IsingConfig& cfg, double beta);

IsingLevels ising_classical_levels(const IsingConfig& cfg);

/// Gap above a unique classical ground state of the ring, for any N.
/// Throws DegenerateGroundState / DegenerateSpectrum.
double ising_classical_gap(const IsingConfig& cfg);

ParamHamiltonian local_field_chain(int num_qubits);
ParamHamiltonian single_qubit_xyz();
ParamHamiltonian disjoint_blocks_model(const std::vector<int>& block_sizes);

/// Random Pauli-string model; every generator and the fixed part are sums of
/// 1-3 random strings with coefficients in [-1, 1].
ParamHamiltonian random_pauli_model(std::mt19937_64& rng, int num_qubits, int num_params,
                                    bool with_fixed_part = true);

/// Model with all terms built from Z strings, so every operator commutes.
ParamHamiltonian random_diagonal_model(std::mt19937_64& rng, int num_qubits, int num_params);

/// Generators are sums of identical +-1/2 local terms (random axis per
/// parameter) on disjoint blocks; the fixed part is random and generally does
/// not commute with them.
ParamHamiltonian random_local_model(std::mt19937_64& rng, const std::vector<int>& block_sizes,
                                    int fixed_terms);

}  // namespace tqfi
