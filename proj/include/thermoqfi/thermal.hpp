#pragma once

#include "thermoqfi/operators.hpp"

namespace tqfi {

/// Gibbs state rho = exp(-beta H) / Z held in the eigenbasis of H.
struct ThermalState {
  double beta = 0.0;
  Spectrum spectrum;
  RVector probs;      // p_i, aligned with spectrum.eigenvalues
  RVector log_probs;  // ln p_i, exact even where p_i hits the floor
  double log_partition = 0.0;

  Eigen::Index dimension() const { return probs.size(); }
  /// Dense density matrix V diag(p) V^dagger.
  CMatrix density_matrix() const;
  /// Tr[rho A].
  double expectation(const CMatrix& a) const;
};

enum class SuperopKind {
  Bogoliubov,         // J_B[A] = (rho A + A rho) / 2
  BogoliubovInverse,  // J_B^{-1}
  KuboMori,           // J_L[A] = int_0^1 rho^s A rho^{1-s} ds
  ComposedJ,          // J_L o J_B^{-1} o J_L
};

inline constexpr double kProbabilityFloor = 1e-300;
inline constexpr double kDegeneracyThreshold = 1e-12;

/// p_i from max-shifted exponentials; throws InvalidArgument for beta < 0 or
/// non-finite beta.
ThermalState gibbs(const Spectrum& spectrum, double beta);

double bogoliubov_weight(double a, double b);
/// (a - b) / (ln a - ln b); at degeneracy the common limit (a + b)/2 -> a.
double kubo_mori_weight(double a, double b);
/// 2 (a - b)^2 / ((ln a - ln b)^2 (a + b)); never exceeds (a + b)/2.
double kmb_weight(double a, double b);

/// Weight of eigenbasis element (i, j) for the given kind.
double superop_weight(SuperopKind kind, const ThermalState& state, Eigen::Index i,
                      Eigen::Index j);

/// Full weight table; entry (i, j) multiplies the (i, j) eigenbasis element.
RMatrix weight_table(SuperopKind kind, const ThermalState& state);

HermitianOperator apply_superoperator(SuperopKind kind, const ThermalState& state,
                                      const HermitianOperator& op);

/// Tr[B kind(A)] from eigenbasis matrix elements.
double trace_pair(const ThermalState& state, const HermitianOperator& b, SuperopKind kind,
                  const HermitianOperator& a);

}  // namespace tqfi
