#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermoqfi/qfi.hpp"

namespace tqfi {

/// GHZ state of M collective spins: block m holds block_sizes[m] local terms
/// aligned along signs[m].
struct GhzSpec {
  std::vector<int> block_sizes;
  std::vector<int> signs;
  double local_spread = 1.0;
};

/// Values of every bound along one direction n.
struct BoundReport {
  RVector direction;
  double qfi_value = 0.0;
  double finite_T_bound = 0.0;
  std::optional<double> gamma_HL_bound;
  std::optional<double> zero_T_limit;
  std::optional<double> zero_T_bound;
  std::optional<double> gap;
  std::string zero_T_status = "ok";

  bool finite_T_saturated = false;
  bool gamma_HL_saturated = false;
  bool zero_T_saturated = false;
};

inline constexpr double kSaturationTolerance = 1e-9;

/// Gamma_{mu nu} = Tr[rho {H_mu, H_nu}/2] - Tr[rho H_mu] Tr[rho H_nu].
RMatrix covariance_matrix(const ThermalModelPoint& point);
RMatrix covariance_matrix(const ThermalState& state, const ParamHamiltonian& model);
/// Same, for a pure state vector.
RMatrix covariance_matrix(const CVector& psi, const ParamHamiltonian& model);

/// beta^2 n^T Gamma(rho_Gibbs) n.
double finite_temperature_bound(const ParamHamiltonian& model, const RVector& theta,
                                double beta, const RVector& n);

/// Signs eps_k = sgn(n_k), with eps_k = +1 where n_k = 0.
GhzSpec ghz_spec_for(const LocalStructure& structure, const RVector& n);

/// (n . v)^2 / 4 with v_m = eps_m N_m local_spread.
double gamma_HL(const GhzSpec& spec, const RVector& n);

/// (|N_1, eps_1> ... |N_M, eps_M> + |N_1, -eps_1> ... |N_M, -eps_M>) / sqrt 2
/// in the Z basis, blocks laid out on consecutive qubits.
CVector ghz_state(const GhzSpec& spec);

/// E_1 - E_0 above a unique ground level. Throws DegenerateGroundState or
/// DegenerateSpectrum.
double energy_gap(const Spectrum& spectrum);

/// Exact beta -> infinity limit of n^T F n:
/// sum_{i>0} 4 |H^e_{0i}|^2 / (E_i - E_0)^2.
double zero_temperature_limit(const ParamHamiltonian& model, const RVector& theta,
                              const RVector& n);

/// spread(H^e)^2 / gap^2.
double zero_temperature_bound(const ParamHamiltonian& model, const RVector& theta,
                              const RVector& n);

BoundReport bound_report(const ParamHamiltonian& model, const RVector& theta, double beta,
                         const RVector& n);

/// a <= b within the relative saturation tolerance.
inline bool within_bound(double a, double b, double rel = kSaturationTolerance) {
  return a <= b + rel * (1.0 + std::abs(b));
}

}  // namespace tqfi
