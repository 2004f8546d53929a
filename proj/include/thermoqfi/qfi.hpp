#pragma once

#include <vector>

#include "thermoqfi/thermal.hpp"

namespace tqfi {

struct QfiMatrix {
  RMatrix entries;
  double beta = 0.0;
  RVector theta;
};

/// Commutativity diagnostics for simultaneous attainability of the
/// multiparameter bound.
struct AttainabilityReport {
  RMatrix weak;    // Im Tr(rho [L_mu, L_nu])
  RMatrix strong;  // ||[L_mu, L_nu]||_2
  std::vector<bool> cond_H_commute;                // [H, H_mu] = 0
  std::vector<std::vector<bool>> cond_gen_commute;  // [H_mu, H_nu] = 0
};

struct Measurement {
  std::vector<CMatrix> projectors;  // rank one, complete
  RVector outcomes;                 // eigenvalues of L_mu
};

/// Generators and Gibbs state of a model at (theta, beta), with every
/// generator expressed in the eigenbasis of H(theta).
struct ThermalModelPoint {
  ThermalState state;
  std::vector<CMatrix> generators;  // H_mu in the H eigenbasis
  RVector means;                    // Tr[rho H_mu]
};

ThermalModelPoint thermal_point(const ParamHamiltonian& model, const RVector& theta,
                                double beta);

QfiMatrix qfi_matrix(const ParamHamiltonian& model, const RVector& theta, double beta);
QfiMatrix qfi_matrix(const ThermalModelPoint& point, const RVector& theta);

/// n^T F n with n used exactly as given. Throws InvalidArgument for n = 0.
double quadratic_form(const QfiMatrix& f, const RVector& n);
double quadratic_form(const RMatrix& f, const RVector& n);

/// H^e = sum_i n_i H_i.
HermitianOperator effective_generator(const ParamHamiltonian& model, const RVector& n);

/// d rho / d theta_mu = -J_L[beta H_mu] + rho Tr[beta H_mu rho].
HermitianOperator density_derivative(const ThermalModelPoint& point, int mu);

/// Symmetric logarithmic derivative L_mu solving (rho L + L rho)/2 = d rho.
HermitianOperator sld(const ParamHamiltonian& model, const RVector& theta, double beta, int mu);
HermitianOperator sld(const ThermalModelPoint& point, int mu);

AttainabilityReport attainability(const ParamHamiltonian& model, const RVector& theta,
                                  double beta);

/// Projective measurement onto the eigenbasis of L_mu.
Measurement optimal_measurement(const ParamHamiltonian& model, const RVector& theta,
                                double beta, int mu);

/// Classical Fisher information of a fixed measurement with respect to
/// theta_mu, from central differences of outcome probabilities.
double classical_fisher_fd(const ParamHamiltonian& model, const RVector& theta, double beta,
                           const Measurement& m, int mu, double step = 1e-5);

/// Independent QFI: central differences of the dense Gibbs density matrix fed
/// to the SLD spectral sum. step <= 0 selects 1e-5 max(1, ||theta||_inf).
QfiMatrix qfi_oracle_fd(const ParamHamiltonian& model, const RVector& theta, double beta,
                        double step = 0.0);

/// ln Tr exp(-beta H(theta)).
double log_partition(const ParamHamiltonian& model, const RVector& theta, double beta);

/// Central second differences of ln Z. step <= 0 selects
/// 1e-4 max(1, ||theta||_inf). Equals the QFI only for commuting models.
RMatrix logZ_hessian_fd(const ParamHamiltonian& model, const RVector& theta, double beta,
                        double step = 0.0);

/// Central second differences of an arbitrary scalar function of theta.
template <typename Fn>
RMatrix hessian_fd(Fn&& fn, const RVector& x, double h) {
  const Eigen::Index m = x.size();
  RMatrix hess(m, m);
  const double f0 = fn(x);
  for (Eigen::Index i = 0; i < m; ++i) {
    RVector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    hess(i, i) = (fn(xp) - 2.0 * f0 + fn(xm)) / (h * h);
    for (Eigen::Index j = 0; j < i; ++j) {
      RVector pp = x, pm = x, mp = x, mm = x;
      pp[i] += h; pp[j] += h;
      pm[i] += h; pm[j] -= h;
      mp[i] -= h; mp[j] += h;
      mm[i] -= h; mm[j] -= h;
      hess(i, j) = hess(j, i) = (fn(pp) - fn(pm) - fn(mp) + fn(mm)) / (4.0 * h * h);
    }
  }
  return hess;
}

}  // namespace tqfi
