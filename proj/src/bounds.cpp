#include "thermoqfi/bounds.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace tqfi {

namespace {

RMatrix covariance_from(const std::vector<CMatrix>& gens, const RVector& probs,
                        const RVector& means) {
  const auto m = static_cast<Eigen::Index>(gens.size());
  RMatrix gamma(m, m);
  for (Eigen::Index mu = 0; mu < m; ++mu) {
    for (Eigen::Index nu = 0; nu <= mu; ++nu) {
      const auto& a = gens[static_cast<std::size_t>(mu)];
      const auto& b = gens[static_cast<std::size_t>(nu)];
      // Re Tr[rho A B] = Re sum_ij p_i A_ij conj(B_ij)
      const double second =
          (probs.asDiagonal() * (a.array() * b.conjugate().array()).matrix()).sum().real();
      gamma(mu, nu) = gamma(nu, mu) = second - means[mu] * means[nu];
    }
  }
  return gamma;
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kSaturationTolerance * (1.0 + std::abs(b));
}

}  // namespace

RMatrix covariance_matrix(const ThermalModelPoint& point) {
  return covariance_from(point.generators, point.state.probs, point.means);
}

RMatrix covariance_matrix(const ThermalState& state, const ParamHamiltonian& model) {
  if (state.dimension() != model.dimension()) {
    throw DimensionMismatch("state and model dimensions differ");
  }
  std::vector<CMatrix> gens;
  RVector means(model.num_params());
  for (int mu = 0; mu < model.num_params(); ++mu) {
    gens.push_back(to_eigenbasis(state.spectrum, assemble_generator(model, mu)));
    means[mu] = (state.probs.array() * gens.back().diagonal().real().array()).sum();
  }
  return covariance_from(gens, state.probs, means);
}

RMatrix covariance_matrix(const CVector& psi, const ParamHamiltonian& model) {
  if (psi.size() != model.dimension()) {
    throw DimensionMismatch("state and model dimensions differ");
  }
  const int m = model.num_params();
  std::vector<CVector> applied;
  RVector means(m);
  for (int mu = 0; mu < m; ++mu) {
    applied.push_back(assemble_generator(model, mu) * psi);
    means[mu] = psi.dot(applied.back()).real();
  }
  RMatrix gamma(m, m);
  for (int mu = 0; mu < m; ++mu) {
    for (int nu = 0; nu <= mu; ++nu) {
      // <psi| (A B + B A) / 2 |psi> = Re <A psi | B psi>
      const double second = applied[static_cast<std::size_t>(mu)]
                                .dot(applied[static_cast<std::size_t>(nu)])
                                .real();
      gamma(mu, nu) = gamma(nu, mu) = second - means[mu] * means[nu];
    }
  }
  return gamma;
}

double finite_temperature_bound(const ParamHamiltonian& model, const RVector& theta,
                                double beta, const RVector& n) {
  const ThermalModelPoint p = thermal_point(model, theta, beta);
  return beta * beta * quadratic_form(covariance_matrix(p), n);
}

GhzSpec ghz_spec_for(const LocalStructure& structure, const RVector& n) {
  if (static_cast<Eigen::Index>(structure.block_sizes.size()) != n.size()) {
    throw DimensionMismatch("direction length differs from block count");
  }
  GhzSpec spec;
  spec.block_sizes = structure.block_sizes;
  spec.local_spread = structure.local_spread;
  for (Eigen::Index k = 0; k < n.size(); ++k) spec.signs.push_back(n[k] < 0.0 ? -1 : 1);
  return spec;
}

namespace {

void check_spec(const GhzSpec& spec) {
  if (spec.block_sizes.empty() || spec.block_sizes.size() != spec.signs.size()) {
    throw InvalidArgument("GHZ spec needs one sign per block");
  }
  for (std::size_t k = 0; k < spec.block_sizes.size(); ++k) {
    if (spec.block_sizes[k] < 1) throw InvalidArgument("GHZ block sizes must be >= 1");
    if (spec.signs[k] != 1 && spec.signs[k] != -1) throw InvalidArgument("GHZ signs must be +-1");
  }
}

}  // namespace

double gamma_HL(const GhzSpec& spec, const RVector& n) {
  check_spec(spec);
  if (static_cast<Eigen::Index>(spec.block_sizes.size()) != n.size()) {
    throw DimensionMismatch("direction length differs from block count");
  }
  double dot = 0.0;
  for (Eigen::Index k = 0; k < n.size(); ++k) {
    const int eps = spec.signs[static_cast<std::size_t>(k)];
    if (n[k] != 0.0 && (n[k] > 0.0) != (eps > 0)) {
      throw InvalidArgument("GHZ sign of block " + std::to_string(k) + " disagrees with sgn(n)");
    }
    dot += n[k] * eps * spec.block_sizes[static_cast<std::size_t>(k)] * spec.local_spread;
  }
  return dot * dot / 4.0;
}

CVector ghz_state(const GhzSpec& spec) {
  check_spec(spec);
  const int qubits = std::accumulate(spec.block_sizes.begin(), spec.block_sizes.end(), 0);
  if (qubits > kMaxDenseQubits) {
    throw SizeLimitExceeded("GHZ state on " + std::to_string(qubits) + " qubits exceeds the dense limit");
  }
  // Branch bits: a block aligned with +1 sits in |0...0>, with -1 in |1...1>.
  std::uint64_t aligned = 0;
  int offset = 0;
  for (std::size_t k = 0; k < spec.block_sizes.size(); ++k) {
    for (int q = 0; q < spec.block_sizes[k]; ++q, ++offset) {
      if (spec.signs[k] < 0) aligned |= std::uint64_t{1} << (qubits - 1 - offset);
    }
  }
  const std::uint64_t full = (std::uint64_t{1} << qubits) - 1;
  CVector psi = CVector::Zero(Eigen::Index{1} << qubits);
  psi[static_cast<Eigen::Index>(aligned)] = 1.0 / std::sqrt(2.0);
  psi[static_cast<Eigen::Index>(aligned ^ full)] = 1.0 / std::sqrt(2.0);
  return psi;
}

double energy_gap(const Spectrum& spectrum) {
  const auto& e = spectrum.eigenvalues;
  if (e.size() < 2) throw InvalidArgument("energy gap needs dimension >= 2");
  const double spread = spectral_spread(spectrum);
  const double tol = 1e-10 * (1.0 + spread);
  if (spread <= tol) throw DegenerateSpectrum("all energy levels coincide");
  if (e[1] - e[0] <= tol) throw DegenerateGroundState("ground level is degenerate");
  return e[1] - e[0];
}

double zero_temperature_limit(const ParamHamiltonian& model, const RVector& theta,
                              const RVector& n) {
  const Spectrum s = eigendecompose(assemble(model, theta));
  energy_gap(s);
  const CMatrix he = to_eigenbasis(s, effective_generator(model, n));
  double sum = 0.0;
  for (Eigen::Index i = 1; i < s.dimension(); ++i) {
    const double de = s.eigenvalues[i] - s.eigenvalues[0];
    sum += 4.0 * std::norm(he(0, i)) / (de * de);
  }
  return sum;
}

double zero_temperature_bound(const ParamHamiltonian& model, const RVector& theta,
                              const RVector& n) {
  const double gap = energy_gap(eigendecompose(assemble(model, theta)));
  const double spread = spectral_spread(effective_generator(model, n));
  return spread * spread / (gap * gap);
}

BoundReport bound_report(const ParamHamiltonian& model, const RVector& theta, double beta,
                         const RVector& n) {
  const ThermalModelPoint p = thermal_point(model, theta, beta);
  BoundReport r;
  r.direction = n;
  r.qfi_value = quadratic_form(qfi_matrix(p, theta), n);
  r.finite_T_bound = beta * beta * quadratic_form(covariance_matrix(p), n);
  r.finite_T_saturated = nearly_equal(r.qfi_value, r.finite_T_bound);
  if (model.local_structure) {
    r.gamma_HL_bound = beta * beta * gamma_HL(ghz_spec_for(*model.local_structure, n), n);
    r.gamma_HL_saturated = nearly_equal(r.finite_T_bound, *r.gamma_HL_bound);
  }
  try {
    r.gap = energy_gap(p.state.spectrum);
    r.zero_T_limit = zero_temperature_limit(model, theta, n);
    r.zero_T_bound = zero_temperature_bound(model, theta, n);
    r.zero_T_saturated = nearly_equal(*r.zero_T_limit, *r.zero_T_bound);
  } catch (const DegenerateGroundState&) {
    r.zero_T_status = "degenerate_ground_state";
  } catch (const DegenerateSpectrum&) {
    r.zero_T_status = "degenerate_spectrum";
  }
  return r;
}

}  // namespace tqfi
