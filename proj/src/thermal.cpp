#include "thermoqfi/thermal.hpp"

#include <algorithm>
#include <cmath>

namespace tqfi {

ThermalState gibbs(const Spectrum& spectrum, double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw InvalidArgument("beta must be finite and nonnegative");
  }
  const Eigen::Index dim = spectrum.dimension();
  if (dim == 0) throw InvalidArgument("empty spectrum");
  const double e_min = spectrum.eigenvalues.minCoeff();
  const RVector shifted = -beta * (spectrum.eigenvalues.array() - e_min).matrix();
  const double log_sum = std::log(shifted.array().exp().sum());

  ThermalState st;
  st.beta = beta;
  st.spectrum = spectrum;
  st.log_probs = (shifted.array() - log_sum).matrix();
  st.probs = st.log_probs.array().exp().max(kProbabilityFloor).matrix();
  st.log_partition = -beta * e_min + log_sum;
  return st;
}

CMatrix ThermalState::density_matrix() const {
  return spectrum.eigenvectors * probs.cast<Complex>().asDiagonal() *
         spectrum.eigenvectors.adjoint();
}

double ThermalState::expectation(const CMatrix& a) const {
  const CMatrix ae = to_eigenbasis(spectrum, a);
  return (probs.array() * ae.diagonal().real().array()).sum();
}

namespace {

void check_prob(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw InvalidArgument("weight arguments must be positive probabilities");
  }
}

bool degenerate(double a, double b) {
  return std::abs(a - b) <= kDegeneracyThreshold * std::max(a, b);
}

// With x = ln(a/b): (a - b)/(ln a - ln b) = (a + b)/2 * r and the composed
// weight is (a + b)/2 * r^2, where r = tanh(x/2)/(x/2) lies in (0, 1].
double tanh_ratio(double x) {
  const double y = 0.5 * std::abs(x);
  // tanh(y)/y can round to just above 1 for tiny y
  return y == 0.0 ? 1.0 : std::min(1.0, std::tanh(y) / y);
}

double km_from_log_ratio(double mean, double x) { return mean * tanh_ratio(x); }

double kmb_from_log_ratio(double mean, double x) {
  const double r = tanh_ratio(x);
  return mean * r * r;
}

}  // namespace

double bogoliubov_weight(double a, double b) {
  check_prob(a);
  check_prob(b);
  return 0.5 * (a + b);
}

double kubo_mori_weight(double a, double b) {
  check_prob(a);
  check_prob(b);
  if (degenerate(a, b)) return 0.5 * (a + b);
  return km_from_log_ratio(0.5 * (a + b), std::log(a) - std::log(b));
}

double kmb_weight(double a, double b) {
  check_prob(a);
  check_prob(b);
  if (degenerate(a, b)) return 0.5 * (a + b);
  return kmb_from_log_ratio(0.5 * (a + b), std::log(a) - std::log(b));
}

double superop_weight(SuperopKind kind, const ThermalState& state, Eigen::Index i,
                      Eigen::Index j) {
  const double pi = state.probs[i];
  const double pj = state.probs[j];
  switch (kind) {
    case SuperopKind::Bogoliubov: return 0.5 * (pi + pj);
    case SuperopKind::BogoliubovInverse: return 2.0 / (pi + pj);
    case SuperopKind::KuboMori:
    case SuperopKind::ComposedJ: {
      if (i == j) return pi;
      if (degenerate(pi, pj)) return 0.5 * (pi + pj);
      const double mean = 0.5 * (pi + pj);
      const double x = state.log_probs[i] - state.log_probs[j];
      return kind == SuperopKind::KuboMori ? km_from_log_ratio(mean, x)
                                           : kmb_from_log_ratio(mean, x);
    }
  }
  return 0.0;
}

RMatrix weight_table(SuperopKind kind, const ThermalState& state) {
  const Eigen::Index d = state.dimension();
  RMatrix w(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) w(i, j) = superop_weight(kind, state, i, j);
  }
  return w;
}

HermitianOperator apply_superoperator(SuperopKind kind, const ThermalState& state,
                                      const HermitianOperator& op) {
  const CMatrix ae = to_eigenbasis(state.spectrum, op);
  const CMatrix scaled = (ae.array() * weight_table(kind, state).cast<Complex>().array()).matrix();
  return from_eigenbasis(state.spectrum, scaled);
}

double trace_pair(const ThermalState& state, const HermitianOperator& b, SuperopKind kind,
                  const HermitianOperator& a) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("trace_pair operands differ in shape");
  }
  const CMatrix ae = to_eigenbasis(state.spectrum, a);
  const CMatrix be = to_eigenbasis(state.spectrum, b);
  const RMatrix w = weight_table(kind, state);
  // Tr[B K(A)] = sum_ij B'_ji w_ij A'_ij
  return (be.transpose().array() * w.cast<Complex>().array() * ae.array()).sum().real();
}

}  // namespace tqfi
