#include "thermoqfi/qfi.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace tqfi {

namespace {

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw InvalidArgument("beta must be positive and finite");
  }
}

void check_index(const ThermalModelPoint& p, int mu) {
  if (mu < 0 || mu >= static_cast<int>(p.generators.size())) {
    throw InvalidArgument("parameter index " + std::to_string(mu) + " out of range");
  }
}

// ln Z at theta + offset, carried in long double end to end.
long double log_partition_extended(const ParamHamiltonian& model, const RVector& theta,
                                   const RVectorExt& offset, double beta) {
  const CMatrixExt h = assemble_extended(model, theta, offset);
  CMatrixExt off = h;
  off.diagonal().setZero();
  RVectorExt energies;
  if (off.cwiseAbs().maxCoeff() == 0.0L) {
    energies = h.diagonal().real();
  } else {
    const CMatrixExt sym = (h + h.adjoint()) / 2.0L;
    Eigen::SelfAdjointEigenSolver<CMatrixExt> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
    energies = solver.eigenvalues();
  }
  const long double b = beta;
  const long double e_min = energies.minCoeff();
  long double sum = 0.0L;
  for (Eigen::Index i = 0; i < energies.size(); ++i) sum += std::exp(-b * (energies[i] - e_min));
  return -b * e_min + std::log(sum);
}

double default_step(const RVector& theta, double scale) {
  const double inf = theta.size() ? theta.cwiseAbs().maxCoeff() : 0.0;
  return scale * std::max(1.0, inf);
}

// L_mu in the H eigenbasis.
CMatrix sld_eigenbasis(const ThermalModelPoint& p, int mu) {
  const auto& st = p.state;
  const Eigen::Index d = st.dimension();
  const CMatrix& g = p.generators[static_cast<std::size_t>(mu)];
  CMatrix l(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i == j) {
        l(i, i) = -st.beta * (g(i, i).real() - p.means[mu]);
      } else {
        const double w = superop_weight(SuperopKind::KuboMori, st, i, j);
        l(i, j) = -st.beta * 2.0 * w / (st.probs[i] + st.probs[j]) * g(i, j);
      }
    }
  }
  return l;
}

}  // namespace

ThermalModelPoint thermal_point(const ParamHamiltonian& model, const RVector& theta,
                                double beta) {
  check_beta(beta);
  const CMatrix h = assemble(model, theta);
  ThermalModelPoint p;
  p.state = gibbs(eigendecompose(h), beta);
  const int m = model.num_params();
  p.generators.reserve(static_cast<std::size_t>(m));
  p.means.resize(m);
  for (int mu = 0; mu < m; ++mu) {
    p.generators.push_back(to_eigenbasis(p.state.spectrum, assemble_generator(model, mu)));
    p.means[mu] = (p.state.probs.array() * p.generators.back().diagonal().real().array()).sum();
  }
  return p;
}

QfiMatrix qfi_matrix(const ThermalModelPoint& p, const RVector& theta) {
  const auto& st = p.state;
  const RMatrix w = weight_table(SuperopKind::ComposedJ, st);
  const auto m = static_cast<Eigen::Index>(p.generators.size());
  const Eigen::Index d = st.dimension();

  // Diagonal elements enter with weight p_i and are centred on the mean,
  // which folds in the -Tr[rho H_mu] Tr[rho H_nu] term.
  std::vector<CMatrix> centred = p.generators;
  for (Eigen::Index mu = 0; mu < m; ++mu) {
    centred[static_cast<std::size_t>(mu)].diagonal().array() -= p.means[mu];
  }

  QfiMatrix f;
  f.beta = st.beta;
  f.theta = theta;
  f.entries.resize(m, m);
  for (Eigen::Index mu = 0; mu < m; ++mu) {
    for (Eigen::Index nu = 0; nu <= mu; ++nu) {
      const auto& a = centred[static_cast<std::size_t>(mu)];
      const auto& b = centred[static_cast<std::size_t>(nu)];
      double acc = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
          acc += w(i, j) * (a(i, j) * std::conj(b(i, j))).real();
        }
      }
      f.entries(mu, nu) = f.entries(nu, mu) = st.beta * st.beta * acc;
    }
  }
  return f;
}

QfiMatrix qfi_matrix(const ParamHamiltonian& model, const RVector& theta, double beta) {
  return qfi_matrix(thermal_point(model, theta, beta), theta);
}

double quadratic_form(const RMatrix& f, const RVector& n) {
  if (n.size() != f.rows()) throw DimensionMismatch("direction length differs from F");
  if (n.norm() == 0.0) throw InvalidArgument("direction vector must be nonzero");
  return n.dot(f * n);
}

double quadratic_form(const QfiMatrix& f, const RVector& n) {
  return quadratic_form(f.entries, n);
}

HermitianOperator effective_generator(const ParamHamiltonian& model, const RVector& n) {
  if (n.size() != model.num_params()) {
    throw DimensionMismatch("direction length differs from parameter count");
  }
  validate(model);
  TermList terms;
  for (int m = 0; m < model.num_params(); ++m) {
    for (PauliTerm t : model.generators[static_cast<std::size_t>(m)]) {
      t.coefficient *= n[m];
      terms.push_back(std::move(t));
    }
  }
  return assemble_terms(terms, model.num_qubits);
}

HermitianOperator density_derivative(const ThermalModelPoint& p, int mu) {
  check_index(p, mu);
  const auto& st = p.state;
  const Eigen::Index d = st.dimension();
  const CMatrix& g = p.generators[static_cast<std::size_t>(mu)];
  CMatrix dr(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double w = superop_weight(SuperopKind::KuboMori, st, i, j);
      dr(i, j) = -st.beta * w * g(i, j);
    }
    dr(j, j) += st.probs[j] * st.beta * p.means[mu];
  }
  return from_eigenbasis(st.spectrum, dr);
}

HermitianOperator sld(const ThermalModelPoint& p, int mu) {
  check_index(p, mu);
  return from_eigenbasis(p.state.spectrum, sld_eigenbasis(p, mu));
}

HermitianOperator sld(const ParamHamiltonian& model, const RVector& theta, double beta,
                      int mu) {
  return sld(thermal_point(model, theta, beta), mu);
}

AttainabilityReport attainability(const ParamHamiltonian& model, const RVector& theta,
                                  double beta) {
  const ThermalModelPoint p = thermal_point(model, theta, beta);
  const int m = model.num_params();
  const auto& st = p.state;

  std::vector<CMatrix> l;
  for (int mu = 0; mu < m; ++mu) l.push_back(sld_eigenbasis(p, mu));

  AttainabilityReport r;
  r.weak = RMatrix::Zero(m, m);
  r.strong = RMatrix::Zero(m, m);
  for (int mu = 0; mu < m; ++mu) {
    for (int nu = mu + 1; nu < m; ++nu) {
      const CMatrix c = commutator(l[static_cast<std::size_t>(mu)], l[static_cast<std::size_t>(nu)]);
      const double w = (st.probs.cast<Complex>().array() * c.diagonal().array()).sum().imag();
      r.weak(mu, nu) = w;
      r.weak(nu, mu) = 0.0 - w;
      r.strong(mu, nu) = r.strong(nu, mu) = spectral_norm(c);
    }
  }

  const CMatrix h = st.spectrum.eigenvalues.cast<Complex>().asDiagonal();
  r.cond_H_commute.resize(static_cast<std::size_t>(m));
  r.cond_gen_commute.assign(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(m)));
  for (int mu = 0; mu < m; ++mu) {
    const auto& gm = p.generators[static_cast<std::size_t>(mu)];
    r.cond_H_commute[static_cast<std::size_t>(mu)] = commutes(h, gm);
    for (int nu = 0; nu < m; ++nu) {
      r.cond_gen_commute[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)] =
          commutes(gm, p.generators[static_cast<std::size_t>(nu)]);
    }
  }
  return r;
}

Measurement optimal_measurement(const ParamHamiltonian& model, const RVector& theta,
                                double beta, int mu) {
  const Spectrum s = eigendecompose(sld(model, theta, beta, mu));
  Measurement out;
  out.outcomes = s.eigenvalues;
  for (Eigen::Index k = 0; k < s.dimension(); ++k) {
    const CVector v = s.eigenvectors.col(k);
    out.projectors.push_back(v * v.adjoint());
  }
  return out;
}

double classical_fisher_fd(const ParamHamiltonian& model, const RVector& theta, double beta,
                           const Measurement& m, int mu, double step) {
  check_beta(beta);
  if (mu < 0 || mu >= model.num_params()) throw InvalidArgument("parameter index out of range");
  const double h = step * std::max(1.0, std::abs(theta[mu]));
  auto probs = [&](const RVector& th) {
    const CMatrix rho = gibbs(eigendecompose(assemble(model, th)), beta).density_matrix();
    RVector q(static_cast<Eigen::Index>(m.projectors.size()));
    for (std::size_t k = 0; k < m.projectors.size(); ++k) {
      q[static_cast<Eigen::Index>(k)] = (rho * m.projectors[k]).trace().real();
    }
    return q;
  };
  RVector tp = theta, tm = theta;
  tp[mu] += h;
  tm[mu] -= h;
  const RVector q0 = probs(theta);
  const RVector dq = (probs(tp) - probs(tm)) / (2.0 * h);
  double cfi = 0.0;
  for (Eigen::Index k = 0; k < q0.size(); ++k) {
    if (q0[k] > 1e-14) cfi += dq[k] * dq[k] / q0[k];
  }
  return cfi;
}

namespace {

// Gibbs density matrix via the matrix exponential, independent of the
// eigenbasis route used by qfi_matrix.
CMatrix gibbs_density_expm(const ParamHamiltonian& model, const RVector& theta, double beta) {
  CMatrix h = assemble(model, theta);
  const double shift = h.trace().real() / static_cast<double>(h.rows());
  h.diagonal().array() -= shift;
  const CMatrix unnormalized = (CMatrix(-beta * h)).exp();
  const CMatrix rho = unnormalized / unnormalized.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

}  // namespace

QfiMatrix qfi_oracle_fd(const ParamHamiltonian& model, const RVector& theta, double beta,
                        double step) {
  check_beta(beta);
  const double h = step > 0.0 ? step : default_step(theta, 1e-5);
  const int m = model.num_params();

  const CMatrix rho = gibbs_density_expm(model, theta, beta);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho);
  const RVector p = eig.eigenvalues();
  const CMatrix& v = eig.eigenvectors();

  std::vector<CMatrix> drho;
  for (int mu = 0; mu < m; ++mu) {
    RVector tp = theta, tm = theta;
    tp[mu] += h;
    tm[mu] -= h;
    const CMatrix d = (gibbs_density_expm(model, tp, beta) - gibbs_density_expm(model, tm, beta)) /
                      (2.0 * h);
    drho.push_back(v.adjoint() * d * v);
  }

  const Eigen::Index dim = p.size();
  QfiMatrix f;
  f.beta = beta;
  f.theta = theta;
  f.entries = RMatrix::Zero(m, m);
  for (int mu = 0; mu < m; ++mu) {
    for (int nu = 0; nu <= mu; ++nu) {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
          const double s = p[i] + p[j];
          if (s < 1e-12) continue;
          acc += 2.0 * (drho[static_cast<std::size_t>(mu)](i, j) *
                        std::conj(drho[static_cast<std::size_t>(nu)](i, j))).real() / s;
        }
      }
      f.entries(mu, nu) = f.entries(nu, mu) = acc;
    }
  }
  return f;
}

double log_partition(const ParamHamiltonian& model, const RVector& theta, double beta) {
  return gibbs(eigendecompose(assemble(model, theta)), beta).log_partition;
}

RMatrix logZ_hessian_fd(const ParamHamiltonian& model, const RVector& theta, double beta,
                        double step) {
  check_beta(beta);
  if (theta.size() != model.num_params()) throw DimensionMismatch("theta length differs from the model");
  const long double h = step > 0.0 ? step : default_step(theta, 1e-4);
  const Eigen::Index m = theta.size();
  const auto f = [&](Eigen::Index i, long double di, Eigen::Index j, long double dj) {
    RVectorExt offset = RVectorExt::Zero(m);
    offset[i] += di;
    offset[j] += dj;
    return log_partition_extended(model, theta, offset, beta);
  };
  // Same stencils as hessian_fd, with the differences taken before rounding to double.
  RMatrix hess(m, m);
  const long double f0 = f(0, 0.0L, 0, 0.0L);
  for (Eigen::Index i = 0; i < m; ++i) {
    hess(i, i) = static_cast<double>((f(i, h, i, 0.0L) - 2.0L * f0 + f(i, -h, i, 0.0L)) / (h * h));
    for (Eigen::Index j = 0; j < i; ++j) {
      const long double d = f(i, h, j, h) - f(i, h, j, -h) - f(i, -h, j, h) + f(i, -h, j, -h);
      hess(i, j) = hess(j, i) = static_cast<double>(d / (4.0L * h * h));
    }
  }
  return hess;
}

}  // namespace tqfi
