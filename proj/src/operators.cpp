#include "thermoqfi/operators.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace tqfi {

PauliTerm pauli(double coefficient, std::initializer_list<PauliFactor> factors) {
  return PauliTerm{coefficient, std::vector<PauliFactor>(factors)};
}

PauliTerm single(double coefficient, int site, PauliAxis axis) {
  return PauliTerm{coefficient, {PauliFactor{site, axis}}};
}

void validate(const PauliTerm& term, int num_qubits) {
  if (!std::isfinite(term.coefficient)) {
    throw InvalidArgument("Pauli term coefficient is not finite");
  }
  std::set<int> seen;
  for (const auto& f : term.factors) {
    if (f.site < 0 || f.site >= num_qubits) {
      throw InvalidArgument("Pauli factor site " + std::to_string(f.site) +
                            " outside [0, " + std::to_string(num_qubits) + ")");
    }
    if (!seen.insert(f.site).second) {
      throw InvalidArgument("Pauli term repeats site " + std::to_string(f.site));
    }
  }
}

void validate(const ParamHamiltonian& model) {
  if (model.num_qubits < 1) throw InvalidArgument("model needs at least one qubit");
  if (model.num_qubits > kMaxDenseQubits) {
    throw SizeLimitExceeded("model has " + std::to_string(model.num_qubits) +
                            " qubits; dense limit is " + std::to_string(kMaxDenseQubits));
  }
  if (model.generators.empty()) throw InvalidArgument("model needs at least one generator");
  if (!model.param_names.empty() &&
      model.param_names.size() != model.generators.size()) {
    throw InvalidArgument("param_names and generators differ in length");
  }
  for (const auto& t : model.fixed_terms) validate(t, model.num_qubits);
  for (const auto& g : model.generators) {
    for (const auto& t : g) validate(t, model.num_qubits);
  }
}

CMatrix pauli_matrix(PauliAxis axis) {
  const Complex i{0.0, 1.0};
  CMatrix m(2, 2);
  switch (axis) {
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, -i, i, 0; break;
    case PauliAxis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

namespace {

template <typename Matrix, typename Real>
void accumulate_term(Matrix& out, const PauliTerm& term, Real coefficient, int num_qubits) {
  using C = typename Matrix::Scalar;
  const Eigen::Index dim = out.rows();
  std::uint64_t flip = 0;
  for (const auto& f : term.factors) {
    if (f.axis != PauliAxis::Z) flip |= std::uint64_t{1} << (num_qubits - 1 - f.site);
  }
  for (Eigen::Index b = 0; b < dim; ++b) {
    C phase{coefficient, 0};
    for (const auto& f : term.factors) {
      const bool up = ((static_cast<std::uint64_t>(b) >> (num_qubits - 1 - f.site)) & 1U) == 0;
      switch (f.axis) {
        case PauliAxis::X: break;
        case PauliAxis::Y: phase *= up ? C{0, 1} : C{0, -1}; break;
        case PauliAxis::Z: if (!up) phase = -phase; break;
      }
    }
    out(static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^ flip), b) += phase;
  }
}

void accumulate_term(CMatrix& out, const PauliTerm& term, int num_qubits) {
  accumulate_term(out, term, term.coefficient, num_qubits);
}

}  // namespace

HermitianOperator assemble_terms(const TermList& terms, int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
    throw SizeLimitExceeded("cannot assemble a dense operator on " +
                            std::to_string(num_qubits) + " qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& t : terms) {
    validate(t, num_qubits);
    accumulate_term(out, t, num_qubits);
  }
  return out;
}

HermitianOperator assemble(const ParamHamiltonian& model, const RVector& theta) {
  if (theta.size() != model.num_params()) {
    throw DimensionMismatch("theta has length " + std::to_string(theta.size()) +
                            " but the model has " + std::to_string(model.num_params()) +
                            " parameters");
  }
  if (!theta.allFinite()) throw InvalidArgument("theta must be finite");
  validate(model);
  CMatrix h = assemble_terms(model.fixed_terms, model.num_qubits);
  for (int m = 0; m < model.num_params(); ++m) {
    if (theta[m] == 0.0) continue;
    for (PauliTerm t : model.generators[m]) {
      t.coefficient *= theta[m];
      accumulate_term(h, t, model.num_qubits);
    }
  }
  return h;
}

CMatrixExt assemble_extended(const ParamHamiltonian& model, const RVector& theta,
                             const RVectorExt& offset) {
  if (theta.size() != model.num_params() || offset.size() != theta.size()) {
    throw DimensionMismatch("theta/offset length differs from the parameter count");
  }
  if (!theta.allFinite() || !offset.allFinite()) throw InvalidArgument("theta must be finite");
  validate(model);
  const Eigen::Index dim = model.dimension();
  CMatrixExt h = CMatrixExt::Zero(dim, dim);
  for (const auto& t : model.fixed_terms) {
    accumulate_term(h, t, static_cast<long double>(t.coefficient), model.num_qubits);
  }
  for (int m = 0; m < model.num_params(); ++m) {
    const long double value = static_cast<long double>(theta[m]) + offset[m];
    if (value == 0.0L) continue;
    for (const auto& t : model.generators[m]) {
      accumulate_term(h, t, value * static_cast<long double>(t.coefficient), model.num_qubits);
    }
  }
  return h;
}

HermitianOperator assemble_generator(const ParamHamiltonian& model, int mu) {
  if (mu < 0 || mu >= model.num_params()) {
    throw InvalidArgument("generator index " + std::to_string(mu) + " out of range");
  }
  validate(model);
  return assemble_terms(model.generators[mu], model.num_qubits);
}

double hermiticity_tolerance(const CMatrix& a) {
  return 1e-12 * std::max(1.0, max_abs(a));
}

Spectrum eigendecompose(const HermitianOperator& op) {
  if (op.rows() != op.cols() || op.rows() == 0) {
    throw DimensionMismatch("eigendecompose needs a nonempty square matrix");
  }
  if (!is_hermitian(op, hermiticity_tolerance(op))) {
    throw NotHermitian("operator is not Hermitian within tolerance");
  }
  const Eigen::Index dim = op.rows();
  Spectrum s;

  // Diagonal input: the standard basis already diagonalizes it exactly.
  CMatrix off = op;
  off.diagonal().setZero();
  if (max_abs(off) == 0.0) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return op(a, a).real() < op(b, b).real();
    });
    s.eigenvalues.resize(dim);
    s.eigenvectors = CMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      s.eigenvalues[k] = op(order[k], order[k]).real();
      s.eigenvectors(order[k], k) = 1.0;
    }
    return s;
  }

  const CMatrix sym = (op + op.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  return s;
}

double spectral_spread(const Spectrum& spectrum) {
  const auto& e = spectrum.eigenvalues;
  return e.size() == 0 ? 0.0 : e[e.size() - 1] - e[0];
}

double spectral_spread(const HermitianOperator& op) {
  return spectral_spread(eigendecompose(op));
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionMismatch("commutator operands differ in shape");
  }
  return a * b - b * a;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()[0];
}

bool commutes(const CMatrix& a, const CMatrix& b) {
  return spectral_norm(commutator(a, b)) <=
         1e-10 * (1.0 + spectral_norm(a) * spectral_norm(b));
}

CMatrix to_eigenbasis(const Spectrum& s, const CMatrix& op) {
  if (op.rows() != s.dimension() || op.cols() != s.dimension()) {
    throw DimensionMismatch("operator dimension does not match the spectrum");
  }
  return s.eigenvectors.adjoint() * op * s.eigenvectors;
}

CMatrix from_eigenbasis(const Spectrum& s, const CMatrix& op) {
  if (op.rows() != s.dimension() || op.cols() != s.dimension()) {
    throw DimensionMismatch("operator dimension does not match the spectrum");
  }
  return s.eigenvectors * op * s.eigenvectors.adjoint();
}

}  // namespace tqfi
