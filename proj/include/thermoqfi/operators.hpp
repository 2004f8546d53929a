#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thermoqfi/types.hpp"

namespace tqfi {

enum class PauliAxis { X, Y, Z };

struct PauliFactor {
  int site = 0;
  PauliAxis axis = PauliAxis::Z;
};

/// coefficient * (product of single-site Pauli matrices on distinct sites).
struct PauliTerm {
  double coefficient = 1.0;
  std::vector<PauliFactor> factors;
};

using TermList = std::vector<PauliTerm>;

/// Block layout of generators built from identical local terms on disjoint
/// qubits: generator m is a sum of block_sizes[m] copies of a local term whose
/// spectral spread is local_spread.
struct LocalStructure {
  std::vector<int> block_sizes;
  double local_spread = 1.0;
};

/// H(theta) = H_0 + sum_m theta_m H_m, with H_m = dH/dtheta_m.
struct ParamHamiltonian {
  int num_qubits = 1;
  TermList fixed_terms;
  std::vector<TermList> generators;
  std::vector<std::string> param_names;
  std::optional<LocalStructure> local_structure;

  int num_params() const { return static_cast<int>(generators.size()); }
  Eigen::Index dimension() const { return Eigen::Index{1} << num_qubits; }
};

/// Eigenvalues ascending; eigenvectors are the columns of a unitary matrix.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;

  Eigen::Index dimension() const { return eigenvalues.size(); }
};

// Term constructors.
PauliTerm pauli(double coefficient, std::initializer_list<PauliFactor> factors);
PauliTerm single(double coefficient, int site, PauliAxis axis);

/// Throws InvalidArgument when a term or the model breaks its invariants.
void validate(const PauliTerm& term, int num_qubits);
void validate(const ParamHamiltonian& model);

CMatrix pauli_matrix(PauliAxis axis);

/// Dense matrix of a term list on num_qubits qubits. Site 0 is the most
/// significant tensor factor; |0> is the +1 eigenstate of Z.
HermitianOperator assemble_terms(const TermList& terms, int num_qubits);

HermitianOperator assemble(const ParamHamiltonian& model, const RVector& theta);
HermitianOperator assemble_generator(const ParamHamiltonian& model, int mu);

using CMatrixExt = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
using RVectorExt = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

/// H(theta + offset) accumulated in long double. Finite differences of
/// spectral quantities use this to keep rounding well below the step.
CMatrixExt assemble_extended(const ParamHamiltonian& model, const RVector& theta,
                             const RVectorExt& offset);

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = 1e-12) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

/// Hermiticity tolerance scaled to the operator magnitude.
double hermiticity_tolerance(const CMatrix& a);

/// Full spectral decomposition after symmetrizing (A + A^dagger)/2.
/// Throws NotHermitian when the input is not Hermitian within tolerance.
Spectrum eigendecompose(const HermitianOperator& op);

double spectral_spread(const HermitianOperator& op);
double spectral_spread(const Spectrum& spectrum);

/// ab - ba.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Largest singular value.
double spectral_norm(const CMatrix& a);

/// True when ||[a, b]||_2 <= 1e-10 (1 + ||a||_2 ||b||_2).
bool commutes(const CMatrix& a, const CMatrix& b);

/// V diag(f(E)) V^dagger.
template <typename Fn>
CMatrix spectral_function(const Spectrum& s, Fn&& fn) {
  RVector values = s.eigenvalues.unaryExpr(std::forward<Fn>(fn));
  return s.eigenvectors * values.asDiagonal() * s.eigenvectors.adjoint();
}

/// Transforms op into the eigenbasis: V^dagger op V.
CMatrix to_eigenbasis(const Spectrum& s, const CMatrix& op);
CMatrix from_eigenbasis(const Spectrum& s, const CMatrix& op);

}  // namespace tqfi
