#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tqfi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Dense Hermitian operator on a 2^n dimensional qubit space. Hermiticity is
// checked at the entry points that need it (eigendecompose, superoperators).
using HermitianOperator = CMatrix;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Raised when the lowest energy level is degenerate, so no gap exists above
/// a unique ground state.
class DegenerateGroundState : public Error {
 public:
  using Error::Error;
};

/// Raised when every eigenvalue coincides within tolerance.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

// Largest dense Hilbert space the library will build (in qubits).
inline constexpr int kMaxDenseQubits = 12;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace tqfi
