#pragma once

#include <complex>

#include <Eigen/Dense>

#include "twowell/errors.hpp"

namespace twowell {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Two bosonic modes at fixed total atom number N.
// Basis index k <-> |n_a = k, n_b = N - k>, k = 0..N.
struct FockBasis {
  int atom_count = 0;

  explicit FockBasis(int n);
  int dim() const { return atom_count + 1; }
  int n_a(int k) const { return k; }
  int n_b(int k) const { return atom_count - k; }
};

FockBasis build_basis(int atom_count);

// Pure state over a FockBasis; squared norm must be 1 within 1e-12.
struct TwoModeState {
  FockBasis basis;
  Vector amplitudes;

  TwoModeState(FockBasis b, Vector amps);
  static TwoModeState normalized(FockBasis b, Vector amps);
};

// Mixed state; hermiticity and unit trace checked to 1e-12 on construction.
// Positivity (eigenvalues >= -1e-10) is checked by validate_positive().
struct DensityMatrix {
  FockBasis basis;
  Matrix entries;

  DensityMatrix(FockBasis b, Matrix m);
  void validate_positive(double tol = 1e-10) const;
};

enum class OperatorKind {
  a_dag_b,
  b_dag_a,
  n_a,
  n_b,
  n_a_n_b,
  jz_squared,            // J^Z = (n_a - n_b)/2
  total_number_squared,  // (n_a + n_b)^2, constant N^2 on the fixed-N basis
};

Matrix operator_matrix(OperatorKind kind, const FockBasis& basis);

Complex expectation(const Matrix& op, const TwoModeState& state);
Complex expectation(const Matrix& op, const DensityMatrix& rho);

// Shannon entropy (bits) of the mode-occupation distribution p_k = |c_k|^2.
// Equals the entanglement entropy of the a|b mode bipartition for pure states.
double reduced_entropy(const TwoModeState& state);

}  // namespace twowell
