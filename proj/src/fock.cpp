#include "twowell/fock.hpp"

#include <cmath>
#include <string>

namespace twowell {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kEntropyNormTol = 1e-9;
}  // namespace

FockBasis::FockBasis(int n) : atom_count(n) {
  if (n < 1) {
    throw std::invalid_argument("FockBasis: atom count must be >= 1, got " +
                                std::to_string(n));
  }
}

FockBasis build_basis(int atom_count) { return FockBasis(atom_count); }

TwoModeState::TwoModeState(FockBasis b, Vector amps)
    : basis(b), amplitudes(std::move(amps)) {
  if (amplitudes.size() != basis.dim()) {
    throw invalid_state_error("TwoModeState: amplitude count " +
                              std::to_string(amplitudes.size()) +
                              " does not match basis dim " +
                              std::to_string(basis.dim()));
  }
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw invalid_state_error("TwoModeState: squared norm " +
                              std::to_string(norm2) + " not 1 within 1e-12");
  }
}

TwoModeState TwoModeState::normalized(FockBasis b, Vector amps) {
  const double norm = amps.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw invalid_state_error("TwoModeState: cannot normalize zero vector");
  }
  return TwoModeState(b, amps / norm);
}

DensityMatrix::DensityMatrix(FockBasis b, Matrix m)
    : basis(b), entries(std::move(m)) {
  const int d = basis.dim();
  if (entries.rows() != d || entries.cols() != d) {
    throw std::invalid_argument("DensityMatrix: shape does not match basis");
  }
  const double herm_dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kNormTol) {
    throw invalid_state_error("DensityMatrix: hermiticity deviation " +
                              std::to_string(herm_dev));
  }
  const Complex tr = entries.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kNormTol) {
    throw invalid_state_error("DensityMatrix: trace deviates from 1 by " +
                              std::to_string(std::abs(tr - Complex(1.0, 0.0))));
  }
}

void DensityMatrix::validate_positive(double tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries,
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("DensityMatrix: eigensolve failed");
  }
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol) {
    throw invalid_state_error("DensityMatrix: eigenvalue " +
                              std::to_string(min_eig) + " below -tol");
  }
}

Matrix operator_matrix(OperatorKind kind, const FockBasis& basis) {
  const int n = basis.atom_count;
  const int d = basis.dim();
  Matrix m = Matrix::Zero(d, d);
  switch (kind) {
    case OperatorKind::a_dag_b:
      // a†b |n_a, n_b> = sqrt((n_a+1) n_b) |n_a+1, n_b-1>
      for (int k = 0; k + 1 < d; ++k) {
        m(k + 1, k) = std::sqrt(double(k + 1) * double(n - k));
      }
      break;
    case OperatorKind::b_dag_a:
      for (int k = 0; k + 1 < d; ++k) {
        m(k, k + 1) = std::sqrt(double(k + 1) * double(n - k));
      }
      break;
    case OperatorKind::n_a:
      for (int k = 0; k < d; ++k) m(k, k) = double(k);
      break;
    case OperatorKind::n_b:
      for (int k = 0; k < d; ++k) m(k, k) = double(n - k);
      break;
    case OperatorKind::n_a_n_b:
      for (int k = 0; k < d; ++k) m(k, k) = double(k) * double(n - k);
      break;
    case OperatorKind::jz_squared:
      for (int k = 0; k < d; ++k) {
        const double jz = 0.5 * (2.0 * k - n);
        m(k, k) = jz * jz;
      }
      break;
    case OperatorKind::total_number_squared:
      for (int k = 0; k < d; ++k) m(k, k) = double(n) * double(n);
      break;
    default:
      throw std::invalid_argument("operator_matrix: unknown operator kind");
  }
  return m;
}

Complex expectation(const Matrix& op, const TwoModeState& state) {
  if (op.rows() != state.basis.dim() || op.cols() != state.basis.dim()) {
    throw std::invalid_argument("expectation: operator/state dim mismatch");
  }
  return state.amplitudes.dot(op * state.amplitudes);
}

Complex expectation(const Matrix& op, const DensityMatrix& rho) {
  if (op.rows() != rho.basis.dim() || op.cols() != rho.basis.dim()) {
    throw std::invalid_argument("expectation: operator/state dim mismatch");
  }
  return (rho.entries * op).trace();
}

double reduced_entropy(const TwoModeState& state) {
  const double norm2 = state.amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kEntropyNormTol) {
    throw invalid_state_error("reduced_entropy: state norm deviates by " +
                              std::to_string(std::abs(norm2 - 1.0)));
  }
  double bits = 0.0;
  for (int k = 0; k < state.amplitudes.size(); ++k) {
    const double p = std::norm(state.amplitudes[k]);
    if (p > 0.0) bits -= p * std::log2(p);
  }
  return bits;
}

}  // namespace twowell
