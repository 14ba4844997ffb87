#pragma once

#include <optional>
#include <vector>

#include "twowell/criteria.hpp"
#include "twowell/fock.hpp"

namespace twowell {

// Two-mode restriction of the double-well Hamiltonian, in units of the
// tunneling rate kappa:
//   H = (a†b + b†a) + (G/2) [n_a(n_a - 1) + n_b(n_b - 1)],  G = g/kappa.
// Real symmetric tridiagonal on the fixed-N basis.
struct TwoModeHamiltonian {
  FockBasis basis;
  double interaction_ratio = 0.0;  // G
  Eigen::VectorXd diagonal;
  Eigen::VectorXd subdiagonal;

  Eigen::MatrixXd dense() const;
};

TwoModeHamiltonian build_hamiltonian(int atom_count, double interaction_ratio);

struct Spectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns match values
};

Spectrum diagonalize(const TwoModeHamiltonian& h);

// Lowest eigenvector, with the largest-magnitude amplitude (first such index
// on ties) made real positive.
TwoModeState ground_state(const TwoModeHamiltonian& h);

// Temperatures in nK; kappa_scale_nK is hbar*kappa/k_B.
struct ThermalSpec {
  double temperature_nK = 0.0;
  double kappa_scale_nK = 50.0;
};

// exp(-H kappa_scale/T)/Z, computed in the eigenbasis with the ground energy
// shifted out.  T = 0 yields the equal-weight projector onto the (possibly
// degenerate) ground level.
DensityMatrix thermal_state(const TwoModeHamiltonian& h,
                            const ThermalSpec& spec);
DensityMatrix thermal_state(const Spectrum& spec, const FockBasis& basis,
                            const ThermalSpec& thermal);

struct AdiabaticRow {
  double ng_over_kappa = 0.0;
  double temperature_nK = 0.0;
  CriterionResult e_hz;
  std::optional<CriterionResult> e_entropic;  // T = 0 rows only
};

struct AdiabaticSweepConfig {
  int atom_count = 100;
  std::vector<double> ng_over_kappa;  // grid on the N g/kappa axis
  std::vector<double> temperatures_nK{0.0};
  double kappa_scale_nK = 50.0;
  int threads = 1;  // 0 = hardware concurrency
};

// One row per (grid point, temperature), grid-major.  G = (Ng/kappa)/N.
std::vector<AdiabaticRow> adiabatic_sweep(const AdiabaticSweepConfig& config);

}  // namespace twowell
