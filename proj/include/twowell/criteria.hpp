#pragma once

#include <optional>
#include <string>
#include <utility>

#include "twowell/fock.hpp"

namespace twowell {

// Interwell moments of the (a, b) pair feeding the number-coherence criterion.
// On a fixed-N basis 0.25*<N^2> - <(J^Z)^2> = <n_a n_b> holds identically; the
// from-state builders enforce it to 1e-10 relative.
struct InterwellMoments {
  Complex a_dag_b{};
  double n_a_n_b = 0.0;
  double n_a = 0.0;
  double n_b = 0.0;
  double total_number_sq = 0.0;  // <(n_a + n_b)^2>
  double jz_sq = 0.0;            // <((n_a - n_b)/2)^2>
};

InterwellMoments interwell_moments(const TwoModeState& state);
InterwellMoments interwell_moments(const DensityMatrix& rho);

// Spin component order used throughout: X = 0, Y = 1, Z = 2.
// The squeezing plane is Z-X: J^theta = cos(theta) J^Z + sin(theta) J^X.
struct WellMoments {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();  // symmetrized covariance
  double n_mean = 0.0;
};

struct SpinMoments {
  WellMoments well_a;
  WellMoments well_b;
  // cross(P, Q) = <{J_A^P, J_B^Q}>/2 - <J_A^P><J_B^Q>
  Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
};

// A criterion evaluates to a non-negative value; value < 1 signals
// entanglement.  Undefined results (vanishing denominators) leave the
// optionals empty.
struct CriterionResult {
  std::string name;
  std::optional<double> value;
  std::optional<bool> entangled;
  std::optional<double> theta;
  std::optional<std::pair<int, int>> signs;
};

// <n_a n_b> / |<a†b>|^2; undefined when |<a†b>|^2 < 1e-300.
CriterionResult hz_criterion(const InterwellMoments& m);

// Same criterion written in interwell spin form,
// (0.25<N^2> - <(J^Z)^2>) / (<J^X>^2 + <J^Y>^2); agreement with the moment
// form is a cross-check, not an independent criterion.
double hz_value_spin_form(const InterwellMoments& m);

// 1 - entropy/log2(N+1); zero for a number-uniform state, one for |N,0>.
CriterionResult entropic_criterion(const TwoModeState& state);

// Rotates each well's spin frame so the mean spin points along +Y.  The
// criteria below read their denominators from the Y component, so rotated
// moments reproduce the mean-spin-direction normalization for any input
// polarization.  Wells with zero mean spin are left unrotated.
SpinMoments rotate_to_mean_spin_frame(const SpinMoments& sm);

// Angle in [-pi/2, pi/2) minimizing the variance of
// J^theta = cos(theta) J^Z + sin(theta) J^X for the given covariance block.
double optimal_theta(const Eigen::Matrix3d& cov);

// Variance of J^theta for one well.
double transverse_variance(const WellMoments& w, double theta);

// Variance of J_A^theta + sign * J_B^theta.
double combined_variance(const SpinMoments& sm, double theta, int sign);

struct SqueezingDb {
  std::optional<double> s_plus_db;   // 10 log10[var(J_A^t - J_B^t)/n0]
  std::optional<double> s_minus_db;  // 10 log10[var(J_A^(t+pi/2) + J_B^(t+pi/2))/n0]
  bool plus_floored = false;         // variance hit the 1e-300 floor
  bool minus_floored = false;
};

SqueezingDb squeezing_db(const SpinMoments& sm, double theta);

// 2 sqrt(var(J_AB^(t,s1)) var(J_AB^(t+pi/2,s2))) / (|<J_A^Y>| + |<J_B^Y>|),
// minimized over the four sign pairings; J_AB^(t,s) = J_A^t + s J_B^t.
CriterionResult product_criterion(const SpinMoments& sm, double theta);

// Arithmetic-mean variant: (var + var) / (|<J_A^Y>| + |<J_B^Y>|).
CriterionResult sum_criterion(const SpinMoments& sm, double theta);

}  // namespace twowell
