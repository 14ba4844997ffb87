#include "twowell/adiabatic.hpp"

#include <cmath>
#include <string>

#include "twowell/detail/parallel.hpp"

namespace twowell {

namespace {
// Levels within this relative distance of the ground energy count as
// degenerate for the T = 0 projector.
constexpr double kDegeneracyTol = 1e-12;
}  // namespace

Eigen::MatrixXd TwoModeHamiltonian::dense() const {
  const int d = basis.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = diagonal[k];
  for (int k = 0; k + 1 < d; ++k) {
    m(k + 1, k) = subdiagonal[k];
    m(k, k + 1) = subdiagonal[k];
  }
  return m;
}

TwoModeHamiltonian build_hamiltonian(int atom_count, double interaction_ratio) {
  if (!std::isfinite(interaction_ratio)) {
    throw std::invalid_argument("build_hamiltonian: non-finite G");
  }
  TwoModeHamiltonian h{FockBasis(atom_count), interaction_ratio,
                       Eigen::VectorXd(), Eigen::VectorXd()};
  const int n = atom_count;
  const int d = h.basis.dim();
  h.diagonal.resize(d);
  h.subdiagonal.resize(d - 1);
  for (int k = 0; k < d; ++k) {
    h.diagonal[k] = 0.5 * interaction_ratio *
                    (double(k) * (k - 1.0) + double(n - k) * (n - k - 1.0));
  }
  for (int k = 0; k + 1 < d; ++k) {
    h.subdiagonal[k] = std::sqrt(double(k + 1) * double(n - k));
  }
  return h;
}

Spectrum diagonalize(const TwoModeHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(h.diagonal, h.subdiagonal,
                                Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("diagonalize: tridiagonal eigensolve failed at G = " +
                        std::to_string(h.interaction_ratio));
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

TwoModeState ground_from_spectrum(const Spectrum& spec,
                                  const FockBasis& basis) {
  Eigen::VectorXd v = spec.vectors.col(0);
  int k_max = 0;
  for (int k = 1; k < v.size(); ++k) {
    if (std::abs(v[k]) > std::abs(v[k_max])) k_max = k;
  }
  if (v[k_max] < 0.0) v = -v;
  return TwoModeState(basis, v.cast<Complex>() / v.norm());
}

}  // namespace

TwoModeState ground_state(const TwoModeHamiltonian& h) {
  return ground_from_spectrum(diagonalize(h), h.basis);
}

DensityMatrix thermal_state(const Spectrum& spec, const FockBasis& basis,
                            const ThermalSpec& thermal) {
  if (thermal.temperature_nK < 0.0) {
    throw std::invalid_argument("thermal_state: negative temperature");
  }
  if (!(thermal.kappa_scale_nK > 0.0)) {
    throw std::invalid_argument("thermal_state: kappa scale must be positive");
  }
  const int d = int(spec.values.size());
  const double e0 = spec.values[0];
  Eigen::VectorXd weights(d);
  if (thermal.temperature_nK == 0.0) {
    const double tol = kDegeneracyTol * std::max(1.0, std::abs(e0));
    for (int i = 0; i < d; ++i) {
      weights[i] = (spec.values[i] - e0 <= tol) ? 1.0 : 0.0;
    }
  } else {
    const double beta = thermal.kappa_scale_nK / thermal.temperature_nK;
    for (int i = 0; i < d; ++i) {
      weights[i] = std::exp(-beta * (spec.values[i] - e0));
    }
  }
  weights /= weights.sum();
  const Eigen::MatrixXd rho =
      spec.vectors * weights.asDiagonal() * spec.vectors.transpose();
  return DensityMatrix(basis, rho.cast<Complex>());
}

DensityMatrix thermal_state(const TwoModeHamiltonian& h,
                            const ThermalSpec& spec) {
  return thermal_state(diagonalize(h), h.basis, spec);
}

std::vector<AdiabaticRow> adiabatic_sweep(const AdiabaticSweepConfig& config) {
  if (config.ng_over_kappa.empty()) {
    throw std::invalid_argument("adiabatic_sweep: empty grid");
  }
  if (config.temperatures_nK.empty()) {
    throw std::invalid_argument("adiabatic_sweep: empty temperature list");
  }
  const std::size_t n_grid = config.ng_over_kappa.size();
  const std::size_t n_temp = config.temperatures_nK.size();
  std::vector<AdiabaticRow> rows(n_grid * n_temp);

  detail::parallel_for(n_grid, config.threads, [&](std::size_t gi) {
    const double ng = config.ng_over_kappa[gi];
    try {
      const auto h =
          build_hamiltonian(config.atom_count, ng / config.atom_count);
      const Spectrum spec = diagonalize(h);
      for (std::size_t ti = 0; ti < n_temp; ++ti) {
        const double temp = config.temperatures_nK[ti];
        AdiabaticRow& row = rows[gi * n_temp + ti];
        row.ng_over_kappa = ng;
        row.temperature_nK = temp;
        if (temp == 0.0) {
          const TwoModeState gs = ground_from_spectrum(spec, h.basis);
          row.e_hz = hz_criterion(interwell_moments(gs));
          row.e_entropic = entropic_criterion(gs);
        } else {
          const DensityMatrix rho = thermal_state(
              spec, h.basis, ThermalSpec{temp, config.kappa_scale_nK});
          row.e_hz = hz_criterion(interwell_moments(rho));
        }
      }
    } catch (const std::exception& e) {
      throw numeric_error("adiabatic_sweep: Ng/kappa = " + std::to_string(ng) +
                          ": " + e.what());
    }
  });
  return rows;
}

}  // namespace twowell
