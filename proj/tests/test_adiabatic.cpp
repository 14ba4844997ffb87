#include <doctest.h>

#include <cmath>

#include "twowell/adiabatic.hpp"

using namespace twowell;

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out *= double(n - k + i) / double(i);
  return out;
}

// Non-interacting ground state: symmetric-mode condensate with alternating
// binomial amplitudes.
Vector binomial_ground(int n) {
  Vector amps(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    amps(k) = sign * std::sqrt(binomial(n, k) / std::pow(2.0, n));
  }
  return amps;
}

}  // namespace

TEST_CASE("hamiltonian entries follow the tridiagonal layout") {
  TwoModeHamiltonian h = build_hamiltonian(2, 0.7);
  CHECK(h.diagonal.size() == 3);
  CHECK(h.subdiagonal.size() == 2);
  // (G/2)[k(k-1) + (N-k)(N-k-1)]
  CHECK(h.diagonal(0) == doctest::Approx(0.7));
  CHECK(h.diagonal(1) == doctest::Approx(0.0));
  CHECK(h.diagonal(2) == doctest::Approx(0.7));
  CHECK(h.subdiagonal(0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(h.subdiagonal(1) == doctest::Approx(std::sqrt(2.0)));
  Eigen::MatrixXd dense = h.dense();
  CHECK(dense(0, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(dense(1, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(dense(0, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(build_hamiltonian(3, std::nan("")), std::invalid_argument);
}

TEST_CASE("single-particle spectrum is the plain tunneling doublet") {
  TwoModeHamiltonian h = build_hamiltonian(1, 0.0);
  Spectrum s = diagonalize(h);
  CHECK(s.values(0) == doctest::Approx(-1.0));
  CHECK(s.values(1) == doctest::Approx(1.0));
  TwoModeState ground = ground_state(h);
  CHECK(ground.amplitudes(0).real() ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ground.amplitudes(1).real() ==
        doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("two-particle non-interacting spectrum is {-2, 0, 2}") {
  Spectrum s = diagonalize(build_hamiltonian(2, 0.0));
  CHECK(s.values(0) == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(s.values(1) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(s.values(2) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("non-interacting spectrum is symmetric about zero") {
  Spectrum s = diagonalize(build_hamiltonian(7, 0.0));
  for (int i = 0; i < 8; ++i) {
    CHECK(s.values(i) == doctest::Approx(-s.values(7 - i)).epsilon(1e-12));
  }
}

TEST_CASE("non-interacting ground state is the binomial condensate") {
  for (int n : {3, 8}) {
    TwoModeState ground = ground_state(build_hamiltonian(n, 0.0));
    Vector expected = binomial_ground(n);
    Complex overlap = expected.dot(ground.amplitudes);
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hard repulsion pins two particles into the twin state") {
  TwoModeHamiltonian h = build_hamiltonian(2, 1e6);
  TwoModeState ground = ground_state(h);
  CHECK(std::norm(ground.amplitudes(1)) >= 1.0 - 1e-6);
}

TEST_CASE("zero-temperature thermal state is the ground projector") {
  TwoModeHamiltonian h = build_hamiltonian(1, 0.0);
  DensityMatrix rho = thermal_state(h, ThermalSpec{0.0, 50.0});
  CHECK(rho.entries(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rho.entries(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rho.entries(0, 1).real() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("infinite-temperature limit is the maximally mixed state") {
  TwoModeHamiltonian h = build_hamiltonian(3, -0.4);
  DensityMatrix rho = thermal_state(h, ThermalSpec{1e12, 50.0});
  for (int i = 0; i < 4; ++i) {
    CHECK(rho.entries(i, i).real() == doctest::Approx(0.25).epsilon(1e-9));
  }
}

TEST_CASE("thermal weights follow the shifted Boltzmann factors") {
  TwoModeHamiltonian h = build_hamiltonian(2, 0.0);
  Spectrum s = diagonalize(h);
  // kappa_scale/T = 1, so weights are exp(-(E_i - E_0)).
  DensityMatrix rho = thermal_state(s, h.basis, ThermalSpec{50.0, 50.0});
  double z = 0.0;
  for (int i = 0; i < 3; ++i) z += std::exp(-(s.values(i) - s.values(0)));
  for (int i = 0; i < 3; ++i) {
    Vector v = s.vectors.col(i).cast<Complex>();
    const double population = (v.adjoint() * rho.entries * v)(0).real();
    const double expected = std::exp(-(s.values(i) - s.values(0))) / z;
    CHECK(population == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("thermal state rejects unphysical parameters") {
  TwoModeHamiltonian h = build_hamiltonian(2, 0.0);
  CHECK_THROWS_AS(thermal_state(h, ThermalSpec{-1.0, 50.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(thermal_state(h, ThermalSpec{10.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("sweep rows are grid-major with per-temperature criteria") {
  AdiabaticSweepConfig config;
  config.atom_count = 10;
  config.ng_over_kappa = {0.0, -2.0};
  config.temperatures_nK = {0.0, 50.0};
  auto rows = adiabatic_sweep(config);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].ng_over_kappa == 0.0);
  CHECK(rows[0].temperature_nK == 0.0);
  CHECK(rows[1].temperature_nK == 50.0);
  CHECK(rows[2].ng_over_kappa == -2.0);
  // Non-interacting pure point reproduces the closed form (N-1)/N.
  REQUIRE(rows[0].e_hz.value.has_value());
  CHECK(*rows[0].e_hz.value == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(rows[0].e_entropic.has_value());
  CHECK_FALSE(rows[1].e_entropic.has_value());
}

TEST_CASE("sweep validates its grids") {
  AdiabaticSweepConfig config;
  config.ng_over_kappa = {};
  CHECK_THROWS_AS(adiabatic_sweep(config), std::invalid_argument);
  config.ng_over_kappa = {0.0};
  config.temperatures_nK = {};
  CHECK_THROWS_AS(adiabatic_sweep(config), std::invalid_argument);
}

TEST_CASE("cold thermal sweep converges to the pure-state criterion") {
  const int n = 20;
  TwoModeHamiltonian h = build_hamiltonian(n, -2.0 / n);
  Spectrum s = diagonalize(h);
  // At T far below the gap the thermal value must match the ground state.
  AdiabaticSweepConfig config;
  config.atom_count = n;
  config.ng_over_kappa = {-2.0};
  config.temperatures_nK = {0.0, 1e-6};
  auto rows = adiabatic_sweep(config);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].e_hz.value.has_value());
  REQUIRE(rows[1].e_hz.value.has_value());
  CHECK(*rows[0].e_hz.value ==
        doctest::Approx(*rows[1].e_hz.value).epsilon(1e-6));
  (void)s;
}
