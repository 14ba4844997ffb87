#include <doctest.h>

#include <cmath>
#include <complex>

#include "twowell/kerr.hpp"
#include "twowell/oracle.hpp"

using namespace twowell;

namespace {

constexpr double kPi = 3.14159265358979323846;

MonomialDescriptor mono_n(Mode m) {
  MonomialDescriptor mono;
  mono.dag[int(m)] = 1;
  mono.ann[int(m)] = 1;
  return mono;
}

Complex poisson_amp(Complex alpha, int n) {
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (int k = 1; k <= n; ++k) c *= alpha / std::sqrt(double(k));
  return c;
}

}  // namespace

TEST_CASE("coherent kernel reduces to plain moments at zero phase") {
  const Complex alpha(1.3, -0.4);
  CHECK(std::abs(kerr_kernel(alpha, 0, 0, 0.0) - Complex(1.0, 0.0)) < 1e-15);
  const Complex expected = std::conj(alpha) * std::conj(alpha) * alpha;
  CHECK(std::abs(kerr_kernel(alpha, 2, 1, 0.0) - expected) < 1e-14);
  CHECK(std::abs(kerr_kernel(Complex(0.0, 0.0), 0, 0, 2.7) - Complex(1.0, 0.0)) <
        1e-15);
  CHECK_THROWS_AS(kerr_kernel(alpha, -1, 0, 0.0), std::invalid_argument);
}

TEST_CASE("coherent kernel matches a direct number-basis sum") {
  // <alpha| e^{i pi n} |alpha> at |alpha|^2 = 1 is e^{-2}.
  const Complex alpha(1.0, 0.0);
  CHECK(std::abs(kerr_kernel(alpha, 0, 0, kPi) - Complex(std::exp(-2.0), 0.0)) <
        1e-14);
  Complex direct = 0.0;
  for (int n = 0; n < 60; ++n) {
    direct += std::norm(poisson_amp(alpha, n)) * std::polar(1.0, kPi * n);
  }
  CHECK(std::abs(kerr_kernel(alpha, 0, 0, kPi) - direct) < 1e-13);
}

TEST_CASE("polynomial product applies the commutator contraction") {
  Polynomial left = Polynomial::ladder(Mode::a1, false);
  Polynomial right = Polynomial::ladder(Mode::a1, true);
  Polynomial prod = left * right;  // a a† = a†a + 1
  auto monos = prod.monomials();
  REQUIRE(monos.size() == 2);
  double constant = 0.0;
  double number = 0.0;
  for (const auto& m : monos) {
    if (m.degree() == 0) constant = m.coeff.real();
    if (m.degree() == 2) number = m.coeff.real();
  }
  CHECK(constant == doctest::Approx(1.0));
  CHECK(number == doctest::Approx(1.0));

  // Distinct modes commute: no contraction term.
  Polynomial cross =
      Polynomial::ladder(Mode::a1, false) * Polynomial::ladder(Mode::b1, true);
  CHECK(cross.monomials().size() == 1);
}

TEST_CASE("adjoint flips creation and annihilation exponents") {
  MonomialDescriptor mono;
  mono.dag[0] = 2;
  mono.ann[1] = 1;
  mono.coeff = Complex(0.5, 0.25);
  MonomialDescriptor adj = mono.adjoint();
  CHECK(adj.dag[1] == 1);
  CHECK(adj.ann[0] == 2);
  CHECK(adj.coeff == std::conj(mono.coeff));
  CHECK(MonomialDescriptor::from_key(mono.exponent_key(), mono.coeff)
            .exponent_key() == mono.exponent_key());
}

TEST_CASE("frozen coherent moments at zero interaction time") {
  KerrParams params = KerrParams::uniform(Complex(1.2, 0.7), GRatios{0.9, 0.4},
                                          10.0, 0.0);
  MonomialDescriptor mono;
  mono.dag[0] = 2;
  mono.ann[1] = 1;
  const Complex alpha = params.alphas[0];
  const Complex expected = std::conj(alpha) * std::conj(alpha) * alpha;
  CHECK(std::abs(evolve_monomial(mono, params) - expected) < 1e-13);
}

TEST_CASE("mode occupations are conserved by the phase evolution") {
  KerrParams params;
  params.alphas = {Complex(1.0, 0.5), Complex(0.7, -0.2), Complex(-0.4, 0.9),
                   Complex(0.3, 0.3)};
  params.g_ratios = GRatios{0.95, 0.8};
  params.atom_number_ref = 6.0;
  for (double tau : {0.0, 0.4, 2.9, 17.0}) {
    params.tau = tau;
    for (int m = 0; m < kModeCount; ++m) {
      const Complex value = evolve_monomial(mono_n(Mode(m)), params);
      CHECK(std::abs(value - Complex(std::norm(params.alphas[m]), 0.0)) <
            1e-12);
    }
  }
}

TEST_CASE("single-mode amplitude decay matches a number-basis sum") {
  const Complex alpha(1.4, 0.3);
  for (double tau : {0.3, 1.7}) {
    KerrParams params;
    params.alphas = {alpha, Complex(0.0, 0.0), Complex(0.0, 0.0),
                     Complex(0.0, 0.0)};
    params.g_ratios = GRatios{0.9, 0.37};
    params.atom_number_ref = 1.0;  // phase per quantum is exactly tau
    params.tau = tau;
    MonomialDescriptor mono;
    mono.ann[0] = 1;
    const Complex engine = evolve_monomial(mono, params);
    Complex direct = 0.0;
    for (int n = 0; n < 80; ++n) {
      direct += std::conj(poisson_amp(alpha, n)) *
                std::polar(1.0, -tau * double(n)) * std::sqrt(double(n + 1)) *
                poisson_amp(alpha, n + 1);
    }
    CHECK(std::abs(engine - direct) < 1e-12);
  }
}

TEST_CASE("monomials beyond fourth degree are rejected") {
  MonomialDescriptor mono;
  mono.dag[0] = 3;
  mono.ann[0] = 2;
  KerrParams params = KerrParams::uniform(Complex(1.0, 0.0), GRatios{}, 4.0, 0.1);
  CHECK_THROWS_AS(evolve_monomial(mono, params), unsupported_request_error);
}

TEST_CASE("parameter validation rejects runaway amplitudes") {
  KerrParams params = KerrParams::uniform(Complex(2000.0, 0.0), GRatios{}, 4.0, 0.1);
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  KerrParams bad_tau = KerrParams::uniform(Complex(1.0, 0.0), GRatios{}, 4.0,
                                           std::nan(""));
  CHECK_THROWS_AS(bad_tau.validate(), std::invalid_argument);
  KerrParams bad_ref = KerrParams::uniform(Complex(1.0, 0.0), GRatios{}, 0.0, 0.1);
  CHECK_THROWS_AS(bad_ref.validate(), std::invalid_argument);
}

TEST_CASE("beam splitter preserves the per-component particle number") {
  const double phi = 0.7;
  Polynomial sum_primed;
  for (Mode m : {Mode::a1, Mode::b1}) {
    for (const auto& mono : beamsplitter_expand(mono_n(m), phi)) {
      sum_primed.add_term(mono);
    }
  }
  Polynomial sum_plain;
  sum_plain.add_term(mono_n(Mode::a1));
  sum_plain.add_term(mono_n(Mode::b1));
  for (const auto& [key, coeff] : sum_plain.terms()) {
    REQUIRE(sum_primed.terms().count(key) == 1);
    CHECK(std::abs(sum_primed.terms().at(key) - coeff) < 1e-15);
  }
  for (const auto& [key, coeff] : sum_primed.terms()) {
    if (sum_plain.terms().count(key) == 0) {
      CHECK(std::abs(coeff) < 1e-15);  // interference terms cancel
    }
  }
}

TEST_CASE("output port amplitude halves the input power for dark second port") {
  const Complex alpha(0.9, -0.6);
  KerrParams params;
  params.alphas = {alpha, Complex(0.0, 0.0), Complex(0.0, 0.0),
                   Complex(0.0, 0.0)};
  params.atom_number_ref = 4.0;
  params.tau = 0.0;
  const double phi = kPi / 2.0;
  MomentTable table(params, Frame::post_bs, phi);
  MonomialDescriptor mono;
  mono.ann[0] = 1;  // a1 output port
  const Complex expected = alpha / std::sqrt(2.0);
  CHECK(std::abs(table.value_of(mono) - expected) < 1e-14);
}

TEST_CASE("moment table closes under conjugation") {
  KerrParams params = KerrParams::uniform(Complex(1.1, 0.4),
                                          GRatios{0.95, 0.8}, 8.0, 0.6);
  MomentTable table(params, Frame::post_bs, kPi / 2.0);
  MonomialDescriptor mono;
  mono.dag[0] = 1;
  mono.ann[1] = 1;
  const Complex forward = table.value_of(mono);
  const Complex backward = table.value_of(mono.adjoint());
  CHECK(std::abs(forward - std::conj(backward)) < 1e-13);
}

TEST_CASE("total particle number survives splitting and evolution") {
  KerrParams params;
  params.alphas = {Complex(1.0, 0.2), Complex(0.8, -0.1), Complex(0.5, 0.5),
                   Complex(0.9, 0.0)};
  params.g_ratios = GRatios{0.95, 0.8};
  params.atom_number_ref = 5.0;
  params.tau = 1.3;
  double total_in = 0.0;
  for (const Complex& a : params.alphas) total_in += std::norm(a);
  MomentTable table(params, Frame::post_bs, 0.7);
  double total_out = 0.0;
  for (int m = 0; m < kModeCount; ++m) {
    total_out += table.value_of(mono_n(Mode(m))).real();
  }
  CHECK(total_out == doctest::Approx(total_in).epsilon(1e-12));
}

TEST_CASE("fresh condensates split into X-polarized wells") {
  const double n_bar = 4.0;
  KerrParams params = KerrParams::uniform(Complex(2.0, 0.0),
                                          GRatios{0.95, 0.8}, 8.0, 0.0);
  SpinMoments sm = dynamic_spin_moments(params, kPi / 2.0);
  CHECK(sm.well_a.n_mean == doctest::Approx(2.0 * n_bar).epsilon(1e-12));
  CHECK(sm.well_b.n_mean == doctest::Approx(2.0 * n_bar).epsilon(1e-12));
  CHECK(sm.well_a.mean(0) == doctest::Approx(n_bar).epsilon(1e-12));
  CHECK(sm.well_a.mean(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sm.well_a.mean(2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sm.well_b.mean(0) == doctest::Approx(n_bar).epsilon(1e-12));
}

TEST_CASE("commensurate ratios revive the initial moments exactly") {
  KerrParams params = KerrParams::uniform(Complex(1.5, 0.0), GRatios{1.0, 0.0},
                                          4.5, 0.0);
  const SpinMoments start = dynamic_spin_moments(params, kPi / 2.0);
  params.tau = 2.0 * kPi * params.atom_number_ref;
  const SpinMoments revived = dynamic_spin_moments(params, kPi / 2.0);
  CHECK(max_moment_deviation(start, revived) < 1e-8);
  params.tau = kPi * params.atom_number_ref;  // half period stays scrambled
  const SpinMoments halfway = dynamic_spin_moments(params, kPi / 2.0);
  CHECK(max_moment_deviation(start, halfway) > 1e-3);
}

TEST_CASE("dynamic sweep carries per-time rows with bounded angles") {
  DynamicSweepConfig config;
  config.params = KerrParams::uniform(Complex(2.0, 0.0), GRatios{0.95, 0.8},
                                      8.0, 0.0);
  config.tau_grid = {0.0, 0.1, 0.2};
  auto rows = dynamic_sweep(config);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].tau == config.tau_grid[i]);
    CHECK(rows[i].theta >= -kPi / 2.0);
    CHECK(rows[i].theta < kPi / 2.0);
    CHECK(rows[i].squeezing.s_plus_db.has_value());
    CHECK(rows[i].e_product.value.has_value());
  }
  config.tau_grid = {};
  CHECK_THROWS_AS(dynamic_sweep(config), std::invalid_argument);
}

TEST_CASE("without the frame rotation an X-polarized state is undefined") {
  DynamicSweepConfig config;
  config.params = KerrParams::uniform(Complex(2.0, 0.0), GRatios{0.95, 0.8},
                                      8.0, 0.0);
  config.tau_grid = {0.0};
  config.rotate_frame = false;
  auto rows = dynamic_sweep(config);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].squeezing.s_plus_db.has_value());
  CHECK_FALSE(rows[0].e_product.value.has_value());
  CHECK_FALSE(rows[0].e_sum.value.has_value());
}
