#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "twowell/criteria.hpp"

namespace twowell {

// Four travelling modes: spin components 1,2 in wells A and B.
enum class Mode : int { a1 = 0, a2 = 1, b1 = 2, b2 = 3 };

constexpr int kModeCount = 4;

inline int well_of(Mode m) { return int(m) / 2; }  // 0 = A, 1 = B
inline int spin_of(Mode m) { return int(m) % 2; }
inline Mode mode_at(int well, int spin) { return Mode(well * 2 + spin); }

// Interaction ratios g_ij/g_11 within a well; symmetric, g_11/g_11 = 1.
struct GRatios {
  double g22 = 1.0;
  double g12 = 0.0;

  double ratio(int i, int j) const {
    if (i == j) return i == 0 ? 1.0 : g22;
    return g12;
  }
};

struct KerrParams {
  std::array<Complex, 4> alphas{};  // coherent amplitudes (a1, a2, b1, b2)
  GRatios g_ratios;
  double atom_number_ref = 200.0;  // N_A; tau = g_11 N_A t
  double tau = 0.0;

  static KerrParams uniform(Complex alpha, GRatios g, double n_ref,
                            double tau);
  void validate() const;
};

// Normally ordered monomial over the four modes: all creations left of all
// annihilations, exponents per mode, total degree <= 4.
struct MonomialDescriptor {
  std::array<std::uint8_t, 4> dag{};
  std::array<std::uint8_t, 4> ann{};
  Complex coeff{1.0, 0.0};

  int degree() const {
    int d = 0;
    for (int m = 0; m < kModeCount; ++m) d += dag[m] + ann[m];
    return d;
  }
  std::uint64_t exponent_key() const {
    std::uint64_t key = 0;
    for (int m = 0; m < kModeCount; ++m) {
      key = key << 8 | std::uint64_t(dag[m]) << 4 | ann[m];
    }
    return key;
  }
  MonomialDescriptor adjoint() const;
  static MonomialDescriptor from_key(std::uint64_t key, Complex coeff);
};

// Sparse normally ordered polynomial; products apply the bosonic
// commutation contractions mode by mode.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(Complex c);
  static Polynomial ladder(Mode m, bool dagger);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(Complex c) const;
  Polynomial adjoint() const;

  const std::map<std::uint64_t, Complex>& terms() const { return terms_; }
  std::vector<MonomialDescriptor> monomials() const;
  void add_term(const MonomialDescriptor& mono);

 private:
  std::map<std::uint64_t, Complex> terms_;
};

// <alpha| a†^m exp(i lambda n) a^n |alpha>
//   = conj(alpha)^m alpha^n exp(|alpha|^2 (e^{i lambda} - 1)).
Complex kerr_kernel(Complex alpha, int m, int n, double lambda);

// Expectation of a normally ordered monomial in the Kerr-evolved Heisenberg
// operators a_i(t) = exp[-i t sum_j g_ij n_j] a_i(0) on the coherent product
// state.  Phases enter as g_ij t = ratio(i,j) * tau / N_A.
Complex evolve_monomial(const MonomialDescriptor& mono,
                        const KerrParams& params);

// Expands a monomial in the post-beam-splitter modes into pre-beam-splitter
// ones via a_i' = (a_i + e^{i phi} b_i)/sqrt(2),
// b_i' = (-e^{-i phi} a_i + b_i)/sqrt(2).
std::vector<MonomialDescriptor> beamsplitter_expand(
    const MonomialDescriptor& post_bs, double phi);

enum class Frame { pre_bs, post_bs };

// Memoized monomial expectations for fixed parameters; post_bs tables route
// requests through the beam-splitter expansion first.
class MomentTable {
 public:
  MomentTable(KerrParams params, Frame frame, double phi);

  Complex value_of(const MonomialDescriptor& mono);
  const std::map<std::uint64_t, Complex>& entries() const { return cache_; }
  const KerrParams& params() const { return params_; }
  Frame frame() const { return frame_; }
  double phi() const { return phi_; }

 private:
  KerrParams params_;
  Frame frame_;
  double phi_;
  std::map<std::uint64_t, Complex> cache_;
};

// Means, covariances, and interwell cross covariances of the post-BS local
// spins (J_A on a1',a2'; J_B on b1',b2') in the natural (unrotated) frame.
SpinMoments dynamic_spin_moments(const KerrParams& params, double phi);

struct DynamicRow {
  double tau = 0.0;
  double theta = 0.0;
  SqueezingDb squeezing;
  CriterionResult e_product;
  CriterionResult e_sum;
};

struct DynamicSweepConfig {
  KerrParams params;  // tau field ignored; grid below drives time
  std::vector<double> tau_grid;
  double phi = 1.5707963267948966;
  // Rotate each well's mean spin onto +Y before applying the criteria
  // (default).  When false the moments are used as-is, which leaves the
  // criteria undefined whenever the mean spin has no Y component.
  bool rotate_frame = true;
  int threads = 1;
};

std::vector<DynamicRow> dynamic_sweep(const DynamicSweepConfig& config);

}  // namespace twowell
