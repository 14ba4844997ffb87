#include "twowell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "twowell/detail/spin_ops.hpp"

namespace twowell {

namespace {

constexpr double kMaxOracleAlphaSq = 25.0;
constexpr double kLossTol = 1e-10;

using Tensor = Eigen::MatrixXcd;  // (n1, n2) joint amplitudes of one well

Eigen::VectorXcd coherent_column(Complex alpha, int cutoff) {
  Eigen::VectorXcd c(cutoff + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int k = 1; k <= cutoff; ++k) c[k] = c[k - 1] * alpha / std::sqrt(double(k));
  return c;
}

// Applies the annihilation operator of the given in-well spin index.
Tensor apply_annihilation(const Tensor& in, int spin) {
  Tensor out = Tensor::Zero(in.rows(), in.cols());
  if (spin == 0) {
    for (int n1 = 0; n1 + 1 < in.rows(); ++n1) {
      out.row(n1) = std::sqrt(double(n1 + 1)) * in.row(n1 + 1);
    }
  } else {
    for (int n2 = 0; n2 + 1 < in.cols(); ++n2) {
      out.col(n2) = std::sqrt(double(n2 + 1)) * in.col(n2 + 1);
    }
  }
  return out;
}

struct WellEvaluator {
  Tensor state;
  std::map<std::uint32_t, Complex> memo;

  // <state| a1†^m1 a2†^m2 a1^n1 a2^n2 |state>
  Complex moment(int m1, int m2, int n1, int n2) {
    const std::uint32_t key =
        std::uint32_t(m1) << 12 | std::uint32_t(m2) << 8 |
        std::uint32_t(n1) << 4 | std::uint32_t(n2);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Tensor ket = state;
    for (int i = 0; i < n1; ++i) ket = apply_annihilation(ket, 0);
    for (int i = 0; i < n2; ++i) ket = apply_annihilation(ket, 1);
    Tensor bra = state;
    for (int i = 0; i < m1; ++i) bra = apply_annihilation(bra, 0);
    for (int i = 0; i < m2; ++i) bra = apply_annihilation(bra, 1);
    const Complex value = (bra.conjugate().cwiseProduct(ket)).sum();
    memo.emplace(key, value);
    return value;
  }
};

}  // namespace

SpinMoments fock_oracle(const KerrParams& params, double phi, int cutoff) {
  params.validate();
  double max_nbar = 0.0;
  for (const Complex& a : params.alphas) {
    max_nbar = std::max(max_nbar, std::norm(a));
  }
  if (max_nbar > kMaxOracleAlphaSq) {
    throw std::invalid_argument(
        "fock_oracle: |alpha|^2 > 25 is outside the supported range");
  }
  const int needed = int(std::ceil(max_nbar + 10.0 * std::sqrt(max_nbar)));
  // The extra margin keeps the four-mode Poisson tail below kLossTol even
  // for small occupations, where needed alone leaves ~1e-9 behind.
  if (cutoff <= 0) cutoff = std::max(needed + 8, 14);
  if (cutoff < needed) {
    throw insufficient_cutoff_error(
        "fock_oracle: cutoff " + std::to_string(cutoff) +
        " below required " + std::to_string(needed));
  }

  double retained = 1.0;
  std::array<Eigen::VectorXcd, 4> columns;
  for (int m = 0; m < kModeCount; ++m) {
    columns[m] = coherent_column(params.alphas[m], cutoff);
    retained *= columns[m].squaredNorm();
  }
  if (1.0 - retained > kLossTol) {
    char loss[32];
    std::snprintf(loss, sizeof loss, "%.3e", 1.0 - retained);
    throw insufficient_cutoff_error("fock_oracle: truncation loss " +
                                    std::string(loss) + " exceeds 1e-10");
  }

  // Exact Kerr step: each joint amplitude picks up the two-mode interaction
  // energy phase of its well.
  const double t_g11 = params.tau / params.atom_number_ref;
  const double g22t = params.g_ratios.g22 * t_g11;
  const double g12t = params.g_ratios.g12 * t_g11;
  std::array<WellEvaluator, 2> wells;
  for (int w = 0; w < 2; ++w) {
    Tensor psi(cutoff + 1, cutoff + 1);
    const auto& c1 = columns[int(mode_at(w, 0))];
    const auto& c2 = columns[int(mode_at(w, 1))];
    for (int n1 = 0; n1 <= cutoff; ++n1) {
      for (int n2 = 0; n2 <= cutoff; ++n2) {
        const double energy_t = 0.5 * t_g11 * n1 * (n1 - 1.0) +
                                0.5 * g22t * n2 * (n2 - 1.0) +
                                g12t * double(n1) * double(n2);
        psi(n1, n2) = c1[n1] * c2[n2] * std::polar(1.0, -energy_t);
      }
    }
    wells[w].state = std::move(psi);
  }

  const detail::SpinPolySet set = detail::build_spin_polys(phi);
  return detail::assemble_spin_moments(
      set, [&](const MonomialDescriptor& mono) {
        Complex value = mono.coeff;
        for (int w = 0; w < 2; ++w) {
          const int m1 = mono.dag[int(mode_at(w, 0))];
          const int m2 = mono.dag[int(mode_at(w, 1))];
          const int n1 = mono.ann[int(mode_at(w, 0))];
          const int n2 = mono.ann[int(mode_at(w, 1))];
          value *= wells[w].moment(m1, m2, n1, n2);
        }
        return value;
      });
}

double max_moment_deviation(const SpinMoments& x, const SpinMoments& y) {
  double worst = 0.0;
  auto check = [&worst](double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-2});
    worst = std::max(worst, std::abs(a - b) / scale);
  };
  const WellMoments* wx[2] = {&x.well_a, &x.well_b};
  const WellMoments* wy[2] = {&y.well_a, &y.well_b};
  for (int w = 0; w < 2; ++w) {
    check(wx[w]->n_mean, wy[w]->n_mean);
    for (int p = 0; p < 3; ++p) {
      check(wx[w]->mean[p], wy[w]->mean[p]);
      for (int q = 0; q < 3; ++q) check(wx[w]->cov(p, q), wy[w]->cov(p, q));
    }
  }
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) check(x.cross(p, q), y.cross(p, q));
  }
  return worst;
}

}  // namespace twowell
