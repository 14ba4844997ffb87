#include "twowell/criteria.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace twowell {

namespace {

constexpr double kUndefinedFloor = 1e-300;
constexpr double kVarianceFloor = 1e-300;
constexpr double kDbFloor = -300.0;
// Guard band on the entanglement threshold so boundary separable states
// (criterion value exactly 1 in exact arithmetic) never flip to entangled
// through roundoff.
constexpr double kBoundaryGuard = 1e-12;
constexpr double kIdentityTol = 1e-10;
constexpr double kPi = 3.14159265358979323846;

void check_interwell_identity(const InterwellMoments& m) {
  const double lhs = 0.25 * m.total_number_sq - m.jz_sq;
  const double scale = std::max(1.0, std::abs(m.n_a_n_b));
  if (std::abs(lhs - m.n_a_n_b) > kIdentityTol * scale) {
    throw invalid_state_error(
        "interwell_moments: 0.25<N^2> - <Jz^2> deviates from <n_a n_b> by " +
        std::to_string(std::abs(lhs - m.n_a_n_b)));
  }
}

std::optional<bool> entangled_flag(double value) {
  return value < 1.0 - kBoundaryGuard;
}

// Direction of J^theta in (X, Y, Z) component order.
Eigen::Vector3d theta_direction(double theta) {
  return {std::sin(theta), 0.0, std::cos(theta)};
}

// Rotation taking unit vector `from` onto +Y.
Eigen::Matrix3d rotation_onto_y(const Eigen::Vector3d& from) {
  const Eigen::Vector3d y(0.0, 1.0, 0.0);
  const double c = from.dot(y);
  if (c > 1.0 - 1e-14) return Eigen::Matrix3d::Identity();
  if (c < -1.0 + 1e-14) {
    // Anti-parallel: rotate by pi about Z.
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    r(0, 0) = -1.0;
    r(1, 1) = -1.0;
    return r;
  }
  const Eigen::Vector3d axis = from.cross(y).normalized();
  return Eigen::AngleAxisd(std::acos(c), axis).toRotationMatrix();
}

}  // namespace

InterwellMoments interwell_moments(const TwoModeState& state) {
  const int n = state.basis.atom_count;
  const Vector& c = state.amplitudes;
  InterwellMoments m;
  for (int k = 0; k + 1 <= n; ++k) {
    const double t = std::sqrt(double(k + 1) * double(n - k));
    m.a_dag_b += std::conj(c[k + 1]) * t * c[k];
  }
  for (int k = 0; k <= n; ++k) {
    const double p = std::norm(c[k]);
    m.n_a += p * k;
    m.n_b += p * (n - k);
    m.n_a_n_b += p * double(k) * double(n - k);
    const double jz = 0.5 * (2.0 * k - n);
    m.jz_sq += p * jz * jz;
  }
  m.total_number_sq = double(n) * double(n);
  check_interwell_identity(m);
  return m;
}

InterwellMoments interwell_moments(const DensityMatrix& rho) {
  const int n = rho.basis.atom_count;
  const Matrix& r = rho.entries;
  InterwellMoments m;
  for (int k = 0; k + 1 <= n; ++k) {
    const double t = std::sqrt(double(k + 1) * double(n - k));
    // Tr[rho a†b] picks up rho(k, k+1) against the (k+1, k) matrix element.
    m.a_dag_b += r(k, k + 1) * t;
  }
  for (int k = 0; k <= n; ++k) {
    const double p = std::real(r(k, k));
    m.n_a += p * k;
    m.n_b += p * (n - k);
    m.n_a_n_b += p * double(k) * double(n - k);
    const double jz = 0.5 * (2.0 * k - n);
    m.jz_sq += p * jz * jz;
  }
  m.total_number_sq = double(n) * double(n);
  check_interwell_identity(m);
  return m;
}

CriterionResult hz_criterion(const InterwellMoments& m) {
  CriterionResult res;
  res.name = "E_HZ";
  const double denom = std::norm(m.a_dag_b);
  if (denom < kUndefinedFloor) return res;
  const double value = m.n_a_n_b / denom;
  res.value = value;
  res.entangled = entangled_flag(value);
  return res;
}

double hz_value_spin_form(const InterwellMoments& m) {
  const double jx = std::real(m.a_dag_b);
  const double jy = std::imag(m.a_dag_b);
  const double denom = jx * jx + jy * jy;
  if (denom < kUndefinedFloor) {
    throw numeric_error("hz_value_spin_form: vanishing transverse spin");
  }
  return (0.25 * m.total_number_sq - m.jz_sq) / denom;
}

CriterionResult entropic_criterion(const TwoModeState& state) {
  CriterionResult res;
  res.name = "E_entropic";
  const double max_bits = std::log2(double(state.basis.dim()));
  const double value =
      std::max(0.0, 1.0 - reduced_entropy(state) / max_bits);
  res.value = value;
  res.entangled = entangled_flag(value);
  return res;
}

SpinMoments rotate_to_mean_spin_frame(const SpinMoments& sm) {
  auto frame_of = [](const WellMoments& w) -> Eigen::Matrix3d {
    const double len = w.mean.norm();
    if (len < kUndefinedFloor) return Eigen::Matrix3d::Identity();
    return rotation_onto_y(w.mean / len);
  };
  const Eigen::Matrix3d ra = frame_of(sm.well_a);
  const Eigen::Matrix3d rb = frame_of(sm.well_b);
  SpinMoments out;
  out.well_a.mean = ra * sm.well_a.mean;
  out.well_a.cov = ra * sm.well_a.cov * ra.transpose();
  out.well_a.n_mean = sm.well_a.n_mean;
  out.well_b.mean = rb * sm.well_b.mean;
  out.well_b.cov = rb * sm.well_b.cov * rb.transpose();
  out.well_b.n_mean = sm.well_b.n_mean;
  out.cross = ra * sm.cross * rb.transpose();
  return out;
}

double optimal_theta(const Eigen::Matrix3d& cov) {
  const double czz = cov(2, 2);
  const double cxx = cov(0, 0);
  const double czx = 0.5 * (cov(2, 0) + cov(0, 2));
  double theta = 0.5 * std::atan2(2.0 * czx, czz - cxx);
  auto variance_at = [&](double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    return c * c * czz + s * s * cxx + 2.0 * s * c * czx;
  };
  // atan2 lands on a stationary direction; take the orthogonal one when it
  // carries the smaller variance.
  if (variance_at(theta + 0.5 * kPi) < variance_at(theta)) {
    theta += 0.5 * kPi;
  }
  while (theta >= 0.5 * kPi) theta -= kPi;
  while (theta < -0.5 * kPi) theta += kPi;
  return theta;
}

double transverse_variance(const WellMoments& w, double theta) {
  const Eigen::Vector3d u = theta_direction(theta);
  return u.dot(w.cov * u);
}

double combined_variance(const SpinMoments& sm, double theta, int sign) {
  const Eigen::Vector3d u = theta_direction(theta);
  const double va = u.dot(sm.well_a.cov * u);
  const double vb = u.dot(sm.well_b.cov * u);
  const double xab = u.dot(sm.cross * u);
  return va + vb + 2.0 * sign * xab;
}

SqueezingDb squeezing_db(const SpinMoments& sm, double theta) {
  SqueezingDb out;
  const double n0 =
      0.5 * (std::abs(sm.well_a.mean[1]) + std::abs(sm.well_b.mean[1]));
  if (n0 < kUndefinedFloor) return out;
  auto to_db = [&](double variance, bool& floored) {
    const double v = std::max(variance, 0.0);
    if (v < kVarianceFloor) {
      floored = true;
      return kDbFloor;
    }
    double db = 10.0 * std::log10(v / n0);
    if (db < kDbFloor) {
      floored = true;
      db = kDbFloor;
    }
    return db;
  };
  out.s_plus_db = to_db(combined_variance(sm, theta, -1), out.plus_floored);
  out.s_minus_db =
      to_db(combined_variance(sm, theta + 0.5 * kPi, +1), out.minus_floored);
  return out;
}

namespace {

struct SignSearch {
  double best_value = 0.0;
  std::pair<int, int> best_signs{+1, +1};
};

// Minimizes fn(v1, v2) over the four sign pairings, where v1/v2 are the
// combined variances at theta and theta + pi/2.
template <typename Fn>
SignSearch minimize_over_signs(const SpinMoments& sm, double theta, Fn fn) {
  SignSearch out;
  bool first = true;
  for (int s1 : {+1, -1}) {
    for (int s2 : {+1, -1}) {
      const double v1 = std::max(0.0, combined_variance(sm, theta, s1));
      const double v2 =
          std::max(0.0, combined_variance(sm, theta + 0.5 * kPi, s2));
      const double value = fn(v1, v2);
      if (first || value < out.best_value) {
        first = false;
        out.best_value = value;
        out.best_signs = {s1, s2};
      }
    }
  }
  return out;
}

CriterionResult variance_criterion(const SpinMoments& sm, double theta,
                                   const std::string& name, bool geometric) {
  CriterionResult res;
  res.name = name;
  res.theta = theta;
  const double denom =
      std::abs(sm.well_a.mean[1]) + std::abs(sm.well_b.mean[1]);
  if (denom < kUndefinedFloor) return res;
  const auto search = minimize_over_signs(
      sm, theta, [&](double v1, double v2) {
        return geometric ? 2.0 * std::sqrt(v1 * v2) / denom
                         : (v1 + v2) / denom;
      });
  res.value = search.best_value;
  res.entangled = entangled_flag(search.best_value);
  res.signs = search.best_signs;
  return res;
}

}  // namespace

CriterionResult product_criterion(const SpinMoments& sm, double theta) {
  return variance_criterion(sm, theta, "E_product", /*geometric=*/true);
}

CriterionResult sum_criterion(const SpinMoments& sm, double theta) {
  return variance_criterion(sm, theta, "E_sum", /*geometric=*/false);
}

}  // namespace twowell
