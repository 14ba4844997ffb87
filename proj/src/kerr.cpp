#include "twowell/kerr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twowell/detail/parallel.hpp"
#include "twowell/detail/spin_ops.hpp"

namespace twowell {

namespace {

constexpr double kMaxAlphaSq = 1e6;
constexpr double kImagGuard = 1e-8;
constexpr double kInvSqrt2 = 0.70710678118654752440;

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

int factorial(int n) {
  int out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

KerrParams KerrParams::uniform(Complex alpha, GRatios g, double n_ref,
                               double tau) {
  KerrParams p;
  p.alphas = {alpha, alpha, alpha, alpha};
  p.g_ratios = g;
  p.atom_number_ref = n_ref;
  p.tau = tau;
  return p;
}

void KerrParams::validate() const {
  if (!(atom_number_ref > 0.0) || !std::isfinite(atom_number_ref)) {
    throw std::invalid_argument("KerrParams: N_A must be positive");
  }
  if (!std::isfinite(tau)) {
    throw std::invalid_argument("KerrParams: non-finite tau");
  }
  if (!std::isfinite(g_ratios.g22) || !std::isfinite(g_ratios.g12)) {
    throw std::invalid_argument("KerrParams: non-finite interaction ratio");
  }
  for (const Complex& a : alphas) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("KerrParams: non-finite alpha");
    }
    if (std::norm(a) > kMaxAlphaSq) {
      throw std::invalid_argument("KerrParams: |alpha|^2 exceeds 1e6");
    }
  }
}

MonomialDescriptor MonomialDescriptor::adjoint() const {
  MonomialDescriptor out;
  out.dag = ann;
  out.ann = dag;
  out.coeff = std::conj(coeff);
  return out;
}

MonomialDescriptor MonomialDescriptor::from_key(std::uint64_t key,
                                                Complex coeff) {
  MonomialDescriptor out;
  out.coeff = coeff;
  for (int m = kModeCount - 1; m >= 0; --m) {
    out.ann[m] = std::uint8_t(key & 0xf);
    out.dag[m] = std::uint8_t(key >> 4 & 0xf);
    key >>= 8;
  }
  return out;
}

Polynomial Polynomial::constant(Complex c) {
  Polynomial p;
  if (c != Complex(0.0, 0.0)) p.terms_[0] = c;
  return p;
}

Polynomial Polynomial::ladder(Mode m, bool dagger) {
  MonomialDescriptor mono;
  if (dagger) {
    mono.dag[int(m)] = 1;
  } else {
    mono.ann[int(m)] = 1;
  }
  Polynomial p;
  p.add_term(mono);
  return p;
}

void Polynomial::add_term(const MonomialDescriptor& mono) {
  if (mono.coeff == Complex(0.0, 0.0)) return;
  auto [it, inserted] = terms_.emplace(mono.exponent_key(), mono.coeff);
  if (!inserted) {
    it->second += mono.coeff;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [key, coeff] : other.terms_) {
    add_term(MonomialDescriptor::from_key(key, coeff));
  }
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  out += other;
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out;
  for (const auto& [lk, lc] : terms_) {
    const MonomialDescriptor left = MonomialDescriptor::from_key(lk, lc);
    for (const auto& [rk, rc] : other.terms_) {
      const MonomialDescriptor right = MonomialDescriptor::from_key(rk, rc);
      // a^n a†^m = sum_k k! C(n,k) C(m,k) a†^(m-k) a^(n-k), mode by mode.
      std::array<int, kModeCount> kmax{};
      for (int m = 0; m < kModeCount; ++m) {
        kmax[m] = std::min<int>(left.ann[m], right.dag[m]);
      }
      std::array<int, kModeCount> k{};
      for (;;) {
        MonomialDescriptor term;
        double weight = 1.0;
        for (int m = 0; m < kModeCount; ++m) {
          weight *= double(factorial(k[m])) *
                    binomial(left.ann[m], k[m]) * binomial(right.dag[m], k[m]);
          term.dag[m] = std::uint8_t(left.dag[m] + right.dag[m] - k[m]);
          term.ann[m] = std::uint8_t(left.ann[m] + right.ann[m] - k[m]);
        }
        term.coeff = lc * rc * weight;
        out.add_term(term);
        int m = 0;
        while (m < kModeCount && k[m] == kmax[m]) {
          k[m] = 0;
          ++m;
        }
        if (m == kModeCount) break;
        ++k[m];
      }
    }
  }
  return out;
}

Polynomial Polynomial::scaled(Complex c) const {
  Polynomial out;
  if (c == Complex(0.0, 0.0)) return out;
  for (const auto& [key, coeff] : terms_) out.terms_[key] = coeff * c;
  return out;
}

Polynomial Polynomial::adjoint() const {
  Polynomial out;
  for (const auto& [key, coeff] : terms_) {
    out.add_term(MonomialDescriptor::from_key(key, coeff).adjoint());
  }
  return out;
}

std::vector<MonomialDescriptor> Polynomial::monomials() const {
  std::vector<MonomialDescriptor> out;
  out.reserve(terms_.size());
  for (const auto& [key, coeff] : terms_) {
    out.push_back(MonomialDescriptor::from_key(key, coeff));
  }
  return out;
}

Complex kerr_kernel(Complex alpha, int m, int n, double lambda) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("kerr_kernel: negative exponent");
  }
  Complex amp(1.0, 0.0);
  for (int i = 0; i < m; ++i) amp *= std::conj(alpha);
  for (int i = 0; i < n; ++i) amp *= alpha;
  const Complex ring = std::polar(1.0, lambda) - Complex(1.0, 0.0);
  return amp * std::exp(std::norm(alpha) * ring);
}

namespace {

// A single-mode operator word over {a†, a}, tracked while number-phase
// exponentials are commuted to the right end.
struct ModeReduction {
  double lambda = 0.0;       // accumulated exp(i lambda n) left of the cursor
  Complex scalar{1.0, 0.0};  // phases picked up moving exponentials right
  std::vector<int> word;     // +1 creation, -1 annihilation, in order
};

void normal_order_into(std::vector<int> word, double mult,
                       std::map<std::pair<int, int>, double>& out) {
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] == -1 && word[i + 1] == +1) {
      std::vector<int> swapped = word;
      std::swap(swapped[i], swapped[i + 1]);
      normal_order_into(std::move(swapped), mult, out);
      std::vector<int> contracted;
      contracted.reserve(word.size() - 2);
      for (std::size_t j = 0; j < word.size(); ++j) {
        if (j != i && j != i + 1) contracted.push_back(word[j]);
      }
      normal_order_into(std::move(contracted), mult, out);
      return;
    }
  }
  int p = 0, q = 0;
  for (int v : word) (v > 0 ? p : q) += 1;
  out[{p, q}] += mult;
}

Complex mode_factor(const ModeReduction& red, Complex alpha) {
  std::map<std::pair<int, int>, double> terms;
  normal_order_into(red.word, 1.0, terms);
  Complex sum(0.0, 0.0);
  for (const auto& [pq, mult] : terms) {
    const auto [p, q] = pq;
    // a†^p a^q e^{i lambda n} = e^{i q lambda} a†^p e^{i lambda n} a^q
    sum += mult * std::polar(1.0, q * red.lambda) *
           kerr_kernel(alpha, p, q, red.lambda);
  }
  return red.scalar * sum;
}

}  // namespace

Complex evolve_monomial(const MonomialDescriptor& mono,
                        const KerrParams& params) {
  params.validate();
  if (mono.degree() > 4) {
    throw unsupported_request_error(
        "evolve_monomial: monomial degree exceeds 4");
  }
  const double t_g11 = params.tau / params.atom_number_ref;
  std::array<ModeReduction, kModeCount> red;

  // The evolution phase of mode mu rides on the number operators of both
  // modes in its well: a_mu(t) = exp[-i t sum_nu g_{mu nu} n_nu] a_mu.
  auto push_phases = [&](Mode mu, double sign) {
    const int w = well_of(mu);
    const int s = spin_of(mu);
    for (int s2 = 0; s2 < 2; ++s2) {
      red[int(mode_at(w, s2))].lambda +=
          sign * params.g_ratios.ratio(s, s2) * t_g11;
    }
  };
  auto push_ladder = [&](Mode mu, bool dagger) {
    ModeReduction& r = red[int(mu)];
    r.scalar *= std::polar(1.0, dagger ? r.lambda : -r.lambda);
    r.word.push_back(dagger ? +1 : -1);
  };

  for (int m = 0; m < kModeCount; ++m) {
    for (int i = 0; i < mono.dag[m]; ++i) {
      push_ladder(Mode(m), true);
      push_phases(Mode(m), +1.0);
    }
  }
  for (int m = 0; m < kModeCount; ++m) {
    for (int i = 0; i < mono.ann[m]; ++i) {
      push_phases(Mode(m), -1.0);
      push_ladder(Mode(m), false);
    }
  }

  Complex result = mono.coeff;
  for (int m = 0; m < kModeCount; ++m) {
    result *= mode_factor(red[m], params.alphas[m]);
  }
  return result;
}

namespace {

// Pre-BS expansion of one primed ladder operator.
Polynomial primed_ladder(Mode m, bool dagger, double phi) {
  const int spin = spin_of(m);
  const Mode in_a = mode_at(0, spin);
  const Mode in_b = mode_at(1, spin);
  Polynomial p;
  if (well_of(m) == 0) {
    // a_i' = (a_i + e^{i phi} b_i)/sqrt(2)
    p = Polynomial::ladder(in_a, false).scaled(kInvSqrt2) +
        Polynomial::ladder(in_b, false).scaled(std::polar(kInvSqrt2, phi));
  } else {
    // b_i' = (-e^{-i phi} a_i + b_i)/sqrt(2)
    p = Polynomial::ladder(in_a, false).scaled(-std::polar(kInvSqrt2, -phi)) +
        Polynomial::ladder(in_b, false).scaled(kInvSqrt2);
  }
  return dagger ? p.adjoint() : p;
}

}  // namespace

std::vector<MonomialDescriptor> beamsplitter_expand(
    const MonomialDescriptor& post_bs, double phi) {
  Polynomial acc = Polynomial::constant(post_bs.coeff);
  for (int m = 0; m < kModeCount; ++m) {
    for (int i = 0; i < post_bs.dag[m]; ++i) {
      acc = acc * primed_ladder(Mode(m), true, phi);
    }
  }
  for (int m = 0; m < kModeCount; ++m) {
    for (int i = 0; i < post_bs.ann[m]; ++i) {
      acc = acc * primed_ladder(Mode(m), false, phi);
    }
  }
  return acc.monomials();
}

MomentTable::MomentTable(KerrParams params, Frame frame, double phi)
    : params_(std::move(params)), frame_(frame), phi_(phi) {
  params_.validate();
}

Complex MomentTable::value_of(const MonomialDescriptor& mono) {
  const std::uint64_t key = mono.exponent_key();
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    MonomialDescriptor unit = mono;
    unit.coeff = Complex(1.0, 0.0);
    Complex value(0.0, 0.0);
    if (frame_ == Frame::post_bs) {
      for (const MonomialDescriptor& pre : beamsplitter_expand(unit, phi_)) {
        value += evolve_monomial(pre, params_);
      }
    } else {
      value = evolve_monomial(unit, params_);
    }
    it = cache_.emplace(key, value).first;
  }
  return mono.coeff * it->second;
}

namespace detail {

SpinPolySet build_spin_polys(double phi) {
  // Spin operators are assembled in the primed (post-BS) algebra, where the
  // commutation relations are unchanged, then every primed monomial is
  // expanded through the splitter.
  Polynomial up[kModeCount], up_dag[kModeCount];
  for (int m = 0; m < kModeCount; ++m) {
    up[m] = Polynomial::ladder(Mode(m), false);
    up_dag[m] = Polynomial::ladder(Mode(m), true);
  }
  const Complex half(0.5, 0.0);
  const Complex mihalf(0.0, -0.5);  // 1/(2i)

  Polynomial j_primed[2][3], n_primed[2];
  for (int w = 0; w < 2; ++w) {
    const int m1 = int(mode_at(w, 0));
    const int m2 = int(mode_at(w, 1));
    const Polynomial raise = up_dag[m1] * up[m2];   // a1† a2
    const Polynomial lower = up_dag[m2] * up[m1];
    j_primed[w][0] = (raise + lower).scaled(half);
    j_primed[w][1] = (raise + lower.scaled(-1.0)).scaled(mihalf);
    j_primed[w][2] =
        (up_dag[m1] * up[m1] + (up_dag[m2] * up[m2]).scaled(-1.0)).scaled(half);
    n_primed[w] = up_dag[m1] * up[m1] + up_dag[m2] * up[m2];
  }

  auto expand = [phi](const Polynomial& primed) {
    Polynomial out;
    for (const MonomialDescriptor& mono : primed.monomials()) {
      for (const MonomialDescriptor& pre : beamsplitter_expand(mono, phi)) {
        out.add_term(pre);
      }
    }
    return out;
  };

  SpinPolySet set;
  set.phi = phi;
  for (int w = 0; w < 2; ++w) {
    set.number[w] = expand(n_primed[w]);
    for (int p = 0; p < 3; ++p) set.j[w][p] = expand(j_primed[w][p]);
    for (int p = 0; p < 3; ++p) {
      for (int q = p; q < 3; ++q) {
        const Polynomial sym =
            (j_primed[w][p] * j_primed[w][q] + j_primed[w][q] * j_primed[w][p])
                .scaled(half);
        set.sym[w][p][q] = expand(sym);
        set.sym[w][q][p] = set.sym[w][p][q];
      }
    }
  }
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      // A and B primed modes commute, so the plain product is symmetric.
      set.cross[p][q] = expand(j_primed[0][p] * j_primed[1][q]);
    }
  }
  return set;
}

SpinMoments assemble_spin_moments(const SpinPolySet& set,
                                  const MonomialEvaluator& eval) {
  auto value_of = [&](const Polynomial& poly) {
    Complex sum(0.0, 0.0);
    for (const MonomialDescriptor& mono : poly.monomials()) sum += eval(mono);
    if (std::abs(sum.imag()) > kImagGuard * (1.0 + std::abs(sum.real()))) {
      throw numeric_error(
          "assemble_spin_moments: non-real expectation, imag = " +
          std::to_string(sum.imag()));
    }
    return sum.real();
  };

  SpinMoments out;
  WellMoments* wells[2] = {&out.well_a, &out.well_b};
  for (int w = 0; w < 2; ++w) {
    wells[w]->n_mean = value_of(set.number[w]);
    for (int p = 0; p < 3; ++p) wells[w]->mean[p] = value_of(set.j[w][p]);
    for (int p = 0; p < 3; ++p) {
      for (int q = p; q < 3; ++q) {
        const double cov = value_of(set.sym[w][p][q]) -
                           wells[w]->mean[p] * wells[w]->mean[q];
        wells[w]->cov(p, q) = cov;
        wells[w]->cov(q, p) = cov;
      }
    }
  }
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      out.cross(p, q) = value_of(set.cross[p][q]) -
                        out.well_a.mean[p] * out.well_b.mean[q];
    }
  }
  return out;
}

}  // namespace detail

SpinMoments dynamic_spin_moments(const KerrParams& params, double phi) {
  const detail::SpinPolySet set = detail::build_spin_polys(phi);
  MomentTable table(params, Frame::pre_bs, phi);
  return detail::assemble_spin_moments(
      set, [&](const MonomialDescriptor& mono) { return table.value_of(mono); });
}

std::vector<DynamicRow> dynamic_sweep(const DynamicSweepConfig& config) {
  if (config.tau_grid.empty()) {
    throw std::invalid_argument("dynamic_sweep: empty tau grid");
  }
  config.params.validate();
  const detail::SpinPolySet set = detail::build_spin_polys(config.phi);
  std::vector<DynamicRow> rows(config.tau_grid.size());

  detail::parallel_for(config.tau_grid.size(), config.threads, [&](std::size_t i) {
    const double tau = config.tau_grid[i];
    try {
      KerrParams params = config.params;
      params.tau = tau;
      MomentTable table(params, Frame::pre_bs, config.phi);
      const SpinMoments raw = detail::assemble_spin_moments(
          set,
          [&](const MonomialDescriptor& mono) { return table.value_of(mono); });
      const SpinMoments sm =
          config.rotate_frame ? rotate_to_mean_spin_frame(raw) : raw;
      DynamicRow& row = rows[i];
      row.tau = tau;
      // The reported angle minimizes the variance of the interwell
      // difference J_A - J_B, not of a single well.
      const Eigen::Matrix3d difference_cov = sm.well_a.cov + sm.well_b.cov -
                                             sm.cross - sm.cross.transpose();
      row.theta = optimal_theta(difference_cov);
      row.squeezing = squeezing_db(sm, row.theta);
      row.e_product = product_criterion(sm, row.theta);
      row.e_sum = sum_criterion(sm, row.theta);
    } catch (const std::exception& e) {
      throw numeric_error("dynamic_sweep: tau = " + std::to_string(tau) +
                          ": " + e.what());
    }
  });
  return rows;
}

}  // namespace twowell
