#pragma once

#include "twowell/kerr.hpp"

namespace twowell {

// Brute-force ground truth for dynamic_spin_moments: each well is held as a
// truncated two-mode Fock tensor, the Kerr step multiplies every joint
// amplitude by its exact energy phase, and the post-BS spin operators are
// evaluated against the truncated state.  cutoff <= 0 selects
// ceil(|alpha|^2 + 10 sqrt(|alpha|^2)) automatically.  Only |alpha|^2 <= 25
// is supported.
SpinMoments fock_oracle(const KerrParams& params, double phi, int cutoff = 0);

// Worst entry-wise deviation between two moment sets, relative with an
// absolute floor: max |x - y| / max(|x|, |y|, 1e-2).  Values below 1e-8
// mean agreement at 1e-8 relative (1e-10 absolute for near-zero entries).
double max_moment_deviation(const SpinMoments& x, const SpinMoments& y);

}  // namespace twowell
