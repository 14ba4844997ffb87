#pragma once

#include <functional>

#include "twowell/kerr.hpp"

namespace twowell::detail {

// Post-beam-splitter spin observables expanded to pre-beam-splitter
// normally ordered polynomials for a fixed splitter phase.
struct SpinPolySet {
  double phi = 0.0;
  Polynomial j[2][3];        // [well][component]
  Polynomial number[2];      // total atom number per well
  Polynomial sym[2][3][3];   // {J^P, J^Q}/2 per well
  Polynomial cross[3][3];    // J_A^P J_B^Q
};

SpinPolySet build_spin_polys(double phi);

using MonomialEvaluator = std::function<Complex(const MonomialDescriptor&)>;

// Evaluates the polynomial set with the supplied monomial expectation and
// packs means, covariances, and cross covariances.  Imaginary residues
// beyond roundoff scale raise numeric_error.
SpinMoments assemble_spin_moments(const SpinPolySet& set,
                                  const MonomialEvaluator& eval);

}  // namespace twowell::detail
