#pragma once
// Generator and verification of pinched sequences of linear maps: families
// (A_n) with composition bounds
//
//     ||A_{k,h}|| <= C * Lambda^{k-h},   ||A_{k,h}^{-1}|| <= C * M^{k-h},
//
// where A_{k,h} = A_{k-1} ... A_h.  The generator produces upper-triangular
// maps whose diagonal moduli live in [(1+margin)/M, (1-margin)*Lambda] with
// random phases and small off-diagonal entries; the margin absorbs the
// polynomial growth contributed by the nilpotent part, keeping the measured
// C modest.  Spectral norms are used here because the solver conjugates
// these compositions by unitary maps and the constants must not move.

#include <vector>

#include "jetconj/hom.hpp"
#include "jetconj/rng.hpp"

namespace jetconj {

struct PinchedParams {
  int d = 2;
  double Lambda = 0.5;   // per-step contraction bound, < 1
  double M = 4.0;        // per-step expansion bound of the inverses
  double offdiag = 0.1;  // off-diagonal magnitude cap, relative to Lambda
  double margin = 0.05;  // diagonal moduli stay inside the bounds by this factor
};

// Horizon-many upper-triangular invertible maps.  Requires
// Lambda * M >= (1+margin)/(1-margin) so the diagonal interval is nonempty.
std::vector<Mat> make_pinched(const PinchedParams& par, int horizon, SplitMix64& rng);

// A_{k,h} = A_{k-1} * ... * A_h for 0 <= h <= k <= horizon (identity if k == h).
Mat pinched_composition(const std::vector<Mat>& A, int k, int h);

// Measured pinching constants over all pairs h < k:
//   C_forward = max ||A_{k,h}||_2 / Lambda^{k-h},
//   C_inverse = max ||A_{k,h}^{-1}||_2 / M^{k-h},
// and C = max(1, C_forward, C_inverse).
struct PinchMeasure {
  double C_forward = 0.0;
  double C_inverse = 0.0;
  double C = 1.0;
};
PinchMeasure measure_pinching(const std::vector<Mat>& A, double Lambda, double M);

}  // namespace jetconj
