#pragma once
// Non-autonomous 2-jet conjugacy solver.
//
// Input: a finite sequence of 2-jets f_n(z) = A_n z + q_n(z), n = 0..N-1,
// with invertible linear parts.  Output: 2-jets h_n (near-unitary linear
// part) and g_n (permuted Jonquieres-type normal forms) with
//
//     h_{n+1} o f_n = g_n o h_n     exactly as 2-jets (up to series
//                                   truncation and roundoff).
//
// Construction:
//
// 1. Twisted triangularization.  With the schedule theta_n, build unitary
//    G_n by G_0 = I and the positive-diagonal QR step
//        A_n G_n^* = Qhat_n L_n,      G_{n+1} := U_{theta_n} Qhat_n^*,
//    so that G_{n+1} A_n G_n^{-1} = U_{theta_n} L_n with L_n upper
//    triangular.  Interleaved products U_{theta}L_{k-1}...U L_h equal
//    G_k A_{k,h} G_h^{-1}, so composition norms (spectral) transfer exactly
//    from the input sequence: pinching survives with the same constant.
//
// 2. Straightened quadratic parts: w_n = Qhat_n^* o q_n o G_n^{-1}
//    (this is U_{theta_n}^{-1} G_{n+1} o q_n o G_n^{-1}).
//
// 3. Cohomological step on coefficients.  With s_n := A_{U_{theta_n} L_n}
//    u_{n+1} + L_n^{-1} o w_n, the choice
//        u_n = Q s_n,        v_n = ((Q - I) s_n) o L_n^{-1}
//    satisfies u_n - v_n o L_n = s_n; u_n is computed by the forward series
//        u_n = sum_{m >= n} [prod_{j=n}^{m-1} Q A_{U_{theta_j} L_j} Q]
//                           Q (L_m^{-1} o w_m)
//    truncated at relative tolerance (and at the horizon, where u_N = 0).
//    v_n is supported exactly on the Jonquieres indices T (structurally).
//
// 4. Assembly.  gbar_n = 2-jet inverse of (L_n^{-1} z + v_n(z)) — an exact
//    polynomial automorphism with quadratic part -L_n o v_n o L_n in T — and
//        g_n = U_{tau_n}^{-1} o gbar_n o U_{tau_n},
//        h_n = U_{tau_n}^{-1} o (I + u_n) o G_n,
//    with tau the accumulated twist (tau_{n+1} = theta_n o tau_n).

#include <vector>

#include "jetconj/hom.hpp"
#include "jetconj/jets.hpp"
#include "jetconj/pinched.hpp"
#include "jetconj/poset.hpp"

namespace jetconj {

// Positive-diagonal QR: X = Q * R, R upper triangular, diag(R) positive up
// to roundoff in the imaginary part.
struct QRPos {
  Mat Q, R;
};
QRPos qr_positive(const Mat& X);

// Haar-ish random unitary (QR of a Gaussian-free random matrix; adequate as
// a deterministic scrambler).
Mat random_unitary(int d, SplitMix64& rng);

// f_n = A_n z + (random quadratic with coefficients in disk(quad_scale)).
std::vector<Jet2> make_jet_sequence(const JetSpace& H, const std::vector<Mat>& A,
                                    double quad_scale, SplitMix64& rng);

// ops[m] = Q A_{U_{theta_m} L_m} Q over the coefficient space.
std::vector<Mat> scheduled_conj_ops(const JetSpace& H, const std::vector<Mat>& L);

struct Truncation {
  double tol = 1e-12;   // stop when a term falls below tol * max(1, |partial|)
  int max_terms = 100000;
  int div_window = 12;  // consecutive growing terms before flagging divergence
};

struct SeriesResult {
  Mat S;                 // partial sum, starting from the identity term
  int terms = 0;         // number of summed terms (identity included)
  bool converged = false;
  bool diverged = false;
  bool horizon_hit = false;
  double last_term = 0.0;  // op_norm of the final summed term
  double tail_ratio = 0.0; // geometric ratio estimate between late terms
};

// S_n = sum_{m >= n} prod_{j=n}^{m-1} ops[j] (identity at m = n), truncated
// by tolerance, divergence detection, or the horizon (end of ops).
SeriesResult series_S(const JetSpace& H, const std::vector<Mat>& ops, int n, Truncation tr);

struct SolveOptions {
  Truncation trunc;
};

struct SolveResult {
  // Chain data, sizes: L/theta/w/residual/series_terms N; G/tau/u/h N+1; g N.
  std::vector<Mat> G;
  std::vector<Mat> L;
  std::vector<Permutation> theta;
  std::vector<Permutation> tau;
  std::vector<Vec> w;
  std::vector<Vec> u;
  std::vector<Vec> v;
  std::vector<Jet2> g;
  std::vector<Jet2> h;
  std::vector<double> residual;      // jet_dist(h_{n+1} o f_n, g_n o h_n)
  std::vector<double> u_norm;
  std::vector<double> h_norm;
  std::vector<int> series_terms;
  std::vector<double> u_consistency; // |u_n - Q s_n| (truncation mismatch)
  double residual_max = 0.0;
  double unitarity_max = 0.0;        // max |G_n^* G_n - I|
  bool series_diverged = false;
  // Shared with tests/tools for restart checks.
  std::vector<Mat> conjQ;  // Q A_{U_{theta_m} L_m} Q
  std::vector<Vec> rhs;    // Q (L_m^{-1} o w_m)
};

SolveResult solve_sequence(const JetSpace& H, const std::vector<Jet2>& f, const SolveOptions& opt);

// Least-squares slope of log(vals[n]) against n over [n0, n1).
double log_slope(const std::vector<double>& vals, int n0, int n1);

}  // namespace jetconj
