#pragma once
// Basin-of-attraction experiments for permutation-interleaved sequences of
// special triangular automorphisms.
//
// A contracting special triangular sequence attracts all of C^d, with the
// orbit bound |f_{n,0}(z)| <= C0 Lambda^n (|z| + |z|^K) in terms of the
// stable degree K.  Interleaving bounded linear maps T_h at a strictly
// increasing sequence of times m_h (g_n = f_n except g_{m_h} = f_{m_h} o T_h)
// destroys the triangular structure at those times, but the basin stays all
// of C^d provided the gaps m_{h+1} - m_h diverge and sum_h K^{-h} m_h = inf.
//
// The quantitative core is the scalar radius recursion
//   r_{h+1} = C Lambda^{s_h} (r_h + r_h^K),
// which is infinitesimal for every r_0 >= 0 iff sum_h K^{-h} s_h diverges.
// Its transient can overflow double (r_h^K with r_h ~ 1e150), so the
// implementation runs in log space throughout.
//
// A numerical scan cannot certify the unbounded statement; it samples a
// deterministic grid slice plus random far-field points and reports a
// per-point verdict at finite horizon.

#include <cstdint>
#include <vector>

#include "rng.hpp"
#include "triangular.hpp"

namespace jetconj {

enum class Verdict { converged, diverged, undecided };

const char* verdict_name(Verdict v);

// g_n = autos[n] except g_{times[h]} = autos[times[h]] o mix[h].
struct InterleavedSequence {
  std::vector<TriangularAuto> autos;
  std::vector<long long> times;  // strictly increasing
  std::vector<Mat> mix;          // same length as times
};

// Apply g_n (mixing map first when n is an interleave time).
Vec interleaved_step(const InterleavedSequence& seq, long long n,
                     const Vec& z);

struct OrbitResult {
  Verdict verdict = Verdict::undecided;
  long long iterations = 0;  // steps taken when the verdict fired
  double final_norm = 0.0;
  double peak_norm = 0.0;
};

// Iterate g_{n,0}(z) until |z| < eps_conv (converged), |z| > cap
// (diverged), or the horizon min(max_iter, #autos) is exhausted.
OrbitResult run_orbit(const InterleavedSequence& seq, Vec z, double eps_conv,
                      long long max_iter, double cap = 1e150);

// Gap and weighted-sum diagnostics for the interleave times: s_h =
// m_{h+1} - m_h and the partial sums of K^{-h} m_h.
struct InterleaveDiagnostics {
  std::vector<long long> gaps;
  std::vector<double> weighted_partial;
  bool gaps_nondecreasing = true;
};

InterleaveDiagnostics interleave_diagnostics(
    const std::vector<long long>& times, double K);

// Scalar radius recursion r_{h+1} = C Lambda^{s_h} (r_h + r_h^K), run on
// rho = log r:  rho' = log C + s_h log Lambda + rho + log(1 + e^{(K-1) rho}),
// with the softplus evaluated on its stable branch.  Verdict fires at the
// first epoch with r < eps (converged) or r > cap (diverged).
struct RadiusRecursionResult {
  std::vector<double> log_r;  // natural log of r_h, -inf for r = 0
  Verdict verdict = Verdict::undecided;
  long long epochs = 0;  // epochs elapsed when the verdict fired
};

RadiusRecursionResult radius_recursion(double C, double lambda, double K,
                            const std::vector<double>& s, double r0,
                            double eps = 1e-9, double cap = 1e150);

// Deterministic sample cloud: about half the points from a real lattice of
// span grid_radius per real coordinate (strided down to the requested
// count), the rest random with log-uniform radii in [1, far_radius].
std::vector<Vec> sample_points(int d, int count, double grid_radius,
                               double far_radius, SplitMix64& rng);

struct BasinPoint {
  Vec z;
  OrbitResult orbit;
};

struct BasinReport {
  std::vector<BasinPoint> points;
  int n_converged = 0;
  int n_diverged = 0;
  int n_undecided = 0;
  double eps_conv = 0.0;
  long long max_iter = 0;
};

BasinReport basin_scan(const InterleavedSequence& seq,
                       const std::vector<Vec>& pts, double eps_conv,
                       long long max_iter, double cap = 1e150);

// Interleave schedule of the main construction: times m_h = D^h - 1 for
// D = 2^{d-1} and mixing maps U_{sigma_h} from the nilpotency word, for all
// epochs with m_h < horizon.
InterleavedSequence word_interleaved(std::vector<TriangularAuto> autos,
                                     int d);

}  // namespace jetconj
