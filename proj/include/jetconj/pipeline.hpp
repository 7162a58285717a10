#pragma once
// End-to-end run: generate a pinched contracting 2-jet sequence, check the
// admissibility conditions, solve the conjugacy, rescale, and verify that
// the normal forms attract every sampled point.
//
// Stages, each with a PASS/FAIL verdict and a one-line detail:
//
//   pinching   measured composition constants of the generated sequence
//   bunching   the weakened bunching condition on (Lambda, M), both the
//              series form and its closed-form equivalent
//   rescale    feasibility of the rescaling window and the chosen R
//   solve      conjugacy residual, series behaviour, unitarity of the chain
//   structure  exact normal-form support and the interleave bookkeeping
//   growth     boundedness of the rescaled quadratic parts
//   basin      full convergence of the sampled rescaled normal-form orbits
//
// The rescaled basin chain: with g_n = U_{tau_n}^{-1} gbar_n U_{tau_n} and
// tau_{n+1} = theta_n tau_n, adjacent twists cancel into U_{theta}:
//
//   g_{n,0} = U_{tau_n}^{-1} o gbar_{n-1} o U_{theta_{n-2}} o gbar_{n-2}
//             o ... o gbar_1 o U_{theta_0} o gbar_0        (tau_0 = id),
//
// i.e. an interleaved special-triangular sequence: step j applies
// U_{theta_{j-1}} first (nontrivial exactly when j = D^h) and then gbar_j.
// Rescaling by f -> R^{n+1} f(R^{-n} .) multiplies the linear part of
// gbar_n by R and its quadratic part by R^{1-n}, and the outer unitary
// factor does not change orbit norms, so scanning the interleaved rescaled
// gbar chain decides the basin of the rescaled normal forms.
//
// All artifacts are byte-deterministic for a fixed config.

#include <map>
#include <string>
#include <vector>

#include "basin.hpp"
#include "bunching.hpp"
#include "solver.hpp"

namespace jetconj {

struct PipelineConfig {
  int d = 2;
  double contraction = 0.45;  // Lambda
  double expansion = 4.5;     // M
  double offdiag = 0.1;
  double margin = 0.05;
  int horizon = 160;
  double quad_scale = 0.3;
  std::uint64_t seed = 1;
  double series_tol = 1e-12;
  double residual_tol = 1e-8;
  int samples = 500;
  double grid_radius = 5.0;
  double far_radius = 10.0;
  double basin_eps = 1e-9;
};

struct PipelineStage {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PipelineResult {
  std::vector<PipelineStage> stages;
  bool pass = false;

  // Key measurements, also embedded in the JSON artifact.
  double pinch_constant = 0.0;
  double rescale_R = 0.0;
  double residual_max = 0.0;
  double quad_bound = 0.0;  // max rescaled quadratic norm
  int basin_converged = 0;
  int basin_total = 0;

  // Artifact bytes keyed by file name (solve.csv, basin.csv, basin.svg,
  // basin.json, pipeline.json).
  std::map<std::string, std::string> artifacts;
};

PipelineResult run_pipeline(const PipelineConfig& cfg);

// Write every artifact into dir (created if absent) and return the paths.
std::vector<std::string> write_pipeline_artifacts(const PipelineResult& res,
                                                  const std::string& dir);

}  // namespace jetconj
