// End-to-end pipeline: generate, check, solve, rescale, scan.

#include "jetconj/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "jetconj/nilpotency.hpp"
#include "jetconj/report.hpp"
#include "jetconj/schedule.hpp"
#include "jetconj/triangular.hpp"
#include "json.hpp"

namespace jetconj {

namespace {

std::string pass_word(bool b) { return b ? "pass" : "FAIL"; }

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  if (cfg.d < 2 || cfg.d > 6)
    throw std::invalid_argument("pipeline: d must be in 2..6");
  if (!(cfg.contraction > 0.0 && cfg.contraction < 1.0))
    throw std::invalid_argument("pipeline: contraction must be in (0,1)");
  if (!(cfg.expansion > 1.0))
    throw std::invalid_argument("pipeline: expansion must exceed 1");
  if (cfg.horizon < 8 || cfg.samples < 1)
    throw std::invalid_argument("pipeline: horizon or sample count too small");

  PipelineResult res;
  const JetSpace H(cfg.d);
  nlohmann::ordered_json doc;
  doc["config"] = {{"d", cfg.d},
                   {"contraction", cfg.contraction},
                   {"expansion", cfg.expansion},
                   {"offdiag", cfg.offdiag},
                   {"margin", cfg.margin},
                   {"horizon", cfg.horizon},
                   {"quad_scale", cfg.quad_scale},
                   {"seed", cfg.seed},
                   {"series_tol", cfg.series_tol},
                   {"residual_tol", cfg.residual_tol},
                   {"samples", cfg.samples},
                   {"grid_radius", cfg.grid_radius},
                   {"far_radius", cfg.far_radius},
                   {"basin_eps", cfg.basin_eps}};

  auto stage = [&](const std::string& name, bool pass,
                   const std::string& detail) {
    res.stages.push_back({name, pass, detail});
    return pass;
  };
  auto finish = [&]() {
    res.pass = true;
    for (const PipelineStage& s : res.stages) res.pass = res.pass && s.pass;
    nlohmann::ordered_json st = nlohmann::ordered_json::array();
    for (const PipelineStage& s : res.stages)
      st.push_back({{"name", s.name},
                    {"verdict", pass_word(s.pass)},
                    {"detail", s.detail}});
    doc["stages"] = st;
    doc["pass"] = res.pass;
    res.artifacts["pipeline.json"] = doc.dump(2) + "\n";
    return res;
  };

  // Input sequence: pinched upper-triangular linear parts hidden behind a
  // fixed unitary change of frame, plus bounded random quadratic parts.
  SplitMix64 rng_lin = component_rng(cfg.seed, "pipeline-linear");
  SplitMix64 rng_mix = component_rng(cfg.seed, "pipeline-frame");
  SplitMix64 rng_quad = component_rng(cfg.seed, "pipeline-quadratic");
  SplitMix64 rng_pts = component_rng(cfg.seed, "pipeline-points");

  PinchedParams par;
  par.d = cfg.d;
  par.Lambda = cfg.contraction;
  par.M = cfg.expansion;
  par.offdiag = cfg.offdiag;
  par.margin = cfg.margin;
  std::vector<Mat> tri = make_pinched(par, cfg.horizon, rng_lin);
  Mat W = random_unitary(cfg.d, rng_mix);
  std::vector<Mat> A;
  A.reserve(tri.size());
  for (const Mat& T : tri) A.push_back(W * T * W.adjoint());
  std::vector<Jet2> f = make_jet_sequence(H, A, cfg.quad_scale, rng_quad);

  // Stage: pinching.
  PinchMeasure pm = measure_pinching(A, cfg.contraction, cfg.expansion);
  res.pinch_constant = pm.C;
  doc["pinching"] = {{"C_forward", pm.C_forward},
                     {"C_inverse", pm.C_inverse},
                     {"C", pm.C}};
  bool ok = stage("pinching", std::isfinite(pm.C) && pm.C < 1e6,
                  "C_forward=" + fmt_num(pm.C_forward) +
                      " C_inverse=" + fmt_num(pm.C_inverse));
  if (!ok) return finish();

  // Stage: bunching.  The series condition and its closed-form equivalent
  // must agree in sign; epsilon(d) is reported exactly.
  double sm = series_margin(cfg.d, cfg.contraction, cfg.expansion);
  double sma = series_margin_alt(cfg.d, cfg.contraction, cfg.expansion);
  bool holds = series_holds(cfg.d, cfg.contraction, cfg.expansion);
  bool agree = (sm < 0) == (sma < 0);
  doc["bunching"] = {{"series_margin", sm},
                     {"series_margin_alt", sma},
                     {"epsilon_exact", epsilon_bunching(cfg.d).str()},
                     {"holds", holds}};
  ok = stage("bunching", holds && agree,
             "series_margin=" + fmt_num(sm) +
                 " epsilon=" + epsilon_bunching(cfg.d).str());
  if (!ok) return finish();

  // Stage: rescale feasibility.
  RescaleChoice rc = choose_R(cfg.d, cfg.contraction, cfg.expansion);
  res.rescale_R = rc.R;
  doc["rescale"] = {{"feasible", rc.feasible},
                    {"R", rc.R},
                    {"log_window_lo", rc.log_lo},
                    {"log_window_hi", rc.log_hi}};
  ok = stage("rescale", rc.feasible,
             rc.feasible ? "R=" + fmt_num(rc.R)
                         : "violated: " + rc.violated);
  if (!ok) return finish();

  // Stage: solve.
  SolveOptions opt;
  opt.trunc.tol = cfg.series_tol;
  SolveResult sol = solve_sequence(H, f, opt);
  res.residual_max = sol.residual_max;
  doc["solve"] = {{"residual_max", sol.residual_max},
                  {"unitarity_max", sol.unitarity_max},
                  {"series_diverged", sol.series_diverged}};
  ok = stage("solve",
             sol.residual_max <= cfg.residual_tol && !sol.series_diverged &&
                 sol.unitarity_max <= 1e-10,
             "residual_max=" + fmt_num(sol.residual_max) +
                 " unitarity=" + fmt_num(sol.unitarity_max));
  {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n < sol.residual.size(); ++n)
      rows.push_back({std::to_string(n), fmt_num(sol.residual[n]),
                      fmt_num(sol.u_norm[n]), fmt_num(sol.h_norm[n]),
                      std::to_string(sol.series_terms[n])});
    res.artifacts["solve.csv"] = csv_table(
        {"n", "residual", "u_norm", "h_norm", "series_terms"}, rows);
  }
  if (!ok) return finish();

  // Stage: structure.  The permuted normal forms must be exactly
  // L_n + (quadratic supported in T); h linear parts unitary.
  const int N = static_cast<int>(sol.g.size());
  const auto T = H.set_T();
  bool exact_ok = true;
  for (int n = 0; n < N && exact_ok; ++n) {
    Jet2 gbar = conj_by_perm(H, sol.tau[n].inverse(), sol.g[n]);
    if ((gbar.A - sol.L[n]).cwiseAbs().maxCoeff() != 0.0) exact_ok = false;
    for (int s = 0; s < H.size(); ++s)
      if (!set_contains(T, s) &&
          (gbar.q(s) != cd(0.0) || sol.v[n](s) != cd(0.0)))
        exact_ok = false;
    if (!is_upper_triangular_exact(sol.L[n])) exact_ok = false;
  }
  std::vector<long long> times;
  {
    long long D = epoch_base(cfg.d);
    for (long long m = 1; m < N; m *= D) times.push_back(m);
  }
  InterleaveDiagnostics idia =
      interleave_diagnostics(times, static_cast<double>(epoch_base(cfg.d)));
  bool sched_ok = idia.gaps_nondecreasing &&
                  (times.size() < 2 ||
                   idia.weighted_partial.back() >
                       0.5 * static_cast<double>(times.size()));
  doc["structure"] = {{"normal_form_exact", exact_ok},
                      {"interleave_times", times},
                      {"weighted_partial_sums", idia.weighted_partial}};
  ok = stage("structure", exact_ok && sched_ok,
             std::string("normal_form_exact=") + (exact_ok ? "yes" : "no") +
                 " epochs=" + std::to_string(times.size()));
  if (!ok) return finish();

  // Stage: growth.  Rescaling multiplies the quadratic part of gbar_n by
  // R^{1-n}; boundedness (with a decaying tail) is what the choice of R
  // buys.  Also measure the contraction constant of the rescaled chain.
  std::vector<TriangularAuto> autos;
  autos.reserve(static_cast<std::size_t>(N));
  double head_max = 0.0, tail_max = 0.0;
  for (int n = 0; n < N; ++n) {
    Jet2 gbar = conj_by_perm(H, sol.tau[n].inverse(), sol.g[n]);
    Jet2 scaled;
    scaled.A = rc.R * gbar.A;
    scaled.q = std::pow(rc.R, 1 - n) * gbar.q;
    double qn = coeff_norm(scaled.q);
    if (n < N / 2)
      head_max = std::max(head_max, qn);
    else
      tail_max = std::max(tail_max, qn);
    autos.push_back(tri_from_jet(H, scaled));
  }
  res.quad_bound = std::max(head_max, tail_max);
  double lam_tilde = rc.R * cfg.contraction;
  double chain_C = linear_chain_constant(autos, lam_tilde);
  doc["growth"] = {{"quad_head_max", head_max},
                   {"quad_tail_max", tail_max},
                   {"rescaled_contraction", lam_tilde},
                   {"rescaled_chain_constant", chain_C}};
  ok = stage("growth",
             std::isfinite(res.quad_bound) && res.quad_bound < 1e6 &&
                 tail_max <= head_max && lam_tilde < 1.0 &&
                 std::isfinite(chain_C),
             "quad_bound=" + fmt_num(res.quad_bound) +
                 " rescaled_contraction=" + fmt_num(lam_tilde));
  if (!ok) return finish();

  // Stage: basin.  Interleaved scan of the rescaled normal forms.
  InterleavedSequence seq;
  seq.autos = std::move(autos);
  seq.times = times;
  for (std::size_t h = 0; h < times.size(); ++h)
    seq.mix.push_back(u_matrix(sigma_at(cfg.d, static_cast<int>(h))));
  std::vector<Vec> pts = sample_points(cfg.d, cfg.samples, cfg.grid_radius,
                                       cfg.far_radius, rng_pts);
  BasinReport rep = basin_scan(seq, pts, cfg.basin_eps, N);
  res.basin_converged = rep.n_converged;
  res.basin_total = static_cast<int>(rep.points.size());
  doc["basin"] = {{"converged", rep.n_converged},
                  {"diverged", rep.n_diverged},
                  {"undecided", rep.n_undecided}};
  res.artifacts["basin.csv"] = basin_csv(rep);
  res.artifacts["basin.svg"] = basin_svg(rep);
  res.artifacts["basin.json"] = basin_json(rep);
  stage("basin", rep.n_converged == res.basin_total,
        std::to_string(rep.n_converged) + "/" +
            std::to_string(res.basin_total) + " converged");
  return finish();
}

std::vector<std::string> write_pipeline_artifacts(const PipelineResult& res,
                                                  const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  for (const auto& [name, bytes] : res.artifacts) {
    std::string path = dir + "/" + name;
    write_file(path, bytes);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace jetconj
