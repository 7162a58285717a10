// Command-line driver: enumeration, verification, solving, and scans.
//
// Exit codes: 0 success, 1 a requested check failed, 2 usage or config
// errors.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jetconj/basin.hpp"
#include "jetconj/bunching.hpp"
#include "jetconj/hom.hpp"
#include "jetconj/nilpotency.hpp"
#include "jetconj/pipeline.hpp"
#include "jetconj/pinched.hpp"
#include "jetconj/poset.hpp"
#include "jetconj/report.hpp"
#include "jetconj/schedule.hpp"
#include "jetconj/solver.hpp"
#include "jetconj/triangular.hpp"
#include "json.hpp"

namespace {

using namespace jetconj;

struct Global {
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::string out_dir = ".";
  std::string emit = "text";
};

std::string out_path(const Global& g, const std::string& name) {
  std::filesystem::create_directories(g.out_dir);
  return g.out_dir + "/" + name;
}

std::uint64_t effective_seed(const Global& g, const Config& cfg) {
  if (g.seed_set) return g.seed;
  return static_cast<std::uint64_t>(cfg.get_int("seed", 1));
}

// ---------------------------------------------------------------- poset --

int cmd_poset(const Global& g, int d, int k) {
  JetSpace H(d, k);
  const auto V = H.set_V();
  const auto T = H.set_T();
  Relation W = make_W(H);
  Relation WW = rel_matmul(W, W);
  bool idem = true;
  for (int s = 0; s < H.size() && idem; ++s)
    for (int t = 0; t < H.size(); ++t)
      if (W.at(s, t) != WW.at(s, t)) {
        idem = false;
        break;
      }
  std::printf("index space: d=%d k=%d size=%d height=%d\n", d, k, H.size(),
              H.height());
  std::printf("|V|=%zu |T|=%zu |W|=%zu (pairs), W o W == W: %s\n", V.size(),
              T.size(), static_cast<std::size_t>(W.count()),
              idem ? "yes" : "NO");

  if (g.emit == "json") {
    nlohmann::ordered_json j;
    j["d"] = d;
    j["k"] = k;
    j["size"] = H.size();
    j["height"] = H.height();
    nlohmann::ordered_json elems = nlohmann::ordered_json::array();
    for (int s = 0; s < H.size(); ++s) {
      const JetIndex& e = H.at(s);
      elems.push_back({{"index", s},
                       {"alpha", e.alpha},
                       {"component", e.comp + 1},
                       {"in_V", set_contains(V, s)},
                       {"in_T", set_contains(T, s)}});
    }
    j["elements"] = elems;
    j["V"] = V;
    j["T"] = T;
    j["W_pairs"] = W.count();
    j["W_idempotent"] = idem;
    std::string path = out_path(g, "poset_d" + std::to_string(d) + ".json");
    write_file(path, j.dump(2) + "\n");
    std::printf("wrote %s\n", path.c_str());
  } else if (g.emit == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (int s = 0; s < H.size(); ++s) {
      const JetIndex& e = H.at(s);
      std::string alpha;
      for (std::size_t i = 0; i < e.alpha.size(); ++i) {
        if (i) alpha += ' ';
        alpha += std::to_string(e.alpha[i]);
      }
      rows.push_back({std::to_string(s), alpha, std::to_string(e.comp + 1),
                      set_contains(V, s) ? "1" : "0",
                      set_contains(T, s) ? "1" : "0"});
    }
    std::string path = out_path(g, "poset_d" + std::to_string(d) + ".csv");
    write_file(path, csv_table({"index", "alpha", "component", "in_V", "in_T"},
                               rows));
    std::printf("wrote %s\n", path.c_str());
  }
  return idem ? 0 : 1;
}

// ----------------------------------------------------- verify-nilpotency --

int cmd_verify_nilpotency(const Global& g, int d, int trials) {
  JetSpace H(d);
  std::vector<int> word = nilpotency_word(d);
  std::string ws;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) ws += ' ';
    ws += std::to_string(word[i]);
  }
  std::printf("cycle-length word for d=%d (%zu letters): %s\n", d,
              word.size(), ws.c_str());
  bool combi = verify_combi(H);
  std::printf("[%s] exact relation product vanishes\n",
              combi ? "PASS" : "FAIL");
  SplitMix64 rng = component_rng(g.seed, "cli-nilpotency");
  double resid = nilpotency_matrix_residual(H, trials, rng);
  bool mat = resid <= 1e-12;
  std::printf("[%s] matrix residual over %d random trials: %s\n",
              mat ? "PASS" : "FAIL", trials, fmt_num(resid).c_str());
  return combi && mat ? 0 : 1;
}

// --------------------------------------------------------- epsilon-table --

int cmd_epsilon_table(const Global& g, int dmax) {
  std::printf("%3s  %-28s %-14s %-22s %-28s %s\n", "d", "epsilon(d)",
              "float", "delta(d)", "easy bound", "D");
  std::vector<std::vector<std::string>> rows;
  for (int d = 2; d <= dmax; ++d) {
    Rational eps = epsilon_bunching(d);
    Rational del = delta_threshold(d);
    Rational easy = easy_bound(d);
    std::printf("%3d  %-28s %-14s %-22s %-28s %lld\n", d, eps.str().c_str(),
                fmt_num(eps.to_double()).c_str(), del.str().c_str(),
                easy.str().c_str(), static_cast<long long>(epoch_base(d)));
    rows.push_back({std::to_string(d), eps.str(), fmt_num(eps.to_double()),
                    del.str(), easy.str(),
                    std::to_string(epoch_base(d))});
  }
  if (g.emit == "csv") {
    std::string path = out_path(g, "epsilon_table.csv");
    write_file(path, csv_table({"d", "epsilon_exact", "epsilon_float",
                                "delta_exact", "easy_bound_exact", "D"},
                               rows));
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

// --------------------------------------------------------- decomp-bounds --

int cmd_decomp_bounds(const Global& g, int d, double Lambda, double M,
                      int horizon) {
  JetSpace H(d);
  PinchedParams par;
  par.d = d;
  par.Lambda = Lambda;
  par.M = M;
  SplitMix64 rng = component_rng(g.seed, "cli-decomp");
  std::vector<Mat> L = make_pinched(par, horizon, rng);
  Mat Q = projector_Q(H);
  Mat P = Mat::Identity(d, d);
  std::vector<double> norm_m0, norm_m1;
  std::vector<std::vector<std::string>> rows;
  for (int n = 0; n < horizon; ++n) {
    P = L[n] * P;  // L_{n+1,0}
    Decomposition dec = decompose(H, Q * conj_matrix(H, P) * Q);
    double n0 = op_norm(dec.m0), n1 = op_norm(dec.m1);
    norm_m0.push_back(n0);
    norm_m1.push_back(n1);
    rows.push_back({std::to_string(n + 1), fmt_num(n0), fmt_num(n1)});
  }
  int n0fit = std::min(5, horizon / 4);
  double s0 = log_slope(norm_m0, n0fit, horizon);
  double s1 = log_slope(norm_m1, n0fit, horizon);
  double ref0 = std::log(Lambda), ref1 = std::log(Lambda * Lambda * M);
  bool ok0 = s0 <= ref0 + 0.05, ok1 = s1 <= ref1 + 0.05;
  std::printf("off-resonant slope %s vs log(Lambda) = %s        [%s]\n",
              fmt_num(s0).c_str(), fmt_num(ref0).c_str(),
              ok0 ? "PASS" : "FAIL");
  std::printf("resonant slope     %s vs log(Lambda^2 M) = %s  [%s]\n",
              fmt_num(s1).c_str(), fmt_num(ref1).c_str(),
              ok1 ? "PASS" : "FAIL");
  if (g.emit == "csv") {
    std::string path = out_path(g, "decomp_bounds.csv");
    write_file(path,
               csv_table({"n", "off_resonant_norm", "resonant_norm"}, rows));
    std::printf("wrote %s\n", path.c_str());
  }
  return ok0 && ok1 ? 0 : 1;
}

// ------------------------------------------------------------ solve-jets --

int cmd_solve_jets(const Global& g, const std::string& config_path) {
  Config cfg = load_config(
      config_path,
      {"d", "contraction", "expansion", "offdiag", "margin", "horizon",
       "seed", "quad_scale", "series_tol", "residual_tol"});
  const int d = static_cast<int>(cfg.get_int("d", 2));
  const double Lambda = cfg.get_num("contraction", 0.45);
  const double M = cfg.get_num("expansion", 4.5);
  const int horizon = static_cast<int>(cfg.get_int("horizon", 60));
  const double residual_tol = cfg.get_num("residual_tol", 1e-8);
  std::uint64_t seed = effective_seed(g, cfg);

  JetSpace H(d);
  PinchedParams par;
  par.d = d;
  par.Lambda = Lambda;
  par.M = M;
  par.offdiag = cfg.get_num("offdiag", 0.1);
  par.margin = cfg.get_num("margin", 0.05);
  SplitMix64 rng_lin = component_rng(seed, "cli-solve-linear");
  SplitMix64 rng_mix = component_rng(seed, "cli-solve-frame");
  SplitMix64 rng_quad = component_rng(seed, "cli-solve-quadratic");
  std::vector<Mat> tri = make_pinched(par, horizon, rng_lin);
  Mat Wfix = random_unitary(d, rng_mix);
  std::vector<Mat> A;
  for (const Mat& T : tri) A.push_back(Wfix * T * Wfix.adjoint());
  std::vector<Jet2> f =
      make_jet_sequence(H, A, cfg.get_num("quad_scale", 0.3), rng_quad);

  SolveOptions opt;
  opt.trunc.tol = cfg.get_num("series_tol", 1e-12);
  SolveResult sol = solve_sequence(H, f, opt);

  double slope = log_slope(sol.h_norm, horizon / 4, horizon + 1);
  std::printf("horizon %d, residual_max = %s, unitarity = %s\n", horizon,
              fmt_num(sol.residual_max).c_str(),
              fmt_num(sol.unitarity_max).c_str());
  std::printf("series diverged: %s, |h| log-slope = %s\n",
              sol.series_diverged ? "yes" : "no", fmt_num(slope).c_str());

  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 0; n < sol.residual.size(); ++n)
    rows.push_back({std::to_string(n), fmt_num(sol.residual[n]),
                    fmt_num(sol.u_norm[n]), fmt_num(sol.h_norm[n]),
                    std::to_string(sol.series_terms[n])});
  std::string path = out_path(g, "solve_jets.csv");
  write_file(path, csv_table({"n", "residual", "u_norm", "h_norm",
                              "series_terms"},
                             rows));
  std::printf("wrote %s\n", path.c_str());
  bool ok = sol.residual_max <= residual_tol && !sol.series_diverged;
  std::printf("[%s] residual within %s\n", ok ? "PASS" : "FAIL",
              fmt_num(residual_tol).c_str());
  return ok ? 0 : 1;
}

// ----------------------------------------------------------------- basin --

int cmd_basin(const Global& g, const std::string& config_path) {
  Config cfg = load_config(
      config_path, {"d", "contraction", "offdiag", "quad_scale", "horizon",
                    "seed", "count", "grid_radius", "far_radius", "eps",
                    "interleave"});
  const int d = static_cast<int>(cfg.get_int("d", 2));
  const int horizon = static_cast<int>(cfg.get_int("horizon", 400));
  const double Lambda = cfg.get_num("contraction", 0.05);
  const std::string mode = cfg.get_str("interleave", "word");
  if (mode != "word" && mode != "none")
    throw std::invalid_argument("config: interleave must be word or none");
  std::uint64_t seed = effective_seed(g, cfg);

  SplitMix64 rng_auto = component_rng(seed, "cli-basin-autos");
  SplitMix64 rng_pts = component_rng(seed, "cli-basin-points");
  std::vector<TriangularAuto> autos;
  for (int n = 0; n < horizon; ++n)
    autos.push_back(random_special_tri(d, Lambda,
                                       cfg.get_num("offdiag", 0.2),
                                       cfg.get_num("quad_scale", 1.0),
                                       rng_auto));
  InterleavedSequence seq;
  if (mode == "word")
    seq = word_interleaved(std::move(autos), d);
  else
    seq.autos = std::move(autos);

  auto pts = sample_points(d, static_cast<int>(cfg.get_int("count", 500)),
                           cfg.get_num("grid_radius", 5.0),
                           cfg.get_num("far_radius", 1000.0), rng_pts);
  BasinReport rep =
      basin_scan(seq, pts, cfg.get_num("eps", 1e-9), horizon);
  std::printf("%d converged, %d diverged, %d undecided of %zu\n",
              rep.n_converged, rep.n_diverged, rep.n_undecided,
              rep.points.size());
  write_file(out_path(g, "basin.csv"), basin_csv(rep));
  write_file(out_path(g, "basin.svg"), basin_svg(rep));
  write_file(out_path(g, "basin.json"), basin_json(rep));
  std::printf("wrote %s/basin.{csv,svg,json}\n", g.out_dir.c_str());
  bool ok = rep.n_converged == static_cast<int>(rep.points.size());
  std::printf("[%s] every sampled point converged\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

// -------------------------------------------------------------- pipeline --

int cmd_pipeline(const Global& g, const std::string& config_path) {
  PipelineConfig pc;
  if (!config_path.empty()) {
    Config cfg = load_config(
        config_path,
        {"d", "contraction", "expansion", "offdiag", "margin", "horizon",
         "seed", "quad_scale", "series_tol", "residual_tol", "samples",
         "grid_radius", "far_radius", "basin_eps"});
    pc.d = static_cast<int>(cfg.get_int("d", pc.d));
    pc.contraction = cfg.get_num("contraction", pc.contraction);
    pc.expansion = cfg.get_num("expansion", pc.expansion);
    pc.offdiag = cfg.get_num("offdiag", pc.offdiag);
    pc.margin = cfg.get_num("margin", pc.margin);
    pc.horizon = static_cast<int>(cfg.get_int("horizon", pc.horizon));
    pc.quad_scale = cfg.get_num("quad_scale", pc.quad_scale);
    pc.seed = effective_seed(g, cfg);
    pc.series_tol = cfg.get_num("series_tol", pc.series_tol);
    pc.residual_tol = cfg.get_num("residual_tol", pc.residual_tol);
    pc.samples = static_cast<int>(cfg.get_int("samples", pc.samples));
    pc.grid_radius = cfg.get_num("grid_radius", pc.grid_radius);
    pc.far_radius = cfg.get_num("far_radius", pc.far_radius);
    pc.basin_eps = cfg.get_num("basin_eps", pc.basin_eps);
  } else if (g.seed_set) {
    pc.seed = g.seed;
  }
  PipelineResult res = run_pipeline(pc);
  for (const PipelineStage& s : res.stages)
    std::printf("[%s] %-10s %s\n", s.pass ? "PASS" : "FAIL", s.name.c_str(),
                s.detail.c_str());
  for (const std::string& p : write_pipeline_artifacts(res, g.out_dir))
    std::printf("wrote %s\n", p.c_str());
  std::printf("pipeline: %s\n", res.pass ? "PASS" : "FAIL");
  return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for contracting 2-jet sequences: resonance posets, "
               "permutation schedules, conjugacy solving, and basin scans"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --seed/--out-dir/--emit after the subcommand
  Global g;
  auto* seed_opt =
      app.add_option("--seed", g.seed, "Master seed for all randomness");
  app.add_option("--out-dir", g.out_dir, "Directory for artifacts");
  app.add_option("--emit", g.emit, "Artifact format: text, csv, or json");

  int d = 2, k = 2, trials = 100, dmax = 6, horizon = 40;
  double Lambda = 0.5, M = 4.0;
  std::string config_path;

  auto* p_poset = app.add_subcommand(
      "poset", "Enumerate the quadratic index poset and its subsets");
  p_poset->add_option("--d", d, "Dimension")->required()
      ->check(CLI::Range(1, 8));
  p_poset->add_option("--k", k, "Degree")->check(CLI::Range(2, 4));

  auto* p_nilp = app.add_subcommand(
      "verify-nilpotency", "Check the alternating relation product vanishes");
  p_nilp->add_option("--d", d, "Dimension")->required()
      ->check(CLI::Range(1, 6));
  p_nilp->add_option("--trials", trials, "Random matrix trials");

  auto* p_eps = app.add_subcommand(
      "epsilon-table", "Exact admissibility thresholds per dimension");
  p_eps->add_option("--dmax", dmax, "Largest dimension")
      ->check(CLI::Range(2, 12));

  auto* p_dec = app.add_subcommand(
      "decomp-bounds", "Slopes of the resonant/off-resonant decomposition");
  p_dec->add_option("--d", d, "Dimension")->check(CLI::Range(2, 4));
  p_dec->add_option("--contraction", Lambda, "Per-step contraction bound");
  p_dec->add_option("--expansion", M, "Per-step inverse expansion bound");
  p_dec->add_option("--horizon", horizon, "Sequence length");

  auto* p_sol = app.add_subcommand(
      "solve-jets", "Solve the non-autonomous 2-jet conjugacy equation");
  p_sol->add_option("--config", config_path, "key = value config file")
      ->required();

  auto* p_bas = app.add_subcommand(
      "basin", "Scan basin membership for interleaved triangular sequences");
  p_bas->add_option("--config", config_path, "key = value config file")
      ->required();

  auto* p_pipe = app.add_subcommand(
      "pipeline", "Full run: generate, check, solve, rescale, scan");
  p_pipe->add_option("--config", config_path, "key = value config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  g.seed_set = seed_opt->count() > 0;

  try {
    if (p_poset->parsed()) return cmd_poset(g, d, k);
    if (p_nilp->parsed()) return cmd_verify_nilpotency(g, d, trials);
    if (p_eps->parsed()) return cmd_epsilon_table(g, dmax);
    if (p_dec->parsed()) return cmd_decomp_bounds(g, d, Lambda, M, horizon);
    if (p_sol->parsed()) return cmd_solve_jets(g, config_path);
    if (p_bas->parsed()) return cmd_basin(g, config_path);
    if (p_pipe->parsed()) return cmd_pipeline(g, config_path);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
