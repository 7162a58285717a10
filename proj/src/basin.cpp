// Basin scans, interleaved orbits, and the log-space radius recursion.

#include "jetconj/basin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jetconj/nilpotency.hpp"
#include "jetconj/schedule.hpp"

namespace jetconj {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::diverged: return "diverged";
    default: return "undecided";
  }
}

Vec interleaved_step(const InterleavedSequence& seq, long long n,
                     const Vec& z) {
  Vec w = z;
  auto it = std::lower_bound(seq.times.begin(), seq.times.end(), n);
  if (it != seq.times.end() && *it == n)
    w = seq.mix[static_cast<std::size_t>(it - seq.times.begin())] * w;
  return tri_apply(seq.autos[static_cast<std::size_t>(n)], w);
}

OrbitResult run_orbit(const InterleavedSequence& seq, Vec z, double eps_conv,
                      long long max_iter, double cap) {
  OrbitResult res;
  const long long N =
      std::min<long long>(max_iter, static_cast<long long>(seq.autos.size()));
  double norm = z.norm();
  res.peak_norm = norm;
  res.final_norm = norm;
  for (long long n = 0; n < N; ++n) {
    if (norm < eps_conv) {
      res.verdict = Verdict::converged;
      res.iterations = n;
      return res;
    }
    z = interleaved_step(seq, n, z);
    norm = z.norm();
    res.final_norm = norm;
    res.peak_norm = std::max(res.peak_norm, norm);
    if (!std::isfinite(norm) || norm > cap) {
      res.verdict = Verdict::diverged;
      res.iterations = n + 1;
      return res;
    }
  }
  res.iterations = N;
  res.verdict = norm < eps_conv ? Verdict::converged : Verdict::undecided;
  return res;
}

InterleaveDiagnostics interleave_diagnostics(
    const std::vector<long long>& times, double K) {
  InterleaveDiagnostics diag;
  double partial = 0.0;
  for (std::size_t h = 0; h < times.size(); ++h) {
    partial += static_cast<double>(times[h]) / std::pow(K, h);
    diag.weighted_partial.push_back(partial);
    if (h + 1 < times.size()) diag.gaps.push_back(times[h + 1] - times[h]);
  }
  for (std::size_t h = 1; h < diag.gaps.size(); ++h)
    if (diag.gaps[h] < diag.gaps[h - 1]) diag.gaps_nondecreasing = false;
  return diag;
}

RadiusRecursionResult radius_recursion(double C, double lambda, double K,
                            const std::vector<double>& s, double r0,
                            double eps, double cap) {
  if (!(lambda > 0.0 && lambda < 1.0) || !(C > 0.0) || !(K > 1.0) ||
      r0 < 0.0)
    throw std::invalid_argument("radius_recursion: invalid parameters");
  RadiusRecursionResult res;
  const double inf = std::numeric_limits<double>::infinity();
  double rho = r0 == 0.0 ? -inf : std::log(r0);
  res.log_r.push_back(rho);
  auto check = [&](long long h) {
    if (res.verdict != Verdict::undecided) return;
    if (rho < std::log(eps)) {
      res.verdict = Verdict::converged;
      res.epochs = h;
    } else if (rho > std::log(cap)) {
      res.verdict = Verdict::diverged;
      res.epochs = h;
    }
  };
  check(0);
  for (std::size_t h = 0; h < s.size(); ++h) {
    // softplus((K-1) rho) on its stable branch
    double x = (K - 1.0) * rho;
    double soft = x > 0.0 ? x + std::log1p(std::exp(-x))
                          : std::log1p(std::exp(x));
    rho = std::log(C) + s[h] * std::log(lambda) + rho + soft;
    res.log_r.push_back(rho);
    check(static_cast<long long>(h) + 1);
    if (res.verdict != Verdict::undecided) break;
  }
  if (res.verdict == Verdict::undecided)
    res.epochs = static_cast<long long>(res.log_r.size()) - 1;
  return res;
}

namespace {

// Standard complex gaussian via Box-Muller, used for sphere directions.
cd gaussian(SplitMix64& rng) {
  double u = rng.unif01();
  while (u == 0.0) u = rng.unif01();
  return std::sqrt(-2.0 * std::log(u)) * rng.phase();
}

}  // namespace

std::vector<Vec> sample_points(int d, int count, double grid_radius,
                               double far_radius, SplitMix64& rng) {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  const int n_grid = (count + 1) / 2;
  const int dims = 2 * d;

  // Per-axis resolution q: smallest with q^dims >= 4 * n_grid, so the
  // stride skips at least three lattice points out of four.
  int q = 2;
  auto lattice_size = [&](int qq) {
    double t = 1.0;
    for (int i = 0; i < dims; ++i) t *= qq;
    return t;
  };
  while (lattice_size(q) < 4.0 * n_grid) ++q;
  const long long total = static_cast<long long>(lattice_size(q));
  const long long stride = total / n_grid;
  for (int i = 0; i < n_grid; ++i) {
    long long idx = static_cast<long long>(i) * stride;
    Vec z(d);
    for (int j = 0; j < d; ++j) {
      double re_digit = static_cast<double>(idx % q);
      idx /= q;
      double im_digit = static_cast<double>(idx % q);
      idx /= q;
      z(j) = cd(-grid_radius + 2.0 * grid_radius * re_digit / (q - 1),
                -grid_radius + 2.0 * grid_radius * im_digit / (q - 1));
    }
    pts.push_back(z);
  }

  // Far field: log-uniform radii in [1, far_radius], uniform directions.
  while (static_cast<int>(pts.size()) < count) {
    Vec g(d);
    for (int j = 0; j < d; ++j) g(j) = gaussian(rng);
    double n = g.norm();
    while (n == 0.0) {
      for (int j = 0; j < d; ++j) g(j) = gaussian(rng);
      n = g.norm();
    }
    double r = std::exp(rng.unif01() * std::log(std::max(1.0, far_radius)));
    pts.push_back(Vec((r / n) * g));
  }
  return pts;
}

BasinReport basin_scan(const InterleavedSequence& seq,
                       const std::vector<Vec>& pts, double eps_conv,
                       long long max_iter, double cap) {
  BasinReport rep;
  rep.eps_conv = eps_conv;
  rep.max_iter = max_iter;
  rep.points.reserve(pts.size());
  for (const Vec& z : pts) {
    BasinPoint bp;
    bp.z = z;
    bp.orbit = run_orbit(seq, z, eps_conv, max_iter, cap);
    switch (bp.orbit.verdict) {
      case Verdict::converged: ++rep.n_converged; break;
      case Verdict::diverged: ++rep.n_diverged; break;
      default: ++rep.n_undecided; break;
    }
    rep.points.push_back(std::move(bp));
  }
  return rep;
}

InterleavedSequence word_interleaved(std::vector<TriangularAuto> autos,
                                     int d) {
  InterleavedSequence seq;
  const long long N = static_cast<long long>(autos.size());
  seq.autos = std::move(autos);
  if (d < 2) return seq;  // base D = 1: no interleave times
  const long long D = epoch_base(d);
  long long m = 0;  // D^0 - 1
  int h = 0;
  while (m < N) {
    seq.times.push_back(m);
    seq.mix.push_back(u_matrix(sigma_at(d, h)));
    ++h;
    m = (m + 1) * D - 1;
  }
  return seq;
}

}  // namespace jetconj
