// Special triangular automorphisms: sparse polynomial arithmetic, exact
// composition and inversion, and the weighted-degree bookkeeping behind the
// stable degree.

#include "jetconj/triangular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jetconj {

void poly_add_term(MPoly& p, const Exponent& e, cd coeff) {
  if (static_cast<int>(e.size()) != p.d)
    throw std::invalid_argument("poly_add_term: exponent arity mismatch");
  auto it = p.c.find(e);
  if (it == p.c.end()) {
    if (coeff != cd(0.0)) p.c.emplace(e, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == cd(0.0)) p.c.erase(it);
}

MPoly poly_add(const MPoly& a, const MPoly& b) {
  MPoly out = a;
  for (const auto& [e, v] : b.c) poly_add_term(out, e, v);
  return out;
}

MPoly poly_scale(const MPoly& a, cd s) {
  MPoly out(a.d);
  if (s == cd(0.0)) return out;
  for (const auto& [e, v] : a.c) out.c.emplace(e, v * s);
  return out;
}

MPoly poly_mul(const MPoly& a, const MPoly& b) {
  MPoly out(a.d);
  Exponent e(a.d);
  for (const auto& [ea, va] : a.c)
    for (const auto& [eb, vb] : b.c) {
      for (int i = 0; i < a.d; ++i) e[i] = ea[i] + eb[i];
      poly_add_term(out, e, va * vb);
    }
  return out;
}

MPoly poly_pow(const MPoly& a, int k) {
  MPoly out(a.d);
  poly_add_term(out, Exponent(a.d, 0), cd(1.0));
  for (int i = 0; i < k; ++i) out = poly_mul(out, a);
  return out;
}

MPoly poly_subst(const MPoly& a, const std::vector<MPoly>& g) {
  if (static_cast<int>(g.size()) != a.d)
    throw std::invalid_argument("poly_subst: wrong number of substitutions");
  int dout = a.d == 0 ? 0 : g[0].d;
  MPoly out(dout);
  for (const auto& [e, v] : a.c) {
    MPoly term(dout);
    poly_add_term(term, Exponent(dout, 0), v);
    for (int i = 0; i < a.d; ++i)
      if (e[i] > 0) term = poly_mul(term, poly_pow(g[i], e[i]));
    out = poly_add(out, term);
  }
  return out;
}

cd poly_eval(const MPoly& a, const Vec& z) {
  cd s(0.0);
  for (const auto& [e, v] : a.c) {
    cd m = v;
    for (int i = 0; i < a.d; ++i)
      for (int k = 0; k < e[i]; ++k) m *= z(i);
    s += m;
  }
  return s;
}

int poly_degree(const MPoly& a) {
  int deg = 0;
  for (const auto& [e, v] : a.c) {
    int t = 0;
    for (int x : e) t += x;
    deg = std::max(deg, t);
  }
  return deg;
}

long long poly_weighted_degree(const MPoly& a, const std::vector<int>& w) {
  long long deg = 0;
  for (const auto& [e, v] : a.c) {
    long long t = 0;
    for (int i = 0; i < a.d; ++i) t += static_cast<long long>(e[i]) * w[i];
    deg = std::max(deg, t);
  }
  return deg;
}

bool poly_uses_only_above(const MPoly& a, int j) {
  for (const auto& [e, v] : a.c)
    for (int i = 0; i <= j && i < a.d; ++i)
      if (e[i] != 0) return false;
  return true;
}

bool is_special_triangular(const TriangularAuto& f) {
  const int d = f.dim();
  if (f.L.rows() != d || f.L.cols() != d) return false;
  if (!is_upper_triangular_exact(f.L)) return false;
  for (int j = 0; j < d; ++j)
    if (f.L(j, j) == cd(0.0)) return false;
  for (int j = 0; j < d; ++j) {
    if (f.p[j].d != d) return false;
    if (!poly_uses_only_above(f.p[j], j)) return false;
    for (const auto& [e, v] : f.p[j].c) {
      int deg = 0;
      for (int x : e) deg += x;
      if (deg < 2) return false;  // no constant or linear terms
    }
  }
  return true;
}

Vec tri_apply(const TriangularAuto& f, const Vec& z) {
  Vec w = f.L * z;
  for (int j = 0; j < f.dim(); ++j) w(j) += poly_eval(f.p[j], z);
  return w;
}

Vec tri_inverse_apply(const TriangularAuto& f, const Vec& w) {
  const int d = f.dim();
  Vec z = Vec::Zero(d);
  for (int j = d - 1; j >= 0; --j) {
    cd rhs = w(j) - poly_eval(f.p[j], z);  // p_j only reads z_{j+1..d}
    for (int k = j + 1; k < d; ++k) rhs -= f.L(j, k) * z(k);
    z(j) = rhs / f.L(j, j);
  }
  return z;
}

TriangularAuto tri_compose(const TriangularAuto& F, const TriangularAuto& G) {
  const int d = F.dim();
  if (G.dim() != d)
    throw std::invalid_argument("tri_compose: dimension mismatch");
  TriangularAuto out;
  out.L = F.L * G.L;
  out.p.assign(d, MPoly(d));

  // Components of G as polynomials, for substitution into p_F.
  std::vector<MPoly> Gpoly;
  Gpoly.reserve(d);
  for (int i = 0; i < d; ++i) {
    MPoly gi = G.p[i];
    for (int k = 0; k < d; ++k)
      if (G.L(i, k) != cd(0.0)) {
        Exponent e(d, 0);
        e[k] = 1;
        poly_add_term(gi, e, G.L(i, k));
      }
    Gpoly.push_back(std::move(gi));
  }

  for (int j = 0; j < d; ++j) {
    MPoly pj(d);
    for (int k = 0; k < d; ++k)
      if (F.L(j, k) != cd(0.0))
        pj = poly_add(pj, poly_scale(G.p[k], F.L(j, k)));
    pj = poly_add(pj, poly_subst(F.p[j], Gpoly));
    out.p[j] = std::move(pj);
  }
  return out;
}

std::vector<int> dyadic_weights(int d) {
  std::vector<int> k(d);
  for (int j = 0; j < d; ++j) k[j] = 1 << (d - 1 - j);
  return k;
}

int stable_degree(int d) { return 1 << (d - 1); }

bool weights_compatible(const TriangularAuto& f, const std::vector<int>& k) {
  const int d = f.dim();
  if (static_cast<int>(k.size()) != d) return false;
  if (k[d - 1] != 1) return false;
  for (int j = 0; j < d; ++j)
    if (k[j] < 1) return false;
  for (int j = 0; j < d; ++j)
    if (poly_weighted_degree(f.p[j], k) > k[j]) return false;
  return true;
}

TriangularAuto random_special_tri(int d, double lambda, double offdiag,
                                  double quad_scale, SplitMix64& rng) {
  TriangularAuto f;
  f.L = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j)
    f.L(j, j) = lambda * (0.5 + 0.5 * rng.unif01()) * rng.phase();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) f.L(i, j) = rng.disk(offdiag * lambda);
  f.p.assign(d, MPoly(d));
  for (int j = 0; j < d; ++j)
    for (int i = j + 1; i < d; ++i)
      for (int k = i; k < d; ++k) {
        Exponent e(d, 0);
        e[i] += 1;
        e[k] += 1;
        poly_add_term(f.p[j], e, rng.disk(quad_scale));
      }
  return f;
}

TriangularAuto tri_from_jet(const JetSpace& H, const Jet2& F) {
  const int d = H.d();
  if (!is_upper_triangular_exact(F.A))
    throw std::invalid_argument("tri_from_jet: linear part not triangular");
  TriangularAuto out;
  out.L = F.A;
  out.p.assign(d, MPoly(d));
  const auto T = H.set_T();
  for (int s = 0; s < H.size(); ++s) {
    if (F.q(s) == cd(0.0)) continue;
    if (!set_contains(T, s))
      throw std::invalid_argument(
          "tri_from_jet: quadratic coefficient outside the triangular set");
    const JetIndex& idx = H.at(s);
    poly_add_term(out.p[idx.comp], idx.alpha, F.q(s));
  }
  return out;
}

double linear_chain_constant(const std::vector<TriangularAuto>& f,
                             double lambda) {
  const int N = static_cast<int>(f.size());
  double C = 1.0;  // n = m gives the identity, norm 1
  for (int m = 0; m < N; ++m) {
    Mat P = Mat::Identity(f[m].L.rows(), f[m].L.cols());
    for (int n = m; n < N; ++n) {
      P = f[n].L * P;
      C = std::max(C, spectral_norm(P) / std::pow(lambda, n + 1 - m));
    }
  }
  return C;
}

double measured_orbit_constant(const std::vector<TriangularAuto>& f,
                               const Vec& z, double lambda, int K) {
  const double base = z.norm() + std::pow(z.norm(), K);
  Vec w = z;
  double C = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    w = tri_apply(f[n], w);
    C = std::max(C, w.norm() / (std::pow(lambda, n + 1) * base));
  }
  return C;
}

}  // namespace jetconj
