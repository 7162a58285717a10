#include "jetconj/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "jetconj/schedule.hpp"

namespace jetconj {

QRPos qr_positive(const Mat& X) {
  Eigen::HouseholderQR<Mat> qr(X);
  Mat Q = qr.householderQ();
  Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  const int d = static_cast<int>(X.rows());
  for (int i = 0; i < d; ++i) {
    cd rii = R(i, i);
    double m = std::abs(rii);
    if (m == 0.0) throw std::invalid_argument("qr_positive: rank-deficient input");
    cd s = rii / m;  // unit modulus
    // X = (Q diag(s)) (diag(conj(s)) R): rotate column i of Q, row i of R.
    Q.col(i) *= s;
    R.row(i) *= std::conj(s);
  }
  return {Q, R};
}

Mat random_unitary(int d, SplitMix64& rng) {
  Mat X(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) X(i, j) = rng.disk(1.0) + cd(0.0, 0.0);
  X += 0.5 * Mat::Identity(d, d);  // keep it comfortably nonsingular
  return qr_positive(X).Q;
}

std::vector<Jet2> make_jet_sequence(const JetSpace& H, const std::vector<Mat>& A,
                                    double quad_scale, SplitMix64& rng) {
  std::vector<Jet2> f;
  f.reserve(A.size());
  for (const auto& An : A) f.push_back(Jet2{An, random_hom(H, rng, quad_scale)});
  return f;
}

std::vector<Mat> scheduled_conj_ops(const JetSpace& H, const std::vector<Mat>& L) {
  const Mat Q = projector_Q(H);
  std::vector<Mat> ops;
  ops.reserve(L.size());
  for (size_t m = 0; m < L.size(); ++m) {
    // A_{U_theta L} = A_L A_{U_theta} by contravariance.
    Mat full = conj_matrix(H, L[m]) * perm_op_matrix(H, theta_at(H.d(), static_cast<long long>(m)));
    ops.push_back(Q * full * Q);
  }
  return ops;
}

SeriesResult series_S(const JetSpace& H, const std::vector<Mat>& ops, int n, Truncation tr) {
  const int size = H.size();
  SeriesResult out;
  out.S = Mat::Identity(size, size);
  out.terms = 1;
  out.last_term = op_norm(out.S);
  Mat term = Mat::Identity(size, size);
  double prev = out.last_term;
  int grow = 0;
  for (int m = n; m < static_cast<int>(ops.size()); ++m) {
    term = term * ops[m];
    double tn = op_norm(term);
    out.S += term;
    out.terms += 1;
    out.last_term = tn;
    out.tail_ratio = prev > 0 ? tn / prev : 0.0;
    if (tn <= tr.tol * std::max(1.0, op_norm(out.S))) {
      out.converged = true;
      return out;
    }
    grow = tn > prev ? grow + 1 : 0;
    if (grow >= tr.div_window) {
      out.diverged = true;
      return out;
    }
    prev = tn;
    if (out.terms >= tr.max_terms) return out;
  }
  out.horizon_hit = true;
  return out;
}

namespace {

// Forward series for u_n with tolerance stopping; also reports term count.
Vec series_u(const std::vector<Mat>& conjQ, const std::vector<Vec>& rhs, int n, Truncation tr,
             int* terms_out, bool* diverged_out) {
  const int N = static_cast<int>(rhs.size());
  Vec u = Vec::Zero(conjQ.empty() ? 0 : conjQ.front().rows());
  if (n >= N) {
    if (terms_out) *terms_out = 0;
    return u;
  }
  u = rhs[n];
  Mat carrier;  // product of conjQ[n..m-1], built lazily
  bool have_carrier = false;
  double prev = coeff_norm(u);
  int grow = 0, terms = 1;
  for (int m = n + 1; m < N; ++m) {
    if (!have_carrier) {
      carrier = conjQ[n];
      have_carrier = true;
    } else {
      carrier = carrier * conjQ[m - 1];
    }
    Vec term = carrier * rhs[m];
    u += term;
    ++terms;
    double tn = coeff_norm(term);
    if (tn <= tr.tol * std::max(1.0, coeff_norm(u))) break;
    grow = tn > prev ? grow + 1 : 0;
    if (grow >= tr.div_window) {
      if (diverged_out) *diverged_out = true;
      break;
    }
    prev = tn;
  }
  if (terms_out) *terms_out = terms;
  return u;
}

}  // namespace

SolveResult solve_sequence(const JetSpace& H, const std::vector<Jet2>& f, const SolveOptions& opt) {
  const int d = H.d();
  const int N = static_cast<int>(f.size());
  SolveResult out;
  out.G.resize(N + 1);
  out.L.resize(N);
  out.theta.resize(N);
  out.tau.resize(N + 1);
  out.w.resize(N);
  out.u.resize(N + 1);
  out.v.resize(N);
  out.g.resize(N);
  out.h.resize(N + 1);
  out.residual.resize(N);
  out.u_norm.resize(N + 1);
  out.h_norm.resize(N + 1);
  out.series_terms.resize(N);
  out.u_consistency.resize(N);
  out.conjQ.resize(N);
  out.rhs.resize(N);

  const Mat Q = projector_Q(H);
  const Mat Ih = Mat::Identity(H.size(), H.size());

  // 1+2: twisted QR chain and straightened quadratic parts.
  out.G[0] = Mat::Identity(d, d);
  out.tau[0] = Permutation::identity(d);
  for (int n = 0; n < N; ++n) {
    out.theta[n] = theta_at(d, n);
    out.tau[n + 1] = compose(out.theta[n], out.tau[n]);
    QRPos qr = qr_positive(Mat(f[n].A * out.G[n].adjoint()));
    out.L[n] = qr.R;
    out.G[n + 1] = u_matrix(out.theta[n]) * qr.Q.adjoint();
    out.w[n] = left_compose_matrix(H, qr.Q.adjoint()) *
               (right_compose_matrix(H, out.G[n].adjoint()) * f[n].q);
    Mat gram = out.G[n + 1].adjoint() * out.G[n + 1] - Mat::Identity(d, d);
    out.unitarity_max = std::max(out.unitarity_max, gram.cwiseAbs().maxCoeff());
  }

  // 3: coefficient series.
  std::vector<Mat> conj_full(N);
  for (int n = 0; n < N; ++n) {
    conj_full[n] = conj_matrix(H, out.L[n]) * perm_op_matrix(H, out.theta[n]);
    out.conjQ[n] = Q * conj_full[n] * Q;
    Mat Linv = upper_tri_inverse(out.L[n]);
    out.rhs[n] = Q * (left_compose_matrix(H, Linv) * out.w[n]);
  }
  for (int n = 0; n <= N; ++n) {
    bool div = false;
    int terms = 0;
    out.u[n] = series_u(out.conjQ, out.rhs, n, opt.trunc, &terms, &div);
    if (n < N) out.series_terms[n] = terms;
    if (div) out.series_diverged = true;
    out.u_norm[n] = coeff_norm(out.u[n]);
  }

  // 4: assembly.
  for (int n = 0; n < N; ++n) {
    Mat Linv = upper_tri_inverse(out.L[n]);
    Vec s = conj_full[n] * out.u[n + 1] + left_compose_matrix(H, Linv) * out.w[n];
    out.u_consistency[n] = coeff_norm(Vec(out.u[n] - Q * s));
    out.v[n] = right_compose_matrix(H, Linv) * Vec((Q - Ih) * s);
    Jet2 gbar;
    gbar.A = out.L[n];
    gbar.q = -(left_compose_matrix(H, out.L[n]) * (right_compose_matrix(H, out.L[n]) * out.v[n]));
    out.g[n] = conj_by_perm(H, out.tau[n], gbar);
  }
  for (int n = 0; n <= N; ++n) {
    Mat Ut_inv = u_matrix(out.tau[n].inverse());
    Jet2 hn;
    hn.A = Ut_inv * out.G[n];
    hn.q = left_compose_matrix(H, Ut_inv) * (right_compose_matrix(H, out.G[n]) * out.u[n]);
    out.h[n] = hn;
    out.h_norm[n] = jet_norm(hn);
  }
  for (int n = 0; n < N; ++n) {
    Jet2 lhs = jet_compose(H, out.h[n + 1], f[n]);
    Jet2 rhs = jet_compose(H, out.g[n], out.h[n]);
    out.residual[n] = jet_dist(lhs, rhs);
    out.residual_max = std::max(out.residual_max, out.residual[n]);
  }
  return out;
}

double log_slope(const std::vector<double>& vals, int n0, int n1) {
  if (n1 > static_cast<int>(vals.size())) n1 = static_cast<int>(vals.size());
  if (n1 - n0 < 2) throw std::invalid_argument("log_slope: need at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int n = n0; n < n1; ++n) {
    if (!(vals[n] > 0)) throw std::invalid_argument("log_slope: needs positive values");
    double x = n, y = std::log(vals[n]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  double denom = cnt * sxx - sx * sx;
  return (cnt * sxy - sx * sy) / denom;
}

}  // namespace jetconj
