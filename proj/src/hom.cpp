#include "jetconj/hom.hpp"

#include <map>
#include <stdexcept>

#include "jetconj/nilpotency.hpp"

namespace jetconj {

cd eval_monomial(const Exponent& alpha, const Vec& z) {
  cd v = 1.0;
  for (size_t m = 0; m < alpha.size(); ++m)
    for (int r = 0; r < alpha[m]; ++r) v *= z(static_cast<Eigen::Index>(m));
  return v;
}

Vec eval_hom(const JetSpace& H, const Vec& p, const Vec& z) {
  Vec out = Vec::Zero(H.d());
  for (int idx = 0; idx < H.size(); ++idx) {
    const JetIndex& e = H.at(idx);
    out(e.comp) += p(idx) * eval_monomial(e.alpha, z);
  }
  return out;
}

namespace {

// Sparse homogeneous polynomial in d variables, exponent -> coefficient.
using Poly = std::map<Exponent, cd>;

// Multiply by the linear form sum_m c_m z_m, dropping exact-zero terms so
// structural zeros in expansions never materialize as entries.
Poly mul_linear(const Poly& p, const Mat& L, int row, int d) {
  Poly out;
  for (const auto& [alpha, c] : p) {
    for (int m = 0; m < d; ++m) {
      cd lm = L(row, m);
      if (lm == cd(0.0)) continue;
      Exponent b = alpha;
      b[m] += 1;
      out[b] += c * lm;
    }
  }
  return out;
}

}  // namespace

Mat right_compose_matrix(const JetSpace& H, const Mat& L) {
  const int d = H.d();
  if (L.rows() != d || L.cols() != d) throw std::invalid_argument("right_compose_matrix: size");
  Mat R = Mat::Zero(H.size(), H.size());
  const int block = H.size() / d;  // alphas per component
  for (int bcol = 0; bcol < block; ++bcol) {
    const Exponent& beta = H.at(bcol).alpha;  // component-1 slice carries all alphas
    Poly acc;
    acc[Exponent(d, 0)] = 1.0;
    for (int i = 0; i < d; ++i)
      for (int r = 0; r < beta[i]; ++r) acc = mul_linear(acc, L, i, d);
    for (const auto& [gamma, c] : acc) {
      for (int j = 0; j < d; ++j) {
        int rowidx = H.index_of(JetIndex{gamma, j});
        int colidx = H.index_of(JetIndex{beta, j});
        R(rowidx, colidx) = c;
      }
    }
  }
  return R;
}

Mat left_compose_matrix(const JetSpace& H, const Mat& M) {
  const int d = H.d();
  if (M.rows() != d || M.cols() != d) throw std::invalid_argument("left_compose_matrix: size");
  Mat A = Mat::Zero(H.size(), H.size());
  for (int idx = 0; idx < H.size(); ++idx) {
    const JetIndex& e = H.at(idx);
    for (int j = 0; j < d; ++j) {
      int col = H.index_of(JetIndex{e.alpha, j});
      A(idx, col) = M(e.comp, j);
    }
  }
  return A;
}

Mat upper_tri_inverse(const Mat& L) {
  const int d = static_cast<int>(L.rows());
  Mat X = Mat::Zero(d, d);
  for (int j = d - 1; j >= 0; --j) {
    if (L(j, j) == cd(0.0)) throw std::invalid_argument("upper_tri_inverse: singular diagonal");
    X(j, j) = 1.0 / L(j, j);
    for (int i = j - 1; i >= 0; --i) {
      cd s = 0.0;
      for (int m = i + 1; m <= j; ++m) s += L(i, m) * X(m, j);
      X(i, j) = -s / L(i, i);
    }
  }
  return X;
}

bool is_upper_triangular_exact(const Mat& L) {
  for (int i = 0; i < L.rows(); ++i)
    for (int j = 0; j < i; ++j)
      if (L(i, j) != cd(0.0)) return false;
  return true;
}

Mat conj_matrix(const JetSpace& H, const Mat& L) {
  Mat inv = is_upper_triangular_exact(L) ? upper_tri_inverse(L) : Mat(L.inverse());
  return left_compose_matrix(H, inv) * right_compose_matrix(H, L);
}

Mat u_matrix(const Permutation& sigma) {
  Mat U = Mat::Zero(sigma.d(), sigma.d());
  for (int j = 0; j < sigma.d(); ++j) U(sigma(j), j) = 1.0;
  return U;
}

Mat perm_op_matrix(const JetSpace& H, const Permutation& sigma) {
  Mat A = Mat::Zero(H.size(), H.size());
  Permutation inv = sigma.inverse();
  for (int u = 0; u < H.size(); ++u) A(H.act(inv, u), u) = 1.0;
  return A;
}

Mat projector_Q(const JetSpace& H) {
  Mat Q = Mat::Identity(H.size(), H.size());
  for (int t : H.set_T()) Q(t, t) = 0.0;
  return Q;
}

Mat mask(const Mat& A, const Relation& R) {
  Mat out = Mat::Zero(A.rows(), A.cols());
  for (int s = 0; s < A.rows(); ++s)
    for (int t = 0; t < A.cols(); ++t)
      if (R.at(s, t)) out(s, t) = A(s, t);
  return out;
}

bool support_within(const Mat& A, const Relation& R, double tol) {
  for (int s = 0; s < A.rows(); ++s)
    for (int t = 0; t < A.cols(); ++t)
      if (!R.at(s, t) && std::abs(A(s, t)) > tol) return false;
  return true;
}

Decomposition decompose(const JetSpace& H, const Mat& A) {
  Mat Q = projector_Q(H);
  Mat QAQ = Q * A * Q;
  Decomposition dec;
  dec.m1 = mask(QAQ, make_W(H));
  dec.m0 = QAQ - dec.m1;
  return dec;
}

double coeff_norm(const Vec& p) { return p.size() == 0 ? 0.0 : p.cwiseAbs().maxCoeff(); }

double op_norm(const Mat& A) {
  if (A.rows() == 0) return 0.0;
  return A.cwiseAbs().rowwise().sum().maxCoeff();
}

double spectral_norm(const Mat& A) {
  if (A.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(A);
  return svd.singularValues()(0);
}

Vec random_hom(const JetSpace& H, SplitMix64& rng, double scale) {
  Vec p(H.size());
  for (int i = 0; i < H.size(); ++i) p(i) = rng.disk(scale);
  return p;
}

Mat random_supported(const JetSpace& H, const Relation& R, SplitMix64& rng) {
  Mat A = Mat::Zero(H.size(), H.size());
  for (int s = 0; s < H.size(); ++s)
    for (int t = 0; t < H.size(); ++t)
      if (R.at(s, t)) A(s, t) = rng.disk(1.0);
  return A;
}

double nilpotency_matrix_residual(const JetSpace& H, int trials, SplitMix64& rng) {
  const Relation W = make_W(H);
  const auto word = nilpotency_word(H.d());
  std::vector<Mat> perms;
  perms.reserve(word.size());
  for (int letter : word)
    perms.push_back(perm_op_matrix(H, Permutation::cycle(H.d(), letter)));
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Mat P = random_supported(H, W, rng);
    for (const auto& U : perms) {
      P = P * U;
      P = P * random_supported(H, W, rng);
    }
    double m = P.cwiseAbs().maxCoeff();
    if (m > worst) worst = m;
  }
  return worst;
}

}  // namespace jetconj
