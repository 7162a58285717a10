#include "jetconj/pinched.hpp"

#include <stdexcept>

namespace jetconj {

std::vector<Mat> make_pinched(const PinchedParams& par, int horizon, SplitMix64& rng) {
  if (par.d < 1) throw std::invalid_argument("make_pinched: need d >= 1");
  if (!(par.Lambda > 0) || !(par.M > 0)) throw std::invalid_argument("make_pinched: bounds > 0");
  if (!(par.margin >= 0) || !(par.margin < 1))
    throw std::invalid_argument("make_pinched: margin in [0,1)");
  const double lo = (1.0 + par.margin) / par.M;
  const double hi = (1.0 - par.margin) * par.Lambda;
  if (!(lo <= hi))
    throw std::invalid_argument(
        "make_pinched: empty diagonal window, need Lambda*M >= (1+margin)/(1-margin)");
  std::vector<Mat> A;
  A.reserve(horizon);
  for (int n = 0; n < horizon; ++n) {
    Mat L = Mat::Zero(par.d, par.d);
    for (int i = 0; i < par.d; ++i) {
      L(i, i) = rng.unif(lo, hi) * rng.phase();
      for (int j = i + 1; j < par.d; ++j) L(i, j) = rng.disk(par.offdiag * par.Lambda);
    }
    A.push_back(L);
  }
  return A;
}

Mat pinched_composition(const std::vector<Mat>& A, int k, int h) {
  if (h < 0 || k < h || k > static_cast<int>(A.size()))
    throw std::invalid_argument("pinched_composition: need 0 <= h <= k <= horizon");
  const int d = A.empty() ? 1 : static_cast<int>(A.front().rows());
  Mat P = Mat::Identity(d, d);
  for (int n = h; n < k; ++n) P = A[n] * P;
  return P;
}

PinchMeasure measure_pinching(const std::vector<Mat>& A, double Lambda, double M) {
  PinchMeasure out;
  const int N = static_cast<int>(A.size());
  if (N == 0) return out;
  const int d = static_cast<int>(A.front().rows());
  for (int h = 0; h < N; ++h) {
    Mat P = Mat::Identity(d, d);
    Mat Pinv = Mat::Identity(d, d);
    double lf = 1.0, lm = 1.0;
    for (int k = h + 1; k <= N; ++k) {
      P = A[k - 1] * P;
      Pinv = Pinv * A[k - 1].inverse();
      lf *= Lambda;
      lm *= M;
      out.C_forward = std::max(out.C_forward, spectral_norm(P) / lf);
      out.C_inverse = std::max(out.C_inverse, spectral_norm(Pinv) / lm);
    }
  }
  out.C = std::max({1.0, out.C_forward, out.C_inverse});
  return out;
}

}  // namespace jetconj
