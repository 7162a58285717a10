#include "jetconj/jets.hpp"

#include <stdexcept>

namespace jetconj {

Jet2 jet_identity(const JetSpace& H) {
  return Jet2{Mat::Identity(H.d(), H.d()), Vec::Zero(H.size())};
}

Jet2 jet_compose(const JetSpace& H, const Jet2& F, const Jet2& G) {
  Jet2 out;
  out.A = F.A * G.A;
  out.q = right_compose_matrix(H, G.A) * F.q + left_compose_matrix(H, F.A) * G.q;
  return out;
}

Jet2 jet_inverse(const JetSpace& H, const Jet2& F) {
  Jet2 out;
  Mat inv = is_upper_triangular_exact(F.A) ? upper_tri_inverse(F.A) : Mat(F.A.inverse());
  out.A = inv;
  out.q = -(left_compose_matrix(H, inv) * (right_compose_matrix(H, inv) * F.q));
  return out;
}

Vec jet_apply(const JetSpace& H, const Jet2& F, const Vec& z) {
  return F.A * z + eval_hom(H, F.q, z);
}

Jet2 conj_by_perm(const JetSpace& H, const Permutation& tau, const Jet2& F) {
  const int d = H.d();
  if (tau.d() != d) throw std::invalid_argument("conj_by_perm: size mismatch");
  Jet2 out;
  out.A = Mat(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.A(i, j) = F.A(tau(i), tau(j));  // (U^{-1} A U)_{ij}
  out.q = Vec(H.size());
  // Coefficient at s of U_tau^{-1} o q o U_tau is the coefficient of q at tau.s.
  for (int s = 0; s < H.size(); ++s) out.q(s) = F.q(H.act(tau, s));
  return out;
}

double jet_norm(const Jet2& F) {
  double a = F.A.size() ? F.A.cwiseAbs().maxCoeff() : 0.0;
  double b = F.q.size() ? F.q.cwiseAbs().maxCoeff() : 0.0;
  return std::max(a, b);
}

double jet_dist(const Jet2& F, const Jet2& G) {
  double a = (F.A - G.A).cwiseAbs().maxCoeff();
  double b = (F.q - G.q).cwiseAbs().maxCoeff();
  return std::max(a, b);
}

}  // namespace jetconj
