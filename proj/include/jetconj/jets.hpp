#pragma once
// 2-jets of holomorphic germs fixing the origin: F(z) = A z + q(z) with A
// invertible and q homogeneous quadratic (coefficients over JetSpace(d, 2)).
// Composition and inversion are exact at the 2-jet level:
//
//     (F o G)  :  linear A_F A_G,   quad  q_F o A_G + A_F o q_G
//     F^{-1}   :  linear A^{-1},    quad  -A^{-1} o q o A^{-1}
//
// Conjugation by a permutation map U_tau is a pure reindexing of matrix
// entries and coefficients — implemented without arithmetic so that exact
// structure (true zeros) survives.

#include "jetconj/hom.hpp"
#include "jetconj/poset.hpp"

namespace jetconj {

struct Jet2 {
  Mat A;  // d x d, invertible
  Vec q;  // coefficients over JetSpace(d, 2)
};

Jet2 jet_identity(const JetSpace& H);
Jet2 jet_compose(const JetSpace& H, const Jet2& F, const Jet2& G);
Jet2 jet_inverse(const JetSpace& H, const Jet2& F);
Vec jet_apply(const JetSpace& H, const Jet2& F, const Vec& z);

// U_tau^{-1} o F o U_tau, exact.
Jet2 conj_by_perm(const JetSpace& H, const Permutation& tau, const Jet2& F);

// Max coefficient magnitude across linear and quadratic parts.
double jet_norm(const Jet2& F);
double jet_dist(const Jet2& F, const Jet2& G);

}  // namespace jetconj
