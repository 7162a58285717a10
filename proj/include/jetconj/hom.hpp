#pragma once
// Operators on the space of homogeneous degree-k polynomial maps of C^d.
//
// A map p(z) = sum_{(alpha,i)} c_{(alpha,i)} z^alpha e_i is stored as the
// coefficient vector (c) over the JetSpace enumeration.  For an invertible
// linear map L, conjugation acts on coefficients through
//
//     A_L p = L^{-1} o p o L,
//
// which factors as A_L = Lft(L^{-1}) * Rgt(L) where Rgt(L) is "substitute
// z := L z" (block-diagonal over components; block entry [gamma, beta] is the
// z^gamma coefficient of (L z)^beta) and Lft(M) is "postcompose with M"
// (mixes components: new coefficient (alpha,i) = sum_j M_{ij} c_{(alpha,j)}).
// Conjugation is contravariant: A_{L M} = A_M A_L.
//
// Entry formula: A_L[(alpha,i),(beta,j)] = [z^alpha]((Lz)^beta) * (L^{-1})_{ij}.
// For upper-triangular L this is supported in the order pattern {s <= t} with
// exact structural zeros elsewhere (every excluded entry is a sum of products
// each containing a true 0.0 factor, provided the triangular inverse is
// computed by back substitution, which keeps exact zeros below the diagonal).
//
// Q is the diagonal projector that kills the coefficients indexed by T.

#include <Eigen/Dense>
#include <complex>

#include "jetconj/poset.hpp"
#include "jetconj/rng.hpp"

namespace jetconj {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// z^alpha for a point z in C^d.
cd eval_monomial(const Exponent& alpha, const Vec& z);

// Value in C^d of the homogeneous map with coefficient vector p at z.
Vec eval_hom(const JetSpace& H, const Vec& p, const Vec& z);

// p |-> p o L (precompose with the linear map L).
Mat right_compose_matrix(const JetSpace& H, const Mat& L);

// p |-> M o p (postcompose; M need not be invertible).
Mat left_compose_matrix(const JetSpace& H, const Mat& M);

// Inverse of an upper-triangular matrix by back substitution; the strictly
// lower part of the result is exactly zero.
Mat upper_tri_inverse(const Mat& L);

// True iff the strictly lower part is exactly 0.0.
bool is_upper_triangular_exact(const Mat& L);

// A_L = Lft(L^{-1}) Rgt(L); uses the back-substitution inverse when L is
// exactly upper triangular so that structural zeros stay exact.
Mat conj_matrix(const JetSpace& H, const Mat& L);

// d x d matrix of U_sigma: e_j |-> e_{sigma(j)}.
Mat u_matrix(const Permutation& sigma);

// A_{U_sigma}: exact 0/1 matrix, ones at (sigma^{-1}.u, u).
Mat perm_op_matrix(const JetSpace& H, const Permutation& sigma);

// Diagonal projector with kernel spanned by the T-indexed basis vectors.
Mat projector_Q(const JetSpace& H);

// Zero out entries outside the pattern.
Mat mask(const Mat& A, const Relation& R);

// True iff every entry outside the pattern has magnitude <= tol.
bool support_within(const Mat& A, const Relation& R, double tol);

// Splitting of Q A Q along the pattern W: m1 = entries on W, m0 = the rest.
struct Decomposition {
  Mat m0, m1;
};
Decomposition decompose(const JetSpace& H, const Mat& A);

// Max coefficient magnitude (the norm used for polynomial maps).
double coeff_norm(const Vec& p);

// Operator norm induced by the max-coefficient norm: max absolute row sum.
double op_norm(const Mat& A);

// Spectral norm (largest singular value) for small d x d linear maps; used
// where unitary invariance matters (pinching constants).
double spectral_norm(const Mat& A);

// Random coefficient vector with entries in the disk of radius `scale`.
Vec random_hom(const JetSpace& H, SplitMix64& rng, double scale);

// Random matrix supported on the pattern, entries in the unit disk.
Mat random_supported(const JetSpace& H, const Relation& R, SplitMix64& rng);

// Max |entry| over `trials` products M_0 A_{U_{sigma_1}} M_1 ... A_{U_{sigma_N}} M_N
// with fresh random W-supported factors M_h (exact zero in theory).
double nilpotency_matrix_residual(const JetSpace& H, int trials, SplitMix64& rng);

}  // namespace jetconj
