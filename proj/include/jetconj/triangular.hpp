#pragma once
// Special triangular polynomial automorphisms of C^d.
//
// A special triangular automorphism is f(z) = L z + p(z) with L an upper
// triangular linear automorphism and p strictly triangular polynomial data:
// component j of p depends only on z_{j+1}, ..., z_d (so p_d = 0), with
// p(0) = 0 and Dp(0) = 0.  Such maps are globally invertible by back
// substitution, and the class is closed under composition.
//
// The composition closure comes with weight bookkeeping: positive integer
// weights k_1, ..., k_d with k_d = 1 such that the weighted degree of every
// monomial z^alpha appearing in p_j satisfies sum_{i>j} alpha_i k_i <= k_j.
// This bound is stable under composition with the same weights, and
// K = max_j k_j (the stable degree) controls the polynomial growth
// |f_{n,0}(z)| <= C0 Lambda^n (|z| + |z|^K) of contracting sequences.
// For quadratic p the dyadic weights k_j = 2^{d-j} always work, giving
// K = 2^{d-1}.

#include <map>
#include <vector>

#include "hom.hpp"
#include "jets.hpp"
#include "poset.hpp"
#include "rng.hpp"

namespace jetconj {

// Sparse polynomial in d complex variables, keyed by exponent vector.
// The map ordering (lexicographic on exponent vectors) makes iteration
// deterministic, which the reporting layer relies on.
struct MPoly {
  int d = 0;
  std::map<Exponent, cd> c;

  explicit MPoly(int dim = 0) : d(dim) {}
};

// Accumulate a term; exact-zero results are erased so that is-zero and
// support queries stay structural.
void poly_add_term(MPoly& p, const Exponent& e, cd coeff);

MPoly poly_add(const MPoly& a, const MPoly& b);
MPoly poly_scale(const MPoly& a, cd s);
MPoly poly_mul(const MPoly& a, const MPoly& b);
MPoly poly_pow(const MPoly& a, int k);

// Substitute g[j] for variable j; exact polynomial composition.
MPoly poly_subst(const MPoly& a, const std::vector<MPoly>& g);

cd poly_eval(const MPoly& a, const Vec& z);

// Total degree; zero polynomial reports 0.
int poly_degree(const MPoly& a);

// max over monomials of sum_i alpha_i * w_i (0 for the zero polynomial).
long long poly_weighted_degree(const MPoly& a, const std::vector<int>& w);

// True when every monomial uses only variables with index > j (0-based).
bool poly_uses_only_above(const MPoly& a, int j);

// f(z) = L z + p(z) with L upper triangular and p strictly triangular.
struct TriangularAuto {
  Mat L;
  std::vector<MPoly> p;

  int dim() const { return static_cast<int>(p.size()); }
};

// Structural validity: L exactly upper triangular with nonzero diagonal,
// p[j] free of constant and linear terms and supported on variables > j.
bool is_special_triangular(const TriangularAuto& f);

Vec tri_apply(const TriangularAuto& f, const Vec& z);

// Solve L z + p(z) = w exactly, last coordinate first: z_d = w_d / L_dd,
// and z_j = (w_j - sum_{k>j} L_jk z_k - p_j(z)) / L_jj once z_{j+1..d} are
// known.  One pass, no iteration.
Vec tri_inverse_apply(const TriangularAuto& f, const Vec& w);

// Exact composition (F o G)(z) = F.L G.L z + [F.L p_G(z) + p_F(G(z))].
// Strict triangularity of both polynomial parts makes the bracket strictly
// triangular again, so the class is closed.
TriangularAuto tri_compose(const TriangularAuto& F, const TriangularAuto& G);

// Dyadic weights k_j = 2^{d-j} (1-based j); the matching stable degree is
// K = 2^{d-1}.  Any quadratic strictly triangular p satisfies them: a
// monomial z_i z_k in p_j with i, k > j has weight 2^{d-i} + 2^{d-k}
// <= 2 * 2^{d-j-1} = k_j.
std::vector<int> dyadic_weights(int d);
int stable_degree(int d);

// Weighted degree condition: for every j and every monomial of p_j,
// sum_{i>j} alpha_i k_i <= k_j.  Requires k_d = 1 and all weights >= 1.
bool weights_compatible(const TriangularAuto& f, const std::vector<int>& k);

// Seeded generator: diagonal moduli in [lambda/2, lambda] with random
// phases, off-diagonal entries in the disk of radius offdiag * lambda,
// quadratic coefficients in the disk of radius quad_scale (one draw per
// monomial z_i z_k with j < i <= k).
TriangularAuto random_special_tri(int d, double lambda, double offdiag,
                                  double quad_scale, SplitMix64& rng);

// Bridge from a quadratic 2-jet whose linear part is exactly upper
// triangular and whose quadratic coefficients vanish off T (so component i
// only uses variables > i).  Throws std::invalid_argument otherwise.
TriangularAuto tri_from_jet(const JetSpace& H, const Jet2& F);

// Smallest C with ||L_{n,m}|| <= C Lambda^{n-m} over the horizon, where
// L_{n,m} is the forward composition of the linear parts (spectral norm).
double linear_chain_constant(const std::vector<TriangularAuto>& f,
                             double lambda);

// Measured constant of the contraction bound along one orbit:
// max_n |f_{n,0}(z)| / (Lambda^n (|z| + |z|^K)).
double measured_orbit_constant(const std::vector<TriangularAuto>& f,
                               const Vec& z, double lambda, int K);

}  // namespace jetconj
