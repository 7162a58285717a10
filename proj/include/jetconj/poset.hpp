#pragma once
// Combinatorics of the index set of degree-k coefficients of polynomial maps
// in d complex variables.
//
// An index is a pair (alpha, i) where alpha is a multi-index with |alpha| = k
// and i in {1..d} is a component; it labels the coefficient of the monomial
// z^alpha e_i.  The resonance order on indices is
//
//     (alpha, i) <= (beta, j)   iff   i <= j   and
//                                     alpha_1+...+alpha_m <= beta_1+...+beta_m
//                                     for every m = 1..d.
//
// (For |alpha| = |beta| the m = d condition is automatic.)  Two distinguished
// subsets drive everything downstream:
//
//     V = { (alpha,i) : alpha_i = 0 }          ("off-diagonal" indices)
//     T = { (alpha,i) : alpha_j = 0 for j<=i }  (Jonquieres-type indices)
//
// and the relation
//
//     W = { (s,t) : s not in T and s <= r <= t for some r in V }.
//
// Conventions for relations, fixed once and used everywhere:
//   * a relation R on H is a set of pairs (s,t), realized as the 0/1 matrix
//     with entry 1 at row s, column t — exactly the sparsity pattern of an
//     operator matrix A with a_{s,t} != 0 at those slots;
//   * the image R(E) = { t : exists s in E with (s,t) in R };
//   * rel_matmul(A, B) is the relation whose matrix is mat(A) * mat(B), so
//     that supp(A*B) is contained in rel_matmul(supp A, supp B) for operator
//     matrices — all vanishing arguments are phrased through rel_matmul to
//     keep the composition direction unambiguous.
//
// Permutations act by sigma . (alpha, i) = (alpha o sigma^{-1}, sigma(i)),
// matching conjugation p |-> U_sigma^{-1} o p o U_sigma on coefficients:
// the operator A_{U_sigma} maps the basis vector at t to the one at
// sigma^{-1} . t, so its pattern is { (sigma^{-1}.u, u) } = { (t, sigma.t) }.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace jetconj {

using Exponent = std::vector<int>;  // length d, non-negative entries

struct JetIndex {
  Exponent alpha;
  int comp = 0;  // 0-based component; printed 1-based
  friend bool operator==(const JetIndex&, const JetIndex&) = default;
};

// One-line notation: s[i] = sigma(i), 0-based.
struct Permutation {
  std::vector<int> s;

  static Permutation identity(int d);
  // kappa_h = cycle (1 2 ... h): 1->2, ..., h-1->h, h->1, rest fixed.
  static Permutation cycle(int d, int h);

  int d() const { return static_cast<int>(s.size()); }
  int operator()(int i) const { return s[i]; }
  bool is_identity() const;
  Permutation inverse() const;
  friend bool operator==(const Permutation&, const Permutation&) = default;
  std::string str() const;  // cycle notation, 1-based
};

// compose(a, b)(i) = a(b(i)) — b first, then a.
Permutation compose(const Permutation& a, const Permutation& b);

class JetSpace {
 public:
  JetSpace(int d, int k = 2);

  int d() const { return d_; }
  int k() const { return k_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const JetIndex& at(int idx) const { return elems_[idx]; }
  int index_of(const JetIndex& e) const;  // -1 if absent

  bool leq(int s, int t) const { return leq_[static_cast<size_t>(s) * elems_.size() + t] != 0; }

  std::vector<int> all() const;
  std::vector<int> set_V() const;
  std::vector<int> set_T() const;
  std::vector<int> up_closure(const std::vector<int>& E) const;

  // Number of elements in a longest chain of the order.
  int height() const;

  // Covering pairs (s, t): s < t with nothing strictly between.
  std::vector<std::pair<int, int>> hasse_edges() const;

  // sigma . element, as an index into the enumeration.
  int act(const Permutation& sigma, int idx) const;

  std::string str(int idx) const;  // e.g. "((2,0),1)"

 private:
  int d_, k_;
  std::vector<JetIndex> elems_;
  std::map<std::pair<Exponent, int>, int> lookup_;
  std::vector<std::uint8_t> leq_;
};

// Sorted-set helpers used throughout the combinatorial layer.
std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_intersect(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_complement(const std::vector<int>& a, int n);
bool set_contains(const std::vector<int>& a, int x);

// Dense boolean relation on {0..n-1} x {0..n-1}.
class Relation {
 public:
  explicit Relation(int n);
  static Relation identity(int n);

  int n() const { return n_; }
  bool at(int s, int t) const { return m_[static_cast<size_t>(s) * n_ + t] != 0; }
  void set(int s, int t, bool v = true) { m_[static_cast<size_t>(s) * n_ + t] = v ? 1 : 0; }

  bool empty() const;
  int count() const;
  std::vector<std::pair<int, int>> pairs() const;
  std::vector<int> image(const std::vector<int>& E) const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  int n_;
  std::vector<std::uint8_t> m_;
};

// Pattern of mat(A) * mat(B).
Relation rel_matmul(const Relation& A, const Relation& B);

// Sparsity pattern of the coefficient-space operator of U_sigma:
// ones at (sigma^{-1}.u, u).
Relation perm_pattern(const JetSpace& H, const Permutation& sigma);

// The relation W (see header comment).  Satisfies rel_matmul(W, W) == W.
Relation make_W(const JetSpace& H);

// Order relation itself as a Relation: ones at (s,t) with s <= t.
Relation order_pattern(const JetSpace& H);

}  // namespace jetconj
