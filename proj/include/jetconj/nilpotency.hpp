#pragma once
// Combinatorial nilpotency: a fixed word of cyclic permutations whose
// interleaving with the relation W composes to the empty relation.
//
// The word n(d) over the alphabet {2..d} is defined recursively by
// juxtaposition:
//     n(2) = (2),     n(d) = (2, 3, ..., d-1) n(d-1) (d),
// so its length is N = d(d-1)/2.  Letter j of the word names the cycle
// kappa_{n_j} = (1 2 ... n_j).  The vanishing statement is that the pattern
// product
//     W  P_{sigma_1}  W  P_{sigma_2}  ...  P_{sigma_N}  W
// (matrix order; P_sigma = perm_pattern(sigma)) is the zero pattern.  By the
// support bound supp(AB) in rel_matmul(supp A, supp B), any operator product
// M_0 A_{U_{sigma_1}} M_1 ... A_{U_{sigma_N}} M_N with supp M_h in W is then
// identically zero — the matrix-level check lives with the operator tests.

#include <vector>

#include "jetconj/poset.hpp"

namespace jetconj {

// The word n(d) as letters in {2..d}; empty for d = 1.
std::vector<int> nilpotency_word(int d);

// sigma_j = kappa_{n_j} for 1-based position j in the word.
Permutation word_sigma(int d, int j);

// N-periodic extension used by schedules: sigma_at(d, h) for h >= 0, where
// sigma_at(d, h) = word_sigma(d, ((h-1) mod N) + 1) for h >= 1 and the
// extension pins sigma_at(d, 0) = sigma_at(d, N) = kappa_d.
Permutation sigma_at(int d, long long h);

// Pattern product above for an arbitrary word; true iff it is empty.
bool word_vanishes(const JetSpace& H, const std::vector<int>& word);

// word_vanishes with the canonical word n(d).
bool verify_combi(const JetSpace& H);

}  // namespace jetconj
