#include "jetconj/nilpotency.hpp"

#include <stdexcept>

namespace jetconj {

std::vector<int> nilpotency_word(int d) {
  if (d < 1) throw std::invalid_argument("nilpotency_word: need d >= 1");
  if (d == 1) return {};
  if (d == 2) return {2};
  std::vector<int> w;
  for (int j = 2; j <= d - 1; ++j) w.push_back(j);
  auto prev = nilpotency_word(d - 1);
  w.insert(w.end(), prev.begin(), prev.end());
  w.push_back(d);
  return w;
}

Permutation word_sigma(int d, int j) {
  auto w = nilpotency_word(d);
  if (j < 1 || j > static_cast<int>(w.size()))
    throw std::invalid_argument("word_sigma: position out of range");
  return Permutation::cycle(d, w[j - 1]);
}

Permutation sigma_at(int d, long long h) {
  auto w = nilpotency_word(d);
  if (w.empty()) return Permutation::identity(d);
  const long long N = static_cast<long long>(w.size());
  long long j = ((h % N) + N - 1) % N;  // h = 1 -> 0, h = N -> N-1, h = 0 -> N-1
  return Permutation::cycle(d, w[static_cast<size_t>(j)]);
}

bool word_vanishes(const JetSpace& H, const std::vector<int>& word) {
  const Relation W = make_W(H);
  Relation B = W;
  for (int letter : word) {
    B = rel_matmul(B, perm_pattern(H, Permutation::cycle(H.d(), letter)));
    B = rel_matmul(B, W);
  }
  return B.empty();
}

bool verify_combi(const JetSpace& H) { return word_vanishes(H, nilpotency_word(H.d())); }

}  // namespace jetconj
