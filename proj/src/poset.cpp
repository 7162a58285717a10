// Implementation of the index-set combinatorics.

#include "jetconj/poset.hpp"

#include <algorithm>
#include <stdexcept>

namespace jetconj {

Permutation Permutation::identity(int d) {
  Permutation p;
  p.s.resize(d);
  for (int i = 0; i < d; ++i) p.s[i] = i;
  return p;
}

Permutation Permutation::cycle(int d, int h) {
  if (h < 1 || h > d) throw std::invalid_argument("Permutation::cycle: need 1 <= h <= d");
  Permutation p = identity(d);
  for (int i = 0; i + 1 < h; ++i) p.s[i] = i + 1;  // i -> i+1 (0-based)
  if (h >= 1) p.s[h - 1] = 0;                      // h -> 1
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < d(); ++i)
    if (s[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.s.resize(s.size());
  for (int i = 0; i < d(); ++i) p.s[s[i]] = i;
  return p;
}

std::string Permutation::str() const {
  if (is_identity()) return "id";
  std::string out;
  std::vector<char> seen(s.size(), 0);
  for (int i = 0; i < d(); ++i) {
    if (seen[i] || s[i] == i) continue;
    out += "(";
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = s[j];
    }
    out += ")";
  }
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.d() != b.d()) throw std::invalid_argument("compose: size mismatch");
  Permutation p;
  p.s.resize(a.d());
  for (int i = 0; i < a.d(); ++i) p.s[i] = a.s[b.s[i]];
  return p;
}

namespace {

// All alpha with |alpha| = k in d slots, descending lexicographic order.
void gen_desc_lex(int d, int k, Exponent& cur, int pos, std::vector<Exponent>& out) {
  if (pos == d - 1) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  for (int a = k; a >= 0; --a) {
    cur[pos] = a;
    gen_desc_lex(d, k - a, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

}  // namespace

JetSpace::JetSpace(int d, int k) : d_(d), k_(k) {
  if (d < 1) throw std::invalid_argument("JetSpace: need d >= 1");
  if (k < 2) throw std::invalid_argument("JetSpace: need k >= 2");
  std::vector<Exponent> alphas;
  Exponent cur(d, 0);
  gen_desc_lex(d, k, cur, 0, alphas);
  // Enumeration: component ascending, alpha descending-lex within component.
  for (int i = 0; i < d; ++i)
    for (const auto& a : alphas) elems_.push_back(JetIndex{a, i});
  for (int idx = 0; idx < size(); ++idx)
    lookup_[{elems_[idx].alpha, elems_[idx].comp}] = idx;

  const int n = size();
  leq_.assign(static_cast<size_t>(n) * n, 0);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      const JetIndex& a = elems_[s];
      const JetIndex& b = elems_[t];
      bool ok = a.comp <= b.comp;
      int pa = 0, pb = 0;
      for (int m = 0; ok && m < d_; ++m) {
        pa += a.alpha[m];
        pb += b.alpha[m];
        if (pa > pb) ok = false;
      }
      leq_[static_cast<size_t>(s) * n + t] = ok ? 1 : 0;
    }
  }
}

int JetSpace::index_of(const JetIndex& e) const {
  auto it = lookup_.find({e.alpha, e.comp});
  return it == lookup_.end() ? -1 : it->second;
}

std::vector<int> JetSpace::all() const {
  std::vector<int> v(size());
  for (int i = 0; i < size(); ++i) v[i] = i;
  return v;
}

std::vector<int> JetSpace::set_V() const {
  std::vector<int> v;
  for (int i = 0; i < size(); ++i)
    if (elems_[i].alpha[elems_[i].comp] == 0) v.push_back(i);
  return v;
}

std::vector<int> JetSpace::set_T() const {
  std::vector<int> v;
  for (int i = 0; i < size(); ++i) {
    const JetIndex& e = elems_[i];
    bool in = true;
    for (int j = 0; j <= e.comp; ++j)
      if (e.alpha[j] != 0) {
        in = false;
        break;
      }
    if (in) v.push_back(i);
  }
  return v;
}

std::vector<int> JetSpace::up_closure(const std::vector<int>& E) const {
  std::vector<char> mark(size(), 0);
  for (int t = 0; t < size(); ++t)
    for (int s : E)
      if (leq(s, t)) {
        mark[t] = 1;
        break;
      }
  std::vector<int> out;
  for (int t = 0; t < size(); ++t)
    if (mark[t]) out.push_back(t);
  return out;
}

int JetSpace::height() const {
  // Longest chain by DP over the order (acyclic on distinct elements).
  const int n = size();
  std::vector<int> h(n, 0);
  // Repeated relaxation; the order's height is small, so this settles fast.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int t = 0; t < n; ++t) {
      int best = 1;
      for (int s = 0; s < n; ++s) {
        if (s != t && leq(s, t) && !leq(t, s) && h[s] + 1 > best) best = h[s] + 1;
      }
      if (best > h[t]) {
        h[t] = best;
        changed = true;
      }
    }
  }
  return *std::max_element(h.begin(), h.end());
}

std::vector<std::pair<int, int>> JetSpace::hasse_edges() const {
  std::vector<std::pair<int, int>> out;
  const int n = size();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t || !leq(s, t)) continue;
      bool cover = true;
      for (int u = 0; cover && u < n; ++u) {
        if (u == s || u == t) continue;
        if (leq(s, u) && leq(u, t) && !leq(u, s) && !leq(t, u)) cover = false;
      }
      if (cover) out.emplace_back(s, t);
    }
  return out;
}

int JetSpace::act(const Permutation& sigma, int idx) const {
  if (sigma.d() != d_) throw std::invalid_argument("act: permutation size mismatch");
  const JetIndex& e = elems_[idx];
  Permutation inv = sigma.inverse();
  JetIndex out;
  out.alpha.resize(d_);
  for (int m = 0; m < d_; ++m) out.alpha[m] = e.alpha[inv(m)];  // (alpha o sigma^{-1})_m
  out.comp = sigma(e.comp);
  int j = index_of(out);
  if (j < 0) throw std::logic_error("act: image not in enumeration");
  return j;
}

std::string JetSpace::str(int idx) const {
  const JetIndex& e = elems_[idx];
  std::string out = "((";
  for (int m = 0; m < d_; ++m) {
    if (m) out += ",";
    out += std::to_string(e.alpha[m]);
  }
  out += ")," + std::to_string(e.comp + 1) + ")";
  return out;
}

std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_complement(const std::vector<int>& a, int n) {
  std::vector<int> out;
  size_t j = 0;
  for (int i = 0; i < n; ++i) {
    if (j < a.size() && a[j] == i) {
      ++j;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

bool set_contains(const std::vector<int>& a, int x) {
  return std::binary_search(a.begin(), a.end(), x);
}

Relation::Relation(int n) : n_(n), m_(static_cast<size_t>(n) * n, 0) {}

Relation Relation::identity(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

bool Relation::empty() const {
  for (auto v : m_)
    if (v) return false;
  return true;
}

int Relation::count() const {
  int c = 0;
  for (auto v : m_) c += v ? 1 : 0;
  return c;
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < n_; ++s)
    for (int t = 0; t < n_; ++t)
      if (at(s, t)) out.emplace_back(s, t);
  return out;
}

std::vector<int> Relation::image(const std::vector<int>& E) const {
  std::vector<char> mark(n_, 0);
  for (int s : E)
    for (int t = 0; t < n_; ++t)
      if (at(s, t)) mark[t] = 1;
  std::vector<int> out;
  for (int t = 0; t < n_; ++t)
    if (mark[t]) out.push_back(t);
  return out;
}

Relation rel_matmul(const Relation& A, const Relation& B) {
  if (A.n() != B.n()) throw std::invalid_argument("rel_matmul: size mismatch");
  const int n = A.n();
  Relation C(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (!A.at(i, k)) continue;
      for (int j = 0; j < n; ++j)
        if (B.at(k, j)) C.set(i, j);
    }
  return C;
}

Relation perm_pattern(const JetSpace& H, const Permutation& sigma) {
  Relation r(H.size());
  Permutation inv = sigma.inverse();
  for (int u = 0; u < H.size(); ++u) r.set(H.act(inv, u), u);
  return r;
}

Relation make_W(const JetSpace& H) {
  Relation W(H.size());
  const auto T = H.set_T();
  const auto V = H.set_V();
  for (int s = 0; s < H.size(); ++s) {
    if (set_contains(T, s)) continue;
    const auto mids = set_intersect(V, H.up_closure({s}));
    for (int t : H.up_closure(mids)) W.set(s, t);
  }
  return W;
}

Relation order_pattern(const JetSpace& H) {
  Relation r(H.size());
  for (int s = 0; s < H.size(); ++s)
    for (int t = 0; t < H.size(); ++t)
      if (H.leq(s, t)) r.set(s, t);
  return r;
}

}  // namespace jetconj
