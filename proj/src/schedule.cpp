#include "jetconj/schedule.hpp"

#include <stdexcept>

#include "jetconj/nilpotency.hpp"

namespace jetconj {

long long epoch_base(int d) {
  if (d < 1 || d > 32) throw std::invalid_argument("epoch_base: need 1 <= d <= 32");
  return 1LL << (d - 1);
}

int epoch_of(int d, long long n) {
  if (n < 0) return -1;
  const long long D = epoch_base(d);
  if (D == 1) return n == 0 ? 0 : -1;  // d = 1: only n = 0
  long long p = 1;
  int h = 0;
  while (p - 1 < n) {
    if (p > (1LL << 62) / D) return -1;  // no overflow, n unreachable
    p *= D;
    ++h;
  }
  return (p - 1 == n) ? h : -1;
}

Permutation theta_at(int d, long long n) {
  int h = epoch_of(d, n);
  if (h < 0) return Permutation::identity(d);
  return sigma_at(d, h);
}

Permutation tau_at(int d, long long n) {
  Permutation tau = Permutation::identity(d);
  for (long long m : epoch_times(d, n - 1)) tau = compose(sigma_at(d, epoch_of(d, m)), tau);
  return tau;
}

std::vector<long long> epoch_times(int d, long long nmax) {
  std::vector<long long> out;
  const long long D = epoch_base(d);
  if (nmax < 0) return out;
  if (D == 1) {
    out.push_back(0);
    return out;
  }
  long long p = 1;
  while (p - 1 <= nmax) {
    out.push_back(p - 1);
    if (p > (1LL << 62) / D) break;
    p *= D;
  }
  return out;
}

}  // namespace jetconj
