#pragma once
// Deterministic random number generation.
//
// We deliberately avoid <random> distributions: their output is
// implementation-defined, which would break byte-identical reports across
// toolchains.  splitmix64 plus an explicit uint64 -> double mapping is
// reproducible everywhere.  Independent streams for different components are
// derived by XORing the master seed with an FNV-1a hash of a label.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>

namespace jetconj {

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double unif01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double unif(double a, double b) { return a + (b - a) * unif01(); }

  // Uniform on the unit circle.
  std::complex<double> phase() {
    const double pi = 3.14159265358979323846;
    double t = unif(-pi, pi);
    return {std::cos(t), std::sin(t)};
  }

  // Uniform modulus in [0, r) times a uniform phase (radially uniform; we
  // want coefficients spread across magnitudes, not area-uniform).
  std::complex<double> disk(double r) { return unif(0.0, r) * phase(); }
};

// Stream for a named component, decorrelated from other components.
inline SplitMix64 component_rng(std::uint64_t master_seed, std::string_view label) {
  return SplitMix64(master_seed ^ fnv1a64(label));
}

}  // namespace jetconj
