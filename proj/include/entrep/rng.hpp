#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace entrep {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic RNG with substream derivation. Streams are identified by
// (seed, label, index), so parallel Monte Carlo workers draw reproducible
// randomness regardless of scheduling. Uniform and normal variates are
// generated by hand from raw 64-bit words; std:: distributions are avoided
// because their output is not pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  static Rng stream(std::uint64_t seed, std::string_view label,
                    std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    for (char c : label) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
    h = splitmix64(h ^ index);
    return Rng(h);
  }

  std::uint64_t word() { return eng_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(word() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t integer(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) %
           n;
  }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  // Index sampled from nonnegative weights by CDF inversion. Weights need
  // not be normalized; a zero total returns 0.
  int discrete(const std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) total += x;
    if (total <= 0.0) return 0;
    double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      acc += w[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(w.size()) - 1;
  }

  // Uniform subset of {0,...,n-1} of the given size, returned sorted.
  std::vector<int> subset(int n, int size) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < size; ++i) {
      int j = i + static_cast<int>(integer(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(size);
    std::sort(idx.begin(), idx.end());
    return idx;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace entrep
