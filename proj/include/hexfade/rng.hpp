#pragma once

// Seedable deterministic random stream. The variate path is pinned down to
// the bit level (mt19937_64 output mapped to doubles by a fixed shift, polar
// method for normals) so a seed reproduces the same sequence on any platform.

#include <cmath>
#include <cstdint>
#include <random>

namespace hexfade {

/// Stateless 64-bit mixer used to derive substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Worker substream w of a master seed; deterministic in (seed, w).
  static RngStream substream(std::uint64_t master_seed,
                             std::uint64_t worker_index) {
    return RngStream(splitmix64(master_seed ^ splitmix64(worker_index)));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [a, b); returns a when the interval is degenerate.
  double next_uniform(double a, double b) {
    return a + next_uniform() * (b - a);
  }

  /// Standard normal via the Marsaglia polar method (second deviate of each
  /// accepted pair is cached).
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_uniform() - 1.0;
      v = 2.0 * next_uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  /// Uniform index in {0, ..., n-1}.
  std::uint32_t next_index(std::uint32_t n) {
    const auto k = static_cast<std::uint32_t>(next_uniform() * n);
    return k < n ? k : n - 1;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hexfade
