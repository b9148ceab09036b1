#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ctscan {

// splitmix64 scrambler (Steele, Lea, Flood), used for seeding only.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Project-wide RNG: std::mt19937_64 seeded through splitmix64. The engine is
// fully specified by the standard, so sequences are reproducible across
// platforms. Bounded and real-valued draws are implemented here because the
// standard does not pin the algorithms of its distribution objects.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Substream k of a master seed. The engine seed works out to
  // splitmix64(splitmix64(seed) + k); streams with different k are
  // independent, and adding streams never perturbs existing ones.
  static Rng substream(std::uint64_t seed, std::uint64_t k) {
    return Rng(splitmix64(seed) + k);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n). Unbiased via rejection.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [lo, hi) with 53-bit resolution.
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

// k distinct values from [0, n), returned ascending. Uses a partial
// Fisher-Yates shuffle when n < 10k and rejection into a hash set otherwise.
std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n,
                                                      std::uint64_t k,
                                                      Rng& rng);

}  // namespace ctscan
