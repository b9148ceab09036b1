#include "ctscan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include "ctscan/error.hpp"

namespace ctscan {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error("Rng::below called with n = 0");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

double Rng::normal() {
  // u1 in (0, 1]: shift so log() never sees zero.
  const double u1 =
      (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n,
                                                      std::uint64_t k,
                                                      Rng& rng) {
  if (k > n) {
    throw DataError("cannot sample " + std::to_string(k) +
                    " distinct values from a range of " + std::to_string(n));
  }
  std::vector<std::uint64_t> out;
  if (k == 0) return out;
  out.reserve(k);
  if (n < 10 * k) {
    std::vector<std::uint64_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::uint64_t i = 0; i < k; ++i) {
      const std::uint64_t j = i + rng.below(n - i);
      std::swap(pool[i], pool[j]);
    }
    out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  } else {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(k * 2);
    while (out.size() < k) {
      const std::uint64_t v = rng.below(n);
      if (seen.insert(v).second) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ctscan
