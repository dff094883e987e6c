#pragma once

#include <cmath>
#include <cstdint>

namespace dualnup {

/// Deterministic 64-bit-state generator (SplitMix64, Steele/Lea/Flood 2014).
/// Used for instance generation so that a (dims, seed) pair pins the instance
/// bytes exactly; std::mt19937 + std::normal_distribution are not portable
/// across standard library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on the closed interval with endpoints lo and hi, in either order.
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Standard normal via Box-Muller; consumes exactly two raw draws so the
  /// stream position stays deterministic.
  double next_normal() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace dualnup
