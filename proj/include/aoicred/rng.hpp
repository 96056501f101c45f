#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aoicred {

// splitmix64 step; used as a mixing function for seed derivation
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream splitting rule: every (replication, process, purpose) triple gets its
// own engine seeded from the master seed, so adding processes or replications
// never perturbs existing streams.
enum class StreamPurpose : std::uint8_t {
  InterArrival = 0,
  Service = 1,
  StampNoise = 2,
};

inline std::uint64_t stream_tag(std::uint32_t replication, std::uint32_t process,
                                StreamPurpose purpose) {
  return (std::uint64_t(replication) << 32) | (std::uint64_t(process) << 8) |
         std::uint64_t(purpose);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  return mix64(master ^ mix64(tag));
}

// mt19937_64 with hand-rolled variate transforms. The engine's output is
// specified by the standard and the transforms below are fixed arithmetic,
// so streams are reproducible across compilers (std::*_distribution is not).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  // strictly inside (0,1)
  double uniform() { return (double(eng_() >> 11) + 0.5) * 0x1.0p-53; }

  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

  // standard normal, Box-Muller cosine branch; consumes exactly two uniforms
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925287;
  std::mt19937_64 eng_;
};

}  // namespace aoicred
