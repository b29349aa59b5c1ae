#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "seghull/geometry.hpp"

namespace seghull {

// SplitMix64 (Steele, Lea and Flood): state += 0x9e3779b97f4a7c15, then the
// output is the state passed through the variant-13 mixer
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   z ^= z >> 31
// Returns (value, next state).
std::pair<std::uint64_t, std::uint64_t> rng_next(std::uint64_t state);

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    const auto [value, state] = rng_next(state_);
    state_ = state;
    return value;
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes two draws per call.
  double normal();

 private:
  std::uint64_t state_;
};

enum class DistributionKind {
  kUniformDisk,
  kOnCircle,
  kNearCircle,
  kUniformBall,
  kOnSphere,
  kNearSphere,
};

std::string_view to_string(DistributionKind kind);
std::optional<DistributionKind> parse_distribution(std::string_view name);
int dimension_of(DistributionKind kind);

struct Distribution {
  DistributionKind kind = DistributionKind::kUniformDisk;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double band = 0.01;  // near-* kinds: radius uniform in [1 - band, 1]
};

// Deterministic for a fixed (kind, n, seed, band). Throws ContractViolation
// when band is outside (0, 1).
PointSet generate(const Distribution& dist);

}  // namespace seghull
