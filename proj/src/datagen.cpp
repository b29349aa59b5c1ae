#include "seghull/datagen.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "seghull/errors.hpp"

namespace seghull {

std::pair<std::uint64_t, std::uint64_t> rng_next(std::uint64_t state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return {z ^ (z >> 31), state};
}

double SplitMix64::normal() {
  // 1 - u keeps the logarithm's argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

constexpr std::array<std::pair<DistributionKind, std::string_view>, 6> kNames{{
    {DistributionKind::kUniformDisk, "uniform-disk"},
    {DistributionKind::kOnCircle, "on-circle"},
    {DistributionKind::kNearCircle, "near-circle"},
    {DistributionKind::kUniformBall, "uniform-ball"},
    {DistributionKind::kOnSphere, "on-sphere"},
    {DistributionKind::kNearSphere, "near-sphere"},
}};

Vec3 unit_direction(SplitMix64& rng) {
  for (;;) {
    const Vec3 g{rng.normal(), rng.normal(), rng.normal()};
    const double len = norm(g);
    if (len > 0.0) return {g.x / len, g.y / len, g.z / len};
  }
}

}  // namespace

std::string_view to_string(DistributionKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<DistributionKind> parse_distribution(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

int dimension_of(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kUniformDisk:
    case DistributionKind::kOnCircle:
    case DistributionKind::kNearCircle:
      return 2;
    default:
      return 3;
  }
}

PointSet generate(const Distribution& dist) {
  if (!(dist.band > 0.0 && dist.band < 1.0)) {
    throw ContractViolation("generate: band must lie in (0, 1)");
  }
  SplitMix64 rng(dist.seed);
  PointSet points(dimension_of(dist.kind));
  points.reserve(dist.n);
  for (std::size_t i = 0; i < dist.n; ++i) {
    switch (dist.kind) {
      case DistributionKind::kUniformDisk:
      case DistributionKind::kOnCircle:
      case DistributionKind::kNearCircle: {
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        double radius = 1.0;
        if (dist.kind == DistributionKind::kUniformDisk) radius = std::sqrt(rng.uniform());
        if (dist.kind == DistributionKind::kNearCircle) radius = 1.0 - dist.band * rng.uniform();
        points.push_back(Vec2{radius * std::cos(angle), radius * std::sin(angle)});
        break;
      }
      case DistributionKind::kUniformBall:
      case DistributionKind::kOnSphere:
      case DistributionKind::kNearSphere: {
        const Vec3 dir = unit_direction(rng);
        double radius = 1.0;
        if (dist.kind == DistributionKind::kUniformBall) radius = std::cbrt(rng.uniform());
        if (dist.kind == DistributionKind::kNearSphere) radius = 1.0 - dist.band * rng.uniform();
        points.push_back(Vec3{radius * dir.x, radius * dir.y, radius * dir.z});
        break;
      }
    }
  }
  return points;
}

}  // namespace seghull
