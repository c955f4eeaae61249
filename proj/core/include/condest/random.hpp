#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace condest {

/// Seedable random source with platform-independent output.
///
/// Uniforms come from a counter-based generator: the i-th draw is the
/// SplitMix64 finalizer applied to `key + i * golden_gamma`, so a stream is
/// fully determined by (key, counter). Normals use the Box-Muller transform
/// and cache the second variate of each pair.
///
/// derive() produces an independent child stream keyed by (parent key,
/// stream id) without advancing the parent. The estimator uses this to give
/// each randomized phase its own reproducible sub-seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1).
  double uniform();

  double normal();

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  Rng derive(std::uint64_t stream) const;

  std::uint64_t key() const noexcept { return key_; }

private:
  struct Raw {};
  Rng(Raw, std::uint64_t key) : key_{key} {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_normal_;
};

/// n independent standard normals.
std::vector<double> random_gaussian_vector(std::size_t n, Rng& rng);

/// Uniform point on the unit sphere in R^n (normalized Gaussian vector).
std::vector<double> random_unit_vector(std::size_t n, Rng& rng);

}  // namespace condest
