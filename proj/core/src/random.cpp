#include "condest/random.hpp"

#include <cmath>
#include <numbers>

#include "condest/errors.hpp"
#include "condest/linops.hpp"

namespace condest {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : key_{splitmix_finalize(seed + kGoldenGamma)} {}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return splitmix_finalize(key_ + counter_ * kGoldenGamma);
}

double Rng::uniform() {
  // 53 random mantissa bits, offset by half an ulp so 0 and 1 never occur.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw ContractError("Rng::below: bound must be positive");
  }
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r = next_u64();
  while (r >= limit) {
    r = next_u64();
  }
  return r % bound;
}

Rng Rng::derive(std::uint64_t stream) const {
  return Rng(Raw{}, splitmix_finalize(key_ ^ splitmix_finalize(stream * kGoldenGamma + 1)));
}

std::vector<double> random_gaussian_vector(std::size_t n, Rng& rng) {
  std::vector<double> x(n);
  for (auto& xi : x) {
    xi = rng.normal();
  }
  return x;
}

std::vector<double> random_unit_vector(std::size_t n, Rng& rng) {
  auto x = random_gaussian_vector(n, rng);
  const double nrm = norm2(x);
  for (auto& xi : x) {
    xi /= nrm;
  }
  return x;
}

}  // namespace condest
