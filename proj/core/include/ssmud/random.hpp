#pragma once

#include <cstdint>

namespace ssmud {

// SplitMix64 finalizer; also used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Stateless mix of (seed, stream index) into a 64-bit stream seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

// xoshiro256++ generator. State is caller-owned; there is no global RNG.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  // Uniform on (0, 1); never returns exactly 0 or 1.
  double uniform();
  // Standard normal via the Marsaglia polar method.
  double normal();
  // Gamma(shape, 1): inverse CDF for shape 1, Marsaglia-Tsang squeeze
  // rejection otherwise, with the U^{1/a} boost for shape < 1.
  double gamma(double shape);

 private:
  std::uint64_t s_[4];
  double spareNormal_ = 0.0;
  bool hasSpare_ = false;
};

}  // namespace ssmud
