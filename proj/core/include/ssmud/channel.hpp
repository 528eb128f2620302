#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ssmud/random.hpp"

namespace ssmud {

enum class FadingFamily { Rayleigh, Nakagami };

// Power-gain law of one link: Gamma(shape m, scale 1/m), so E[g] = 1.
// Rayleigh is the m = 1 member.
class FadingSpec {
 public:
  FadingSpec() = default;  // Rayleigh

  static FadingSpec rayleigh() { return FadingSpec{}; }
  // m >= 0.5; m == 1 still reports the Nakagami family.
  static FadingSpec nakagami(double m);
  // Rayleigh when m == 1, Nakagami otherwise.
  static FadingSpec from_shape(double m);

  FadingFamily family() const noexcept { return family_; }
  double m() const noexcept { return m_; }

  bool operator==(const FadingSpec&) const = default;

 private:
  FadingSpec(FadingFamily family, double m) : family_(family), m_(m) {}

  FadingFamily family_ = FadingFamily::Rayleigh;
  double m_ = 1.0;
};

std::string to_string(const FadingSpec& spec);

struct SystemConfig {
  int K = 1;              // secondary receivers
  int L = 1;              // primary receivers
  double noiseVar = 1.0;  // linear noise power at the secondary receivers
  FadingSpec secondaryFading;
  FadingSpec crossFading;

  void validate() const;
};

struct DensityValue {
  double pdf = 0.0;
  double cdf = 0.0;
};

// Density and distribution of a unit-mean Gamma(m, 1/m) power gain:
// pdf = m^m x^{m-1} e^{-mx} / Γ(m), cdf = P(m, mx). At x = 0 the pdf is
// +inf when m < 1.
DensityValue gain_density(const FadingSpec& spec, double x);

// Law of the largest of `count` i.i.d. gains: cdf = P(m, mx)^count and
// pdf = count * P(m, mx)^{count-1} * gain pdf.
DensityValue max_gain_density(const FadingSpec& spec, int count, double x);

// Mean of the largest of `count` i.i.d. gains.
double max_gain_mean(const FadingSpec& spec, int count);

// Draws one gain from the spec's law using the caller's generator.
double draw_gain(const FadingSpec& spec, Rng& rng);

// `count` gains from a fresh generator seeded with `seed`; bit-identical
// for identical arguments.
std::vector<double> sample_gains(const FadingSpec& spec, std::size_t count, std::uint64_t seed);

}  // namespace ssmud
