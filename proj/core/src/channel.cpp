#include "ssmud/channel.hpp"

#include <cmath>
#include <sstream>

#include "ssmud/error.hpp"
#include "ssmud/quadrature.hpp"
#include "ssmud/specfun.hpp"

namespace ssmud {

FadingSpec FadingSpec::nakagami(double m) {
  if (!(m >= 0.5) || !std::isfinite(m)) {
    throw DomainError("Nakagami shape must satisfy m >= 0.5, got " + std::to_string(m));
  }
  return FadingSpec{FadingFamily::Nakagami, m};
}

FadingSpec FadingSpec::from_shape(double m) { return m == 1.0 ? rayleigh() : nakagami(m); }

std::string to_string(const FadingSpec& spec) {
  std::ostringstream os;
  os << (spec.family() == FadingFamily::Rayleigh ? "Rayleigh" : "Nakagami") << "(m=" << spec.m() << ")";
  return os.str();
}

void SystemConfig::validate() const {
  if (K < 1) throw DomainError("SystemConfig: K must be >= 1");
  if (L < 1) throw DomainError("SystemConfig: L must be >= 1");
  if (!(noiseVar > 0.0) || !std::isfinite(noiseVar)) {
    throw DomainError("SystemConfig: noiseVar must be positive and finite");
  }
}

namespace {

double gain_pdf(double m, double x) {
  if (m == 1.0) return std::exp(-x);
  if (x == 0.0) return m < 1.0 ? HUGE_VAL : 0.0;
  return std::exp(m * std::log(m) + (m - 1.0) * std::log(x) - m * x - specfun::ln_gamma(m));
}

double gain_cdf(double m, double x) {
  if (m == 1.0) return -std::expm1(-x);
  if (m == 2.0) {
    // P(2, 2x) = 1 - e^{-2x}(1 + 2x); series keeps relative accuracy near 0.
    if (x > 0.25) return 1.0 - std::exp(-2.0 * x) * (1.0 + 2.0 * x);
  }
  return specfun::reg_inc_gamma(m, m * x).P;
}

}  // namespace

DensityValue gain_density(const FadingSpec& spec, double x) {
  if (!(x >= 0.0)) throw DomainError("gain_density: x must be non-negative, got " + std::to_string(x));
  if (std::isinf(x)) return {0.0, 1.0};
  return {gain_pdf(spec.m(), x), gain_cdf(spec.m(), x)};
}

DensityValue max_gain_density(const FadingSpec& spec, int count, double x) {
  if (count < 1) throw DomainError("max_gain_density: count must be >= 1");
  const DensityValue one = gain_density(spec, x);
  if (count == 1) return one;
  const double head = std::pow(one.cdf, count - 1);
  return {count * head * one.pdf, head * one.cdf};
}

double max_gain_mean(const FadingSpec& spec, int count) {
  if (count == 1) return 1.0;
  // E[max] = ∫ (1 - F^count) dx
  numerics::QuadratureSettings tight;
  tight.absTol = 1e-13;
  tight.relTol = 1e-12;
  return numerics::integrate_semi_infinite(
             [&](double x) { return 1.0 - max_gain_density(spec, count, x).cdf; }, 0.0, tight)
      .value;
}

double draw_gain(const FadingSpec& spec, Rng& rng) {
  if (spec.m() == 1.0) return -std::log(rng.uniform());
  return rng.gamma(spec.m()) / spec.m();
}

std::vector<double> sample_gains(const FadingSpec& spec, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw DomainError("sample_gains: count must be >= 1");
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& g : out) g = draw_gain(spec, rng);
  return out;
}

}  // namespace ssmud
