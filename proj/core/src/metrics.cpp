#include "ssmud/metrics.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <string>

#include "ssmud/error.hpp"
#include "ssmud/joint_law.hpp"

namespace ssmud {

namespace {

double log2_ratio(double x, double threshold) { return std::log2(x / threshold); }

ratio::RatioDistribution ratio_law(const SystemConfig& config, const Policy& policy,
                                   const MetricsOptions& options) {
  if (policy.kind != PolicyKind::Aip) throw DomainError("Ratio1D: only the AIP policy has a ratio form");
  if (policy.duals.mu > options.muTolerance) {
    throw DomainError("Ratio1D: requires mu <= " + std::to_string(options.muTolerance) +
                      ", got mu=" + std::to_string(policy.duals.mu));
  }
  if (!(policy.duals.lambda > 0.0)) throw DomainError("Ratio1D: requires lambda > 0");
  if (config.secondaryFading.m() != config.crossFading.m()) {
    throw DomainError("Ratio1D: secondary and cross links must share the fading parameter m");
  }
  return ratio::RatioDistribution({config.secondaryFading.m(), config.L, options.ratioMode},
                                  options.quadrature);
}

double aip_capacity_joint(const SystemConfig& config, const DualPair& duals,
                          const numerics::QuadratureSettings& settings) {
  duals.validate();
  if (duals.lambda == 0.0 && duals.mu == 0.0) {
    throw DomainError("ergodic_capacity: both multipliers are zero (unbounded power)");
  }
  const JointGainLaw law(config, settings);
  const double n = config.noiseVar;
  // Given y, transmission happens for x > x0 = n * price and the rate is log2(x / x0).
  auto rate_given_cross = [&](double y) {
    const double x0 = n * (duals.mu + duals.lambda * y);
    return law.inner([&](double x) { return log2_ratio(x, x0); }, x0);
  };
  if (duals.lambda == 0.0) return rate_given_cross(0.0);
  return law.outer<1>([&](double y) { return std::array<double, 1>{rate_given_cross(y)}; })[0];
}

double pip_capacity_joint(const SystemConfig& config, double mu, double iPk,
                          const numerics::QuadratureSettings& settings) {
  if (!(mu >= 0.0)) throw DomainError("ergodic_capacity: mu must be >= 0");
  if (!(iPk > 0.0)) throw DomainError("ergodic_capacity: iPk must be positive");
  const JointGainLaw law(config, settings);
  const double n = config.noiseVar;
  auto capped_rate = [&](double cap) {
    return [cap, n](double x) { return std::log2(1.0 + cap * x / n); };
  };
  if (mu == 0.0) {
    return law.outer<1>([&](double y) {
      return std::array<double, 1>{law.inner(capped_rate(iPk / y), 0.0)};
    })[0];
  }
  const double x0 = n * mu;
  auto water_rate = [&](double x) { return log2_ratio(x, x0); };
  const double uncapped = law.inner(water_rate, x0);
  const double yKink = iPk * mu;
  return law.outer<1>(
      [&](double y) {
        if (y <= yKink) return std::array<double, 1>{uncapped};
        const double cap = iPk / y;
        const double x1 = n / (1.0 / mu - cap);
        const double xEnd = std::min(x1, law.selected_support_end());
        double rate = xEnd > x0 ? law.inner(water_rate, x0, xEnd) : 0.0;
        if (x1 < law.selected_support_end()) rate += law.inner(capped_rate(cap), x1);
        return std::array<double, 1>{rate};
      },
      yKink)[0];
}

double aip_outage_joint(const SystemConfig& config, const DualPair& duals,
                        const numerics::QuadratureSettings& settings) {
  duals.validate();
  const JointGainLaw law(config, settings);
  const double n = config.noiseVar;
  if (duals.lambda == 0.0) return law.selected(n * duals.mu).cdf;
  return law.outer<1>([&](double y) {
    return std::array<double, 1>{law.selected(n * (duals.mu + duals.lambda * y)).cdf};
  })[0];
}

}  // namespace

const char* to_string(Formulation f) { return f == Formulation::Joint2D ? "Joint2D" : "Ratio1D"; }

double ergodic_capacity(const SystemConfig& config, const Policy& policy, Formulation formulation,
                        const MetricsOptions& options) {
  config.validate();
  if (formulation == Formulation::Joint2D) {
    if (policy.kind == PolicyKind::Aip) return aip_capacity_joint(config, policy.duals, options.quadrature);
    return pip_capacity_joint(config, policy.duals.mu, policy.peakInterference, options.quadrature);
  }
  const auto law = ratio_law(config, policy, options);
  const ratio::MudParams mud{config.K};
  const double threshold = policy.duals.lambda * config.noiseVar;
  auto integrand = [&](double z) {
    const double f = ratio::mud_transform(law, mud, z).pdf;
    return f == 0.0 ? 0.0 : log2_ratio(z, threshold) * f;
  };
  return numerics::integrate_semi_infinite(integrand, threshold, options.quadrature, threshold).value;
}

double outage_probability(const SystemConfig& config, const Policy& policy, Formulation formulation,
                          const MetricsOptions& options) {
  config.validate();
  if (formulation == Formulation::Joint2D) {
    if (policy.kind == PolicyKind::Aip) return aip_outage_joint(config, policy.duals, options.quadrature);
    const JointGainLaw law(config, options.quadrature);
    // The cap never zeroes the power; only the water level does.
    return policy.duals.mu == 0.0 ? 0.0 : law.selected(config.noiseVar * policy.duals.mu).cdf;
  }
  const auto law = ratio_law(config, policy, options);
  return ratio::mud_transform(law, {config.K}, policy.duals.lambda * config.noiseVar).cdf;
}

MetricsResult evaluate_metrics(const SystemConfig& config, const Policy& policy, Formulation formulation,
                               const MetricsOptions& options) {
  MetricsResult r;
  r.formulation = formulation;
  r.duals = policy.duals;
  r.outage = outage_probability(config, policy, formulation, options);
  r.capacity = r.outage >= 1.0 ? 0.0 : ergodic_capacity(config, policy, formulation, options);
  r.capacity = std::max(0.0, r.capacity);
  r.outage = std::clamp(r.outage, 0.0, 1.0);
  return r;
}

double selected_ratio_cdf(const SystemConfig& config, double z, const numerics::QuadratureSettings& settings) {
  if (!(z >= 0.0)) throw DomainError("selected_ratio_cdf: z must be >= 0");
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return 1.0;
  const JointGainLaw law(config, settings);
  return law.outer<1>([&](double y) { return std::array<double, 1>{law.selected(z * y).cdf}; })[0];
}

}  // namespace ssmud
