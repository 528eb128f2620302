#include "ssmud/policy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ssmud/error.hpp"
#include "ssmud/joint_law.hpp"

namespace ssmud {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void DualPair::validate() const {
  if (!(lambda >= 0.0) || !(mu >= 0.0)) throw DomainError("DualPair: multipliers must be >= 0");
}

void ConstraintSet::validate() const {
  if (!(pAv > 0.0)) throw DomainError("ConstraintSet: pAv must be positive");
  if (!(interference > 0.0)) throw DomainError("ConstraintSet: interference level must be positive");
}

double db_to_linear(double dB) { return std::pow(10.0, dB / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

const char* to_string(PolicyKind kind) { return kind == PolicyKind::Aip ? "AIP" : "PIP"; }

double transmit_power_aip(const DualPair& duals, double gS, double gSp, double noiseVar) {
  if (!(gS >= 0.0) || !(gSp >= 0.0)) throw DomainError("transmit_power_aip: gains must be >= 0");
  const double price = duals.mu + duals.lambda * gSp;
  if (!(price > 0.0)) throw DomainError("transmit_power_aip: mu + lambda * gSp must be positive");
  if (gS == 0.0) return 0.0;
  return std::max(0.0, 1.0 / price - noiseVar / gS);
}

double transmit_power_pip(double mu, double iPk, double gS, double gSp, double noiseVar) {
  if (!(gS >= 0.0) || !(gSp >= 0.0)) throw DomainError("transmit_power_pip: gains must be >= 0");
  if (mu == 0.0 && gSp == 0.0) throw DomainError("transmit_power_pip: mu == 0 with gSp == 0 is unbounded");
  if (gS == 0.0) return 0.0;
  const double cap = gSp == 0.0 ? kInf : iPk / gSp;
  const double water = mu == 0.0 ? kInf : std::max(0.0, 1.0 / mu - noiseVar / gS);
  return std::min(water, cap);
}

double transmit_power(const Policy& policy, double gS, double gSp, double noiseVar) {
  if (policy.kind == PolicyKind::Aip) return transmit_power_aip(policy.duals, gS, gSp, noiseVar);
  return transmit_power_pip(policy.duals.mu, policy.peakInterference, gS, gSp, noiseVar);
}

PolicyExpectations constraint_expectations(const DualPair& duals, const SystemConfig& config,
                                           const numerics::QuadratureSettings& settings) {
  duals.validate();
  if (duals.lambda == 0.0 && duals.mu == 0.0) {
    throw DomainError("constraint_expectations: both multipliers are zero (unbounded power)");
  }
  const JointGainLaw law(config, settings);
  const double n = config.noiseVar;

  // A(y) = ∫_{x0}^∞ (1/price - n/x) f_sel(x) dx with x0 = n * price.
  auto power_given_cross = [&](double y) {
    const double price = duals.mu + duals.lambda * y;
    const double x0 = n * price;
    return law.inner([&](double x) { return n * (x - x0) / (x * x0); }, x0);
  };

  if (duals.lambda == 0.0) {
    const double a = power_given_cross(0.0);
    return {a, a * law.cross_mean()};
  }
  const bool pDiverges = duals.mu == 0.0 && !law.inverse_cross_moment_finite();
  const auto moments = law.outer<2>([&](double y) {
    const double a = power_given_cross(y);
    return std::array<double, 2>{pDiverges ? 0.0 : a, y * a};
  });
  return {pDiverges ? kInf : moments[0], moments[1]};
}

PolicyExpectations pip_expectations(double mu, double iPk, const SystemConfig& config,
                                    const numerics::QuadratureSettings& settings) {
  if (!(mu >= 0.0)) throw DomainError("pip_expectations: mu must be >= 0");
  if (!(iPk > 0.0)) throw DomainError("pip_expectations: iPk must be positive");
  const JointGainLaw law(config, settings);
  const double n = config.noiseVar;

  if (mu == 0.0) {
    // Cap-only policy: P_t = iPk / y, so E[y P_t] = iPk.
    if (!law.inverse_cross_moment_finite()) return {kInf, iPk};
    const auto m = law.outer<1>([&](double y) { return std::array<double, 1>{iPk / y}; });
    return {m[0], iPk};
  }

  const double water = 1.0 / mu;
  const double x0 = n * mu;
  auto water_fill = [&](double x) { return n * (x - x0) / (x * x0); };
  const double uncapped = law.inner(water_fill, x0);
  // For y <= iPk * mu the cap never binds; beyond it, it binds for x > x1.
  const double yKink = iPk * mu;
  const auto moments = law.outer<2>(
      [&](double y) {
        double a = uncapped;
        if (y > yKink) {
          const double cap = iPk / y;
          const double x1 = n / (water - cap);
          // x1 -> inf as y -> yKink; past the support end nothing is left.
          const double xEnd = std::min(x1, law.selected_support_end());
          a = (xEnd > x0 ? law.inner(water_fill, x0, xEnd) : 0.0) + cap * (1.0 - law.selected(x1).cdf);
        }
        return std::array<double, 2>{a, y * a};
      },
      yKink);
  return {moments[0], moments[1]};
}

PolicyExpectations expectations(const Policy& policy, const SystemConfig& config,
                                const numerics::QuadratureSettings& settings) {
  if (policy.kind == PolicyKind::Aip) return constraint_expectations(policy.duals, config, settings);
  return pip_expectations(policy.duals.mu, policy.peakInterference, config, settings);
}

}  // namespace ssmud
