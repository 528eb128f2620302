#pragma once

#include "ssmud/channel.hpp"
#include "ssmud/policy.hpp"
#include "ssmud/quadrature.hpp"
#include "ssmud/ratio.hpp"

namespace ssmud {

// Joint2D integrates over the joint law of (best secondary gain, largest
// cross gain). Ratio1D uses the best-of-K law of z = g_s / g_sp with i.i.d.
// ratios; it only applies to AIP with a slack power constraint (mu ~ 0).
enum class Formulation { Joint2D, Ratio1D };

const char* to_string(Formulation f);

struct MetricsOptions {
  numerics::QuadratureSettings quadrature{};
  ratio::RatioMode ratioMode = ratio::RatioMode::PaperClosedForm;
  double muTolerance = 1e-7;  // largest mu accepted by Ratio1D
};

struct MetricsResult {
  double capacity = 0.0;  // bits/s/Hz
  double outage = 0.0;    // Pr{P_t = 0}
  Formulation formulation = Formulation::Joint2D;
  DualPair duals;
};

double ergodic_capacity(const SystemConfig& config, const Policy& policy, Formulation formulation,
                        const MetricsOptions& options = {});

double outage_probability(const SystemConfig& config, const Policy& policy, Formulation formulation,
                          const MetricsOptions& options = {});

MetricsResult evaluate_metrics(const SystemConfig& config, const Policy& policy, Formulation formulation,
                               const MetricsOptions& options = {});

// Pr{x / y <= z} for x the best of K secondary gains and y the largest of
// L cross gains, all drawn independently (one shared y for the K users).
double selected_ratio_cdf(const SystemConfig& config, double z,
                          const numerics::QuadratureSettings& settings = {});

}  // namespace ssmud
