#include "ssmud/joint_law.hpp"

namespace ssmud {

JointGainLaw::JointGainLaw(const SystemConfig& config, const numerics::QuadratureSettings& settings)
    : config_(config), outer_(settings), inner_(settings) {
  config_.validate();
  outer_.validate();
  inner_.absTol *= 0.1;
  inner_.relTol *= 0.1;
  double x = 1.0;
  while (selected(x).pdf > 0.0 && x < 1e12) x *= 2.0;
  selectedEnd_ = x;
}

double JointGainLaw::cross_mean() const { return max_gain_mean(config_.crossFading, config_.L); }

}  // namespace ssmud
