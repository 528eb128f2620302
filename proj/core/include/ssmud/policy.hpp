#pragma once

#include "ssmud/channel.hpp"
#include "ssmud/quadrature.hpp"

namespace ssmud {

// Lagrange multipliers: lambda prices the average-interference constraint,
// mu the average-transmit-power constraint. Both in 1/power units.
struct DualPair {
  double lambda = 0.0;
  double mu = 0.0;

  void validate() const;
  bool operator==(const DualPair&) const = default;
};

enum class InterferenceMode { Average, Peak };

struct ConstraintSet {
  double pAv = 1.0;           // linear
  double interference = 1.0;  // linear; I_av or I_pk depending on the mode
  InterferenceMode interferenceMode = InterferenceMode::Average;

  void validate() const;
};

double db_to_linear(double dB);
double linear_to_db(double linear);

enum class PolicyKind { Aip, Pip };

const char* to_string(PolicyKind kind);

// A concrete power policy: AIP uses both duals; PIP uses duals.mu plus the
// peak interference cap.
struct Policy {
  PolicyKind kind = PolicyKind::Aip;
  DualPair duals;
  double peakInterference = 0.0;

  static Policy aip(DualPair duals) { return {PolicyKind::Aip, duals, 0.0}; }
  static Policy pip(double mu, double iPk) { return {PolicyKind::Pip, {0.0, mu}, iPk}; }
};

// [1/(mu + lambda gSp) - noiseVar/gS]^+, zero when gS == 0.
double transmit_power_aip(const DualPair& duals, double gS, double gSp, double noiseVar);

// min{[1/mu - noiseVar/gS]^+, iPk/gSp}; mu == 0 leaves only the cap.
double transmit_power_pip(double mu, double iPk, double gS, double gSp, double noiseVar);

double transmit_power(const Policy& policy, double gS, double gSp, double noiseVar);

struct PolicyExpectations {
  double eP = 0.0;  // E[P_t]
  double eI = 0.0;  // E[g_sp P_t]
};

// Expectations of the AIP policy over the joint law of the selected
// secondary gain (best of K) and the largest cross gain (worst of L PU-Rx).
// eP is +inf when mu == 0 and E[1/g_sp] diverges (m_sp * L <= 1).
PolicyExpectations constraint_expectations(const DualPair& duals, const SystemConfig& config,
                                           const numerics::QuadratureSettings& settings = {});

PolicyExpectations pip_expectations(double mu, double iPk, const SystemConfig& config,
                                    const numerics::QuadratureSettings& settings = {});

PolicyExpectations expectations(const Policy& policy, const SystemConfig& config,
                                const numerics::QuadratureSettings& settings = {});

}  // namespace ssmud
