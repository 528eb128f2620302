#pragma once

#include "ssmud/channel.hpp"
#include "ssmud/policy.hpp"
#include "ssmud/quadrature.hpp"

namespace ssmud {

// Tighter than the library default: the solver differences expectations.
numerics::QuadratureSettings default_solver_quadrature();

struct SolverSettings {
  double epsilon = 1e-9;       // outer bracket width on lambda
  double innerTol = 1e-7;      // constraint residual target, power units
  int maxOuterIter = 200;
  double lambdaBarHint = 0.0;  // 0 = bracket automatically
  numerics::QuadratureSettings quadrature = default_solver_quadrature();

  void validate() const;
};

enum class BindingSet { AipOnly, AtpOnly, Both };

const char* to_string(BindingSet set);

struct SolveReport {
  DualPair duals;
  double eP = 0.0;
  double eI = 0.0;
  double residualP = 0.0;  // eP - pAv
  double residualI = 0.0;  // eI - I_av (AIP) or eI - I_pk (PIP, informational)
  int outerIters = 0;
  int innerIters = 0;
  double lambdaBar = 0.0;
  BindingSet bindingSet = BindingSet::AtpOnly;

  bool operator==(const SolveReport&) const = default;
};

// Joint (lambda, mu) for the AIP policy: outer bisection on lambda in
// [0, lambdaBar], inner search for the smallest mu >= 0 meeting the power
// budget, outer test on the interference expectation.
SolveReport solve_duals_aip(const SystemConfig& config, const ConstraintSet& constraints,
                            const SolverSettings& settings = {});

// Single multiplier for the peak-interference baseline: smallest mu >= 0
// with E[P_t] <= pAv. lambda is reported as 0.
SolveReport solve_mu_pip(const SystemConfig& config, const ConstraintSet& constraints,
                         const SolverSettings& settings = {});

SolveReport solve(const SystemConfig& config, const ConstraintSet& constraints,
                  const SolverSettings& settings = {});

// Upper end of the lambda bracket: doubles from 1/I_av until the
// interference expectation drops below I_av (at most 40 doublings).
double bracket_lambda(const SystemConfig& config, const ConstraintSet& constraints,
                      const SolverSettings& settings = {});

}  // namespace ssmud
