#include "ssmud/solver.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "ssmud/error.hpp"

namespace ssmud {

namespace {

constexpr int kMaxDoublings = 40;

struct MuSearch {
  double mu = 0.0;
  std::optional<double> infeasibleMu;  // largest mu known to violate the budget
  PolicyExpectations at;               // expectations at mu
  int evaluations = 0;
};

// Smallest mu >= 0 with eP(mu) <= pAv, for eP continuous and nonincreasing.
// `below` is a mu known to be infeasible, `above` one known to be feasible.
// Returns the feasible end of the final bracket, which stops once the
// budget residual is within innerTol, the bracket reaches double resolution,
// or a feasible mu is negligible against innerTol.
template <class Eval>
MuSearch minimal_mu(Eval&& eval, double pAv, double innerTol, std::optional<double> below,
                    std::optional<double> above, bool zeroAllowed) {
  MuSearch s;
  if (!below) {
    if (zeroAllowed) {
      const PolicyExpectations e0 = eval(0.0);
      ++s.evaluations;
      if (e0.eP <= pAv) {
        s.mu = 0.0;
        s.at = e0;
        return s;
      }
    }
    below = 0.0;
  }
  double lo = *below;
  double hi;
  PolicyExpectations eHi;
  if (above && *above > lo) {
    hi = *above;
    eHi = eval(hi);
    ++s.evaluations;
  } else {
    hi = std::max(1.0, 2.0 * lo);
    int doublings = 0;
    for (;;) {
      eHi = eval(hi);
      ++s.evaluations;
      if (eHi.eP <= pAv) break;
      if (++doublings > kMaxDoublings) {
        throw ConvergenceError("solver: could not find a feasible mu below " + std::to_string(hi));
      }
      lo = hi;
      hi *= 2.0;
    }
  }
  // eP is steep in mu when mu is small, so the bracket needs relative
  // resolution. A feasible mu far below innerTol is as good as zero; when
  // E[1/y] diverges the exact minimum can lie below the double range.
  const double negligible = 1e-3 * innerTol;
  while (pAv - eHi.eP > innerTol && hi > negligible && hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const PolicyExpectations e = eval(mid);
    ++s.evaluations;
    if (e.eP > pAv) {
      lo = mid;
    } else {
      hi = mid;
      eHi = e;
    }
  }
  s.mu = hi;
  s.infeasibleMu = lo;
  s.at = eHi;
  return s;
}

struct LambdaSide {
  double lambda = 0.0;
  std::optional<MuSearch> search;
};

SolveReport make_report(const DualPair& duals, const PolicyExpectations& e, double pAv, double iLevel) {
  SolveReport r;
  r.duals = duals;
  r.eP = e.eP;
  r.eI = e.eI;
  r.residualP = e.eP - pAv;
  r.residualI = e.eI - iLevel;
  if (duals.lambda > 0.0) {
    r.bindingSet = duals.mu > 0.0 ? BindingSet::Both : BindingSet::AipOnly;
  } else {
    r.bindingSet = BindingSet::AtpOnly;
  }
  return r;
}

}  // namespace

numerics::QuadratureSettings default_solver_quadrature() {
  numerics::QuadratureSettings q;
  q.absTol = 1e-12;
  q.relTol = 1e-10;
  q.maxDepth = 60;
  return q;
}

void SolverSettings::validate() const {
  if (!(epsilon > 0.0)) throw DomainError("SolverSettings: epsilon must be positive");
  if (!(innerTol > 0.0)) throw DomainError("SolverSettings: innerTol must be positive");
  if (maxOuterIter < 1) throw DomainError("SolverSettings: maxOuterIter must be >= 1");
  if (!(lambdaBarHint >= 0.0)) throw DomainError("SolverSettings: lambdaBarHint must be >= 0");
  quadrature.validate();
}

const char* to_string(BindingSet set) {
  switch (set) {
    case BindingSet::AipOnly:
      return "AipOnly";
    case BindingSet::AtpOnly:
      return "AtpOnly";
    case BindingSet::Both:
      return "Both";
  }
  return "?";
}

double bracket_lambda(const SystemConfig& config, const ConstraintSet& constraints,
                      const SolverSettings& settings) {
  config.validate();
  constraints.validate();
  settings.validate();
  const double iAv = constraints.interference;
  double lambdaBar = 1.0 / iAv;
  for (int i = 0; i <= kMaxDoublings; ++i) {
    // eI(lambda, mu(lambda)) <= eI(lambda, 0) because eI is nonincreasing in mu.
    const auto e = constraint_expectations({lambdaBar, 0.0}, config, settings.quadrature);
    if (e.eI < iAv) return lambdaBar;
    lambdaBar *= 2.0;
  }
  throw ConvergenceError("bracket_lambda: no lambda up to 2^40/I_av satisfies the interference budget");
}

SolveReport solve_duals_aip(const SystemConfig& config, const ConstraintSet& constraints,
                            const SolverSettings& settings) {
  config.validate();
  constraints.validate();
  settings.validate();
  if (constraints.interferenceMode != InterferenceMode::Average) {
    throw DomainError("solve_duals_aip: constraints must use the average interference mode");
  }
  const double pAv = constraints.pAv;
  const double iAv = constraints.interference;
  int innerIters = 0;

  auto search_at = [&](double lambda, std::optional<double> below, std::optional<double> above) {
    auto eval = [&](double mu) {
      return constraint_expectations({lambda, mu}, config, settings.quadrature);
    };
    MuSearch s = minimal_mu(eval, pAv, settings.innerTol, below, above, lambda > 0.0);
    innerIters += s.evaluations;
    return s;
  };

  LambdaSide lo{0.0, search_at(0.0, std::nullopt, std::nullopt)};
  if (lo.search->at.eI <= iAv) {
    SolveReport r = make_report({0.0, lo.search->mu}, lo.search->at, pAv, iAv);
    r.innerIters = innerIters;
    return r;
  }

  const double lambdaBar =
      settings.lambdaBarHint > 0.0 ? settings.lambdaBarHint : bracket_lambda(config, constraints, settings);
  LambdaSide hi{lambdaBar, std::nullopt};

  int outer = 0;
  while (hi.lambda - lo.lambda > settings.epsilon && outer < settings.maxOuterIter) {
    const double lambda = 0.5 * (lo.lambda + hi.lambda);
    if (lambda <= lo.lambda || lambda >= hi.lambda) break;
    ++outer;
    // mu(lambda) is nonincreasing: infeasible at hi stays infeasible here,
    // feasible at lo stays feasible here.
    const std::optional<double> below = hi.search ? hi.search->infeasibleMu : std::nullopt;
    MuSearch s = search_at(lambda, below, lo.search->mu);
    if (s.at.eI > iAv) {
      lo = {lambda, s};
    } else {
      hi = {lambda, s};
    }
  }
  if (!hi.search) {
    hi.search = search_at(hi.lambda, std::nullopt, lo.search->mu);
  }
  SolveReport r = make_report({hi.lambda, hi.search->mu}, hi.search->at, pAv, iAv);
  r.outerIters = outer;
  r.innerIters = innerIters;
  r.lambdaBar = lambdaBar;
  return r;
}

SolveReport solve_mu_pip(const SystemConfig& config, const ConstraintSet& constraints,
                         const SolverSettings& settings) {
  config.validate();
  constraints.validate();
  settings.validate();
  if (constraints.interferenceMode != InterferenceMode::Peak) {
    throw DomainError("solve_mu_pip: constraints must use the peak interference mode");
  }
  const double iPk = constraints.interference;
  auto eval = [&](double mu) { return pip_expectations(mu, iPk, config, settings.quadrature); };
  const MuSearch s = minimal_mu(eval, constraints.pAv, settings.innerTol, std::nullopt, std::nullopt, true);
  SolveReport r = make_report({0.0, s.mu}, s.at, constraints.pAv, iPk);
  // lambda is unused here: report which constraints shape the policy.
  r.bindingSet = s.mu > 0.0 ? BindingSet::Both : BindingSet::AipOnly;
  r.innerIters = s.evaluations;
  return r;
}

SolveReport solve(const SystemConfig& config, const ConstraintSet& constraints, const SolverSettings& settings) {
  if (constraints.interferenceMode == InterferenceMode::Average) {
    return solve_duals_aip(config, constraints, settings);
  }
  return solve_mu_pip(config, constraints, settings);
}

}  // namespace ssmud
