#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ssmud/cli/commands.hpp"
#include "ssmud/error.hpp"
#include "ssmud/montecarlo.hpp"
#include "ssmud/quadrature.hpp"
#include "ssmud/ratio.hpp"
#include "ssmud/solver.hpp"

namespace ssmud::cli {

namespace {

namespace cf = ratio::closed_form;

std::string tag(double m, int L) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "m=%g,L=%d", m, L);
  return buf;
}

class Suite {
 public:
  Suite(const ValidationOptions& options, std::ostream& out) : options_(options), out_(out) {}

  numerics::QuadratureSettings adjust(numerics::QuadratureSettings q) const {
    if (options_.absTol) q.absTol = *options_.absTol;
    return q;
  }

  void bound(const std::string& name, double measured, double limit) {
    // A non-finite measurement never passes.
    push({name, std::isfinite(measured) && measured <= limit ? Check::Status::Pass : Check::Status::Fail,
          measured, limit});
  }

  void info(const std::string& name, double measured, double reference) {
    push({name, Check::Status::Info, measured, reference});
  }

  // Runs body; a thrown error becomes a failed check under `name`.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      push({name + "[error:" + sanitize(e.what()) + "]", Check::Status::Fail, NAN, 0.0});
    }
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  static std::string sanitize(std::string s) {
    for (auto& c : s) {
      if (c == ' ' || c == '\n') c = '_';
    }
    return s;
  }

  void push(Check c) {
    out_ << format_check(c) << '\n' << std::flush;
    checks_.push_back(std::move(c));
  }

  const ValidationOptions& options_;
  std::ostream& out_;
  std::vector<Check> checks_;
};

std::vector<double> z_grid(double hi, int n) {
  std::vector<double> z;
  for (int i = 0; i < n; ++i) z.push_back(hi * i / (n - 1));
  return z;
}

}  // namespace

std::vector<Check> run_validation(const ValidationOptions& options, std::ostream& out) {
  Suite suite(options, out);
  const auto qClosed = suite.adjust({1e-12, 1e-10, 60, 4000});
  const auto qRatio = suite.adjust(ratio::default_ratio_quadrature());

  // Normalization.
  for (double m : {1.0, 2.0}) {
    for (int L : {1, 2, 4}) {
      if (m >= 2.0 && L >= 3) continue;
      const std::string name = "normalization.closed_form." + tag(m, L);
      suite.guarded(name, [&] {
        const ratio::RatioDistribution law({m, L, ratio::RatioMode::PaperClosedForm}, qRatio);
        const double total =
            numerics::integrate_semi_infinite([&](double z) { return law.pdf(z); }, 0.0, qClosed).value;
        suite.bound(name, std::abs(total - 1.0), 1e-6);
      });
    }
  }
  for (double m : {0.5, 2.0, 3.0}) {
    for (int L : {1, 4}) {
      const std::string name = "normalization.exact." + tag(m, L);
      suite.guarded(name, [&] {
        const ratio::RatioDistribution law({m, L, ratio::RatioMode::ExactQuadrature}, qRatio);
        const double total =
            numerics::integrate_semi_infinite([&](double z) { return law.pdf(z); }, 0.0, qClosed).value;
        suite.bound(name, std::abs(total - 1.0), 1e-8);
      });
    }
  }

  // Reduction identities over z in [0, 50].
  suite.guarded("reduction", [&] {
    double dNak = 0.0, dMulti = 0.0, dGeneral = 0.0;
    for (double z : z_grid(50.0, 501)) {
      const double base = cf::rayleigh_single_pdf(z);
      dNak = std::max(dNak, std::abs(cf::nakagami_single_pdf(1.0, z) - base));
      dMulti = std::max(dMulti, std::abs(cf::rayleigh_multi_pdf(1, z) - base));
      dGeneral = std::max(dGeneral, std::abs(cf::nakagami_multi_pdf(1.0, 1, z) - base));
    }
    suite.bound("reduction.nakagami_single.m=1", dNak, 1e-12);
    suite.bound("reduction.rayleigh_multi.L=1", dMulti, 1e-12);
    suite.bound("reduction.nakagami_multi.m=1,L=1", dGeneral, 1e-9);
  });

  // CDF identities.
  for (double m : {1.0, 2.0, 3.0}) {
    const std::string name = "cdf_identity.nakagami_single.m=" + std::to_string(static_cast<int>(m));
    suite.guarded(name, [&] {
      double worst = 0.0;
      for (int i = 1; i <= 20; ++i) {
        const double z = 0.25 * i * i / 4.0;
        const double q =
            numerics::integrate([&](double t) { return cf::nakagami_single_pdf(m, t); }, 0.0, z, qClosed).value;
        worst = std::max(worst, std::abs(cf::nakagami_single_cdf(m, z) - q));
      }
      suite.bound(name, worst, 1e-8);
    });
  }
  for (int L : {2, 3}) {
    const std::string name = "cdf_identity.nakagami2_multi.L=" + std::to_string(L);
    suite.guarded(name, [&] {
      double worst = 0.0;
      for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        const double q =
            numerics::integrate([&](double t) { return cf::nakagami_multi_pdf(2.0, L, t); }, 0.0, z, qClosed).value;
        worst = std::max(worst, std::abs(cf::nakagami2_multi_cdf(L, z) - q));
      }
      suite.bound(name, worst, 1e-6);
    });
  }
  suite.guarded("median", [&] {
    double worst = 0.0;
    for (double m : {0.5, 1.0, 2.0, 3.0, 4.5}) {
      worst = std::max(worst, std::abs(ratio::RatioDistribution({m, 1}, qRatio).cdf(1.0) - 0.5));
    }
    worst = std::max(worst,
                     std::abs(ratio::RatioDistribution({2.5, 1, ratio::RatioMode::ExactQuadrature}, qRatio).cdf(1.0) - 0.5));
    suite.bound("median.L=1", worst, 1e-9);
  });

  // Closed form against the exact joint law.
  for (auto [m, L] : {std::pair{1.0, 3}, std::pair{2.0, 2}, std::pair{3.0, 2}, std::pair{2.0, 3}, std::pair{3.0, 3}}) {
    const std::string name = "closed_vs_exact." + tag(m, L);
    suite.guarded(name, [&] {
      const ratio::RatioDistribution closed({m, L, ratio::RatioMode::PaperClosedForm}, qRatio);
      const ratio::RatioDistribution exact({m, L, ratio::RatioMode::ExactQuadrature}, qRatio);
      double worst = 0.0;
      for (double z : z_grid(50.0, 201)) worst = std::max(worst, std::abs(closed.pdf(z) - exact.pdf(z)));
      if (closed.closed_form_is_exact()) {
        suite.bound(name, worst, 1e-6);
      } else {
        suite.info(name + ".deviation", worst, 1e-6);
      }
    });
  }

  // Monte Carlo distribution checks.
  const mc::SimSpec iid{options.samples, options.seed, mc::SimMode::IidRatio, 8, options.threads};
  const mc::SimSpec physical{options.samples, options.seed + 1, mc::SimMode::Physical, 8, options.threads};
  const double ksLimit = 0.005;
  for (auto [m, L, K] : {std::tuple{1.0, 1, 1}, std::tuple{2.0, 2, 1}, std::tuple{1.0, 1, 5}, std::tuple{2.0, 2, 5}}) {
    const std::string name = "mc_ks.iid_ratio." + tag(m, L) + ",K=" + std::to_string(K);
    suite.guarded(name, [&] {
      const auto r = mc::validate_distribution({m, L}, {K}, iid);
      suite.bound(name, r.ksDistance, ksLimit);
    });
  }
  for (auto [m, L] : {std::pair{1.0, 2}, std::pair{2.0, 1}}) {
    const std::string name = "mc_ks.physical." + tag(m, L) + ",K=5";
    suite.guarded(name, [&] {
      const auto r = mc::validate_distribution({m, L}, {5}, physical);
      suite.bound(name, r.ksDistance, ksLimit);
    });
  }
  suite.guarded("mc_ks.modes_agree_at_K=1", [&] {
    const auto a = mc::sample_max_ratio({2.0, 2}, {1}, iid);
    const auto b = mc::sample_max_ratio({2.0, 2}, {1}, physical);
    suite.bound("mc_ks.modes_agree_at_K=1", mc::two_sample_ks(a, b), ksLimit);
  });

  // Solver KKT and metrics against Monte Carlo, 5 dB constraints.
  const double c5 = db_to_linear(5.0);
  SolverSettings solver;
  solver.quadrature = suite.adjust(solver.quadrature);
  MetricsOptions metricsOptions;
  metricsOptions.quadrature = suite.adjust(metricsOptions.quadrature);
  for (auto [m, L] : {std::pair{1.0, 2}, std::pair{2.0, 2}}) {
    const SystemConfig cfg{5, L, 1.0, FadingSpec::from_shape(m), FadingSpec::from_shape(m)};
    const std::string base = "solver." + tag(m, L) + ",K=5";
    suite.guarded(base, [&] {
      const SolveReport r = solve(cfg, {c5, c5, InterferenceMode::Average}, solver);
      suite.bound(base + ".residualP", r.residualP, solver.innerTol);
      suite.bound(base + ".residualI", r.residualI, solver.innerTol);
      if (r.duals.lambda > solver.epsilon) suite.bound(base + ".slackness_I", std::abs(r.residualI), 10 * solver.innerTol);
      if (r.duals.mu > solver.innerTol) suite.bound(base + ".slackness_P", std::abs(r.residualP), 10 * solver.innerTol);
      if (r.lambdaBar > 0.0) {
        suite.bound(base + ".outer_iterations", r.outerIters, std::ceil(std::log2(r.lambdaBar / solver.epsilon)));
      }
      const SolveReport again = solve(cfg, {c5, c5, InterferenceMode::Average}, solver);
      suite.bound(base + ".deterministic", again == r ? 0.0 : 1.0, 0.0);

      const Policy policy = Policy::aip(r.duals);
      const MetricsResult joint = evaluate_metrics(cfg, policy, Formulation::Joint2D, metricsOptions);
      const auto sim = mc::simulate_metrics(cfg, policy, physical);
      suite.bound("metrics.joint2d." + tag(m, L) + ",K=5.capacity_sigmas",
                  std::abs(joint.capacity - sim.capacity.mean) / sim.capacity.stdError, 3.0);
      suite.bound("metrics.joint2d." + tag(m, L) + ",K=5.outage_sigmas",
                  std::abs(joint.outage - sim.outage.mean) / sim.outage.stdError, 3.0);
    });
  }
  for (auto [m, L] : {std::pair{1.0, 1}, std::pair{1.0, 2}, std::pair{2.0, 2}}) {
    const SystemConfig cfg{5, L, 1.0, FadingSpec::from_shape(m), FadingSpec::from_shape(m)};
    const std::string base = "metrics.ratio1d." + tag(m, L) + ",K=5";
    suite.guarded(base, [&] {
      const Policy policy = Policy::aip({1.0, 0.0});
      const MetricsResult r = evaluate_metrics(cfg, policy, Formulation::Ratio1D, metricsOptions);
      const auto sim = mc::simulate_metrics(cfg, policy, iid);
      suite.bound(base + ".capacity_sigmas", std::abs(r.capacity - sim.capacity.mean) / sim.capacity.stdError, 3.0);
      suite.bound(base + ".outage_sigmas", std::abs(r.outage - sim.outage.mean) / sim.outage.stdError, 3.0);
      const MetricsResult joint = evaluate_metrics(cfg, policy, Formulation::Joint2D, metricsOptions);
      suite.info(base + ".joint2d_gap", joint.capacity - r.capacity, 0.0);
    });
  }
  return suite.take();
}

}  // namespace ssmud::cli
