#include "ssmud/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "ssmud/cli/csv.hpp"
#include "ssmud/error.hpp"
#include "ssmud/montecarlo.hpp"

namespace ssmud::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

RunConfig scenario_config(const RunConfig& base, SweepAxis axis, double axisDb, const Scenario& sc) {
  RunConfig c = base;
  c.system.K = sc.K;
  c.system.L = sc.L;
  c.system.secondaryFading = c.system.crossFading = FadingSpec::from_shape(sc.m);
  c.policy = sc.policy;
  if (axis == SweepAxis::IavDb) {
    c.iAv = c.iPk = db_to_linear(axisDb);
  } else {
    c.pAv = db_to_linear(axisDb);
  }
  return c;
}

Policy policy_from(const RunConfig& c, const SolveReport& r) {
  return c.policy == PolicyKind::Aip ? Policy::aip(r.duals) : Policy::pip(r.duals.mu, c.iPk);
}

}  // namespace

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {"axis_name", "axis_dB", "K",       "L",
                                                "m",         "policy",  "lambda",  "mu",
                                                "capacity_bps_hz", "outage", "eP", "eI", "formulation"};
  return cols;
}

SweepOutcome run_sweep(const RunConfig& config) {
  if (!config.sweep) throw DomainError("sweep: the config has no sweep section (axis, from_db, to_db, step_db, scenarios)");
  const SweepSpec& spec = *config.sweep;
  const auto axis = spec.axis_values();
  SweepOutcome out;
  for (double a : axis) {
    for (const auto& sc : spec.scenarios) out.rows.push_back({a, sc, std::nullopt, std::nullopt, {}});
  }
  parallel_for(out.rows.size(), config.sim.threads, [&](std::size_t i) {
    SweepRow& row = out.rows[i];
    try {
      const RunConfig c = scenario_config(config, spec.axis, row.axisDb, row.scenario);
      const SolveReport rep = solve(c.system, c.constraints(), c.solver);
      row.metrics = evaluate_metrics(c.system, policy_from(c, rep), c.formulation, c.metrics_options());
      row.solve = rep;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  out.failures = static_cast<int>(std::count_if(out.rows.begin(), out.rows.end(),
                                                [](const SweepRow& r) { return !r.error.empty(); }));
  return out;
}

void write_sweep_csv(const SweepOutcome& outcome, SweepAxis axis, Formulation formulation, std::ostream& out) {
  std::vector<std::string> header = sweep_columns();
  const bool withError = outcome.failures > 0;
  if (withError) header.push_back("error");
  write_csv_row(out, header);
  for (const auto& row : outcome.rows) {
    std::vector<std::string> f = {to_string(axis),
                                  format_fixed(row.axisDb),
                                  std::to_string(row.scenario.K),
                                  std::to_string(row.scenario.L),
                                  format_fixed(row.scenario.m),
                                  to_string(row.scenario.policy)};
    if (row.error.empty()) {
      const auto& s = *row.solve;
      const auto& m = *row.metrics;
      for (double v : {s.duals.lambda, s.duals.mu, m.capacity, m.outage, s.eP, s.eI}) f.push_back(format_fixed(v));
    } else {
      f.insert(f.end(), 6, std::string{});
    }
    f.push_back(to_string(formulation));
    if (withError) f.push_back(row.error);
    write_csv_row(out, f);
  }
}

void write_solve_report(const RunConfig& config, const SolveReport& r, std::ostream& out) {
  out << "policy=" << to_string(config.policy) << '\n'
      << "lambda=" << num(r.duals.lambda) << '\n'
      << "mu=" << num(r.duals.mu) << '\n'
      << "eP=" << num(r.eP) << '\n'
      << "eI=" << num(r.eI) << '\n'
      << "residualP=" << num(r.residualP) << '\n'
      << "residualI=" << num(r.residualI) << '\n'
      << "outer_iters=" << r.outerIters << '\n'
      << "inner_iters=" << r.innerIters << '\n'
      << "lambda_bar=" << num(r.lambdaBar) << '\n'
      << "binding_set=" << to_string(r.bindingSet) << '\n';
}

void run_metrics(const RunConfig& config, bool simulate, std::ostream& out) {
  const SolveReport rep = solve(config.system, config.constraints(), config.solver);
  const Policy policy = policy_from(config, rep);
  const MetricsResult m = evaluate_metrics(config.system, policy, config.formulation, config.metrics_options());
  write_solve_report(config, rep, out);
  out << "formulation=" << to_string(m.formulation) << '\n'
      << "capacity_bps_hz=" << num(m.capacity) << '\n'
      << "outage=" << num(m.outage) << '\n';
  if (!simulate) return;
  const mc::SimMetrics s = mc::simulate_metrics(config.system, policy, config.sim);
  out << "mc_mode=" << mc::to_string(config.sim.mode) << '\n'
      << "mc_samples=" << config.sim.samples << '\n';
  const std::pair<const char*, const mc::SimResult*> fields[] = {
      {"capacity_bps_hz", &s.capacity}, {"outage", &s.outage}, {"eP", &s.eP}, {"eI", &s.eI}};
  for (const auto& [name, r] : fields) {
    out << "mc_" << name << '=' << num(r->mean) << '\n' << "mc_" << name << "_se=" << num(r->stdError) << '\n';
  }
}

void write_distribution(const RunConfig& config, std::ostream& out) {
  if (config.system.secondaryFading != config.system.crossFading) {
    throw DomainError("dist: the ratio law needs equal m on both links");
  }
  const ratio::RatioDistribution law({config.system.secondaryFading.m(), config.system.L, config.ratioMode});
  const ratio::MudParams mud{config.system.K};
  write_csv_row(out, {"z", "pdf", "cdf", "mud_pdf", "mud_cdf"});
  const int n = config.dist.points;
  for (int i = 0; i < n; ++i) {
    const double z = config.dist.zMax * i / (n - 1);
    const double f = law.pdf(z);
    const double F = law.cdf(z);
    const DensityValue best = ratio::mud_transform(f, F, mud);
    write_csv_row(out, {format_fixed(z), format_fixed(f), format_fixed(F), format_fixed(best.pdf),
                        format_fixed(best.cdf)});
  }
}

const char* to_string(Check::Status status) {
  switch (status) {
    case Check::Status::Pass:
      return "PASS";
    case Check::Status::Fail:
      return "FAIL";
    case Check::Status::Info:
      return "INFO";
  }
  return "?";
}

std::string format_check(const Check& c) {
  char buf[64];
  std::string line = std::string(to_string(c.status)) + ' ' + c.name;
  std::snprintf(buf, sizeof buf, " measured=%.6e", c.measured);
  line += buf;
  std::snprintf(buf, sizeof buf, " bound=%.6e", c.bound);
  line += buf;
  return line;
}

}  // namespace ssmud::cli
