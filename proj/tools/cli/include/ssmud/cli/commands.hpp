#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ssmud/cli/config.hpp"

namespace ssmud::cli {

// Column names of the sweep CSV, in order. An `error` column is appended
// only when at least one row failed.
const std::vector<std::string>& sweep_columns();

struct SweepRow {
  double axisDb = 0.0;
  Scenario scenario;
  std::optional<SolveReport> solve;
  std::optional<MetricsResult> metrics;
  std::string error;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;  // axis-major, scenarios in spec order
  int failures = 0;
};

// Solves and evaluates every (axis value, scenario) point. Points run on
// up to config.sim.threads workers; row order never depends on scheduling.
SweepOutcome run_sweep(const RunConfig& config);

void write_sweep_csv(const SweepOutcome& outcome, SweepAxis axis, Formulation formulation, std::ostream& out);

// key=value report of one solve.
void write_solve_report(const RunConfig& config, const SolveReport& report, std::ostream& out);

// Solves, then reports metrics (and Monte Carlo estimates when simulate).
void run_metrics(const RunConfig& config, bool simulate, std::ostream& out);

// CSV of z, pdf, cdf, mud_pdf, mud_cdf of the channel ratio on [0, z_max].
void write_distribution(const RunConfig& config, std::ostream& out);

struct Check {
  enum class Status { Pass, Fail, Info };
  std::string name;
  Status status = Status::Pass;
  double measured = 0.0;
  double bound = 0.0;
};

const char* to_string(Check::Status status);

// PASS|FAIL|INFO <name> measured=<v> bound=<b>
std::string format_check(const Check& check);

struct ValidationOptions {
  std::optional<double> absTol;  // overrides every quadrature absTol
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 20240611;
  int threads = 0;
};

// Normalization, reduction, CDF-identity, closed-form vs quadrature,
// Monte Carlo and solver checks. Each check is streamed to `out` as it
// completes.
std::vector<Check> run_validation(const ValidationOptions& options, std::ostream& out);

}  // namespace ssmud::cli
