#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "ssmud/cli/commands.hpp"
#include "ssmud/cli/config.hpp"

namespace {

using namespace ssmud;
using namespace ssmud::cli;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

// One line on stderr; `kind` keeps the message machine-parsable.
int fail(const char* kind, const std::string& message, int code) {
  std::string flat = message;
  for (auto& c : flat) {
    if (c == '\n') c = ' ';
  }
  std::cerr << "error: " << kind << ": " << flat << '\n';
  return code;
}

struct Common {
  std::string configPath;
  std::vector<std::string> overrides;
  std::string outPath;
};

void add_common(CLI::App* cmd, Common& common, bool withOut) {
  cmd->add_option("-c,--config", common.configPath, "key=value config file");
  cmd->add_option("overrides", common.overrides, "key=value settings applied after the config file");
  if (withOut) cmd->add_option("-o,--out", common.outPath, "output file (default: stdout)");
}

RunConfig build_config(const Common& common) {
  RunConfig config = common.configPath.empty() ? RunConfig{} : load_config(common.configPath);
  apply_overrides(config, common.overrides);
  finalize(config);
  return config;
}

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw std::runtime_error("cannot open output file " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (!file_) return;
    file_->close();
    if (!*file_) throw std::runtime_error("failed writing output file");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum-sharing multi-user diversity: duals, capacity, outage and ratio laws"};
  app.require_subcommand(1);

  Common solveArgs, metricsArgs, distArgs, sweepArgs;
  auto* solveCmd = app.add_subcommand("solve", "solve the Lagrange multipliers for the configured policy");
  add_common(solveCmd, solveArgs, false);

  bool simulate = false;
  auto* metricsCmd = app.add_subcommand("metrics", "solve, then report ergodic capacity and outage");
  add_common(metricsCmd, metricsArgs, false);
  metricsCmd->add_flag("--simulate", simulate, "also report Monte Carlo estimates");

  auto* distCmd = app.add_subcommand("dist", "tabulate the channel-ratio law as CSV");
  add_common(distCmd, distArgs, true);

  auto* sweepCmd = app.add_subcommand("sweep", "run a constraint sweep and write CSV");
  add_common(sweepCmd, sweepArgs, true);

  ValidationOptions validation;
  std::string reportPath;
  double absTol = 0.0;
  auto* validateCmd = app.add_subcommand("validate", "run the self-check suite");
  validateCmd->add_option("-o,--out", reportPath, "report file (default: stdout)");
  validateCmd->add_option("--abs-tol", absTol, "override every quadrature absolute tolerance")
      ->check(CLI::PositiveNumber);
  validateCmd->add_option("--samples", validation.samples, "Monte Carlo samples per check")
      ->check(CLI::PositiveNumber);
  validateCmd->add_option("--seed", validation.seed, "Monte Carlo seed");
  validateCmd->add_option("--threads", validation.threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kUsage);
  }

  try {
    if (*solveCmd) {
      const RunConfig config = build_config(solveArgs);
      write_solve_report(config, solve(config.system, config.constraints(), config.solver), std::cout);
      return kOk;
    }
    if (*metricsCmd) {
      run_metrics(build_config(metricsArgs), simulate, std::cout);
      return kOk;
    }
    if (*distCmd) {
      const RunConfig config = build_config(distArgs);
      Output out(distArgs.outPath);
      write_distribution(config, out.stream());
      out.close();
      return kOk;
    }
    if (*sweepCmd) {
      const RunConfig config = build_config(sweepArgs);
      const SweepOutcome outcome = run_sweep(config);
      Output out(sweepArgs.outPath);
      write_sweep_csv(outcome, config.sweep->axis, config.formulation, out.stream());
      out.close();
      if (outcome.failures > 0) {
        return fail("sweep", std::to_string(outcome.failures) + " row(s) failed; see the error column", kFailure);
      }
      return kOk;
    }
    if (*validateCmd) {
      if (absTol > 0.0) validation.absTol = absTol;
      Output out(reportPath);
      const auto checks = run_validation(validation, out.stream());
      out.close();
      const auto failed = std::count_if(checks.begin(), checks.end(),
                                        [](const Check& c) { return c.status == Check::Status::Fail; });
      if (failed > 0) return fail("validate", std::to_string(failed) + " check(s) failed", kFailure);
      return kOk;
    }
  } catch (const ConfigError& e) {
    return fail("config", e.what(), kUsage);
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), kFailure);
  }
  return kUsage;
}
