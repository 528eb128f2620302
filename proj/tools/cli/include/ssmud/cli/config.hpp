#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssmud/channel.hpp"
#include "ssmud/metrics.hpp"
#include "ssmud/montecarlo.hpp"
#include "ssmud/policy.hpp"
#include "ssmud/ratio.hpp"
#include "ssmud/solver.hpp"

namespace ssmud::cli {

// A rejected key=value entry. line is 0 for command-line overrides.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& reason);

  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

enum class SweepAxis { IavDb, PavDb };

const char* to_string(SweepAxis axis);

struct Scenario {
  int K = 1;
  int L = 1;
  double m = 1.0;
  PolicyKind policy = PolicyKind::Aip;

  bool operator==(const Scenario&) const = default;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::IavDb;
  double fromDb = 0.0;
  double toDb = 0.0;
  double stepDb = 1.0;
  std::vector<Scenario> scenarios;

  void validate() const;
  // Axis values from fromDb to toDb inclusive, computed as from + i * step.
  std::vector<double> axis_values() const;
};

struct DistSpec {
  double zMax = 10.0;
  int points = 101;
};

struct RunConfig {
  SystemConfig system;
  double pAv = 1.0;
  double iAv = 1.0;
  double iPk = 1.0;
  PolicyKind policy = PolicyKind::Aip;
  SolverSettings solver;
  numerics::QuadratureSettings metricsQuadrature;
  mc::SimSpec sim;
  Formulation formulation = Formulation::Joint2D;
  ratio::RatioMode ratioMode = ratio::RatioMode::PaperClosedForm;
  DistSpec dist;
  std::optional<SweepSpec> sweep;

  ConstraintSet constraints() const { return constraints_for(policy); }
  ConstraintSet constraints_for(PolicyKind kind) const;
  MetricsOptions metrics_options() const;
};

// Applies one key=value pair. Keys ending in _db take decibels and are
// stored as linear power, 10^(dB/10).
void apply_setting(RunConfig& config, std::string_view key, std::string_view value, int line = 0);

// Flat key=value text; '#' starts a comment; blank lines are ignored.
void apply_text(RunConfig& config, std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

// "key=value" tokens from the command line, applied after the file.
void apply_overrides(RunConfig& config, const std::vector<std::string>& tokens);

// Checks cross-key invariants once everything has been applied.
void finalize(RunConfig& config);

// Every accepted key, for help output.
std::vector<std::string> known_keys();

}  // namespace ssmud::cli
