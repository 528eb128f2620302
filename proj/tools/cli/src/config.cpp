#include "ssmud/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ssmud/error.hpp"

namespace ssmud::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_double(std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw std::invalid_argument("expected a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

double positive(double v) {
  if (!(v > 0.0)) throw std::invalid_argument("must be positive");
  return v;
}

PolicyKind parse_policy(std::string_view v) {
  const std::string s = lower(std::string(v));
  if (s == "aip") return PolicyKind::Aip;
  if (s == "pip") return PolicyKind::Pip;
  throw std::invalid_argument("expected aip or pip, got '" + std::string(v) + "'");
}

Scenario parse_scenario(std::string_view token) {
  std::vector<std::string> parts;
  std::stringstream ss{std::string(token)};
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
  if (parts.size() != 4) {
    throw std::invalid_argument("scenario '" + std::string(token) + "' is not K:L:m:policy");
  }
  Scenario sc{parse_int<int>(parts[0]), parse_int<int>(parts[1]), parse_double(parts[2]), parse_policy(parts[3])};
  if (sc.K < 1 || sc.L < 1) throw std::invalid_argument("scenario K and L must be >= 1");
  FadingSpec::from_shape(sc.m);
  return sc;
}

SweepSpec& sweep_of(RunConfig& c) {
  if (!c.sweep) c.sweep.emplace();
  return *c.sweep;
}

using Handler = std::function<void(RunConfig&, std::string_view)>;

// Power-valued keys accept a linear value or a _db twin.
void add_power(std::map<std::string, Handler>& table, const std::string& key, double RunConfig::*field) {
  table[key] = [field](RunConfig& c, std::string_view v) { c.*field = positive(parse_double(v)); };
  table[key + "_db"] = [field](RunConfig& c, std::string_view v) { c.*field = db_to_linear(parse_double(v)); };
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = [] {
    std::map<std::string, Handler> t;
    t["k"] = [](RunConfig& c, std::string_view v) { c.system.K = parse_int<int>(v); };
    t["l"] = [](RunConfig& c, std::string_view v) { c.system.L = parse_int<int>(v); };
    t["m"] = [](RunConfig& c, std::string_view v) {
      const auto spec = FadingSpec::from_shape(parse_double(v));
      c.system.secondaryFading = spec;
      c.system.crossFading = spec;
    };
    t["m_s"] = [](RunConfig& c, std::string_view v) { c.system.secondaryFading = FadingSpec::from_shape(parse_double(v)); };
    t["m_sp"] = [](RunConfig& c, std::string_view v) { c.system.crossFading = FadingSpec::from_shape(parse_double(v)); };
    t["noise_var"] = [](RunConfig& c, std::string_view v) { c.system.noiseVar = positive(parse_double(v)); };
    t["noise_var_db"] = [](RunConfig& c, std::string_view v) { c.system.noiseVar = db_to_linear(parse_double(v)); };
    add_power(t, "p_av", &RunConfig::pAv);
    add_power(t, "i_av", &RunConfig::iAv);
    add_power(t, "i_pk", &RunConfig::iPk);
    t["policy"] = [](RunConfig& c, std::string_view v) { c.policy = parse_policy(v); };

    t["epsilon"] = [](RunConfig& c, std::string_view v) { c.solver.epsilon = positive(parse_double(v)); };
    t["inner_tol"] = [](RunConfig& c, std::string_view v) { c.solver.innerTol = positive(parse_double(v)); };
    t["max_outer_iter"] = [](RunConfig& c, std::string_view v) { c.solver.maxOuterIter = parse_int<int>(v); };
    t["lambda_bar"] = [](RunConfig& c, std::string_view v) { c.solver.lambdaBarHint = parse_double(v); };
    t["abs_tol"] = [](RunConfig& c, std::string_view v) {
      c.solver.quadrature.absTol = c.metricsQuadrature.absTol = positive(parse_double(v));
    };
    t["rel_tol"] = [](RunConfig& c, std::string_view v) {
      c.solver.quadrature.relTol = c.metricsQuadrature.relTol = positive(parse_double(v));
    };

    t["samples"] = [](RunConfig& c, std::string_view v) { c.sim.samples = parse_int<std::int64_t>(v); };
    t["seed"] = [](RunConfig& c, std::string_view v) { c.sim.seed = parse_int<std::uint64_t>(v); };
    t["streams"] = [](RunConfig& c, std::string_view v) { c.sim.streams = parse_int<int>(v); };
    t["threads"] = [](RunConfig& c, std::string_view v) { c.sim.threads = parse_int<int>(v); };
    t["sim_mode"] = [](RunConfig& c, std::string_view v) {
      const std::string s = lower(std::string(v));
      if (s == "physical") c.sim.mode = mc::SimMode::Physical;
      else if (s == "iid_ratio") c.sim.mode = mc::SimMode::IidRatio;
      else throw std::invalid_argument("expected physical or iid_ratio");
    };
    t["formulation"] = [](RunConfig& c, std::string_view v) {
      const std::string s = lower(std::string(v));
      if (s == "joint2d") c.formulation = Formulation::Joint2D;
      else if (s == "ratio1d") c.formulation = Formulation::Ratio1D;
      else throw std::invalid_argument("expected joint2d or ratio1d");
    };
    t["ratio_mode"] = [](RunConfig& c, std::string_view v) {
      const std::string s = lower(std::string(v));
      if (s == "closed_form") c.ratioMode = ratio::RatioMode::PaperClosedForm;
      else if (s == "exact") c.ratioMode = ratio::RatioMode::ExactQuadrature;
      else throw std::invalid_argument("expected closed_form or exact");
    };
    t["z_max"] = [](RunConfig& c, std::string_view v) { c.dist.zMax = positive(parse_double(v)); };
    t["z_points"] = [](RunConfig& c, std::string_view v) {
      c.dist.points = parse_int<int>(v);
      if (c.dist.points < 2) throw std::invalid_argument("must be >= 2");
    };

    // Sweep descriptors; the axis bounds stay in dB.
    t["axis"] = [](RunConfig& c, std::string_view v) {
      const std::string s = lower(std::string(v));
      if (s == "iav_db") sweep_of(c).axis = SweepAxis::IavDb;
      else if (s == "pav_db") sweep_of(c).axis = SweepAxis::PavDb;
      else throw std::invalid_argument("expected Iav_dB or Pav_dB");
    };
    t["from_db"] = [](RunConfig& c, std::string_view v) { sweep_of(c).fromDb = parse_double(v); };
    t["to_db"] = [](RunConfig& c, std::string_view v) { sweep_of(c).toDb = parse_double(v); };
    t["step_db"] = [](RunConfig& c, std::string_view v) { sweep_of(c).stepDb = parse_double(v); };
    t["scenarios"] = [](RunConfig& c, std::string_view v) {
      auto& list = sweep_of(c).scenarios;
      list.clear();
      std::string buf(v);
      for (auto& ch : buf) {
        if (ch == ';') ch = ',';
      }
      std::stringstream ss(buf);
      for (std::string tok; std::getline(ss, tok, ',');) {
        tok = trim(tok);
        if (!tok.empty()) list.push_back(parse_scenario(tok));
      }
    };
    return t;
  }();
  return table;
}

}  // namespace

ConfigError::ConfigError(std::string key, int line, const std::string& reason)
    : std::runtime_error("config key '" + key + "'" + (line > 0 ? " at line " + std::to_string(line) : "") +
                         ": " + reason),
      key_(std::move(key)),
      line_(line) {}

const char* to_string(SweepAxis axis) { return axis == SweepAxis::IavDb ? "Iav_dB" : "Pav_dB"; }

void SweepSpec::validate() const {
  if (!(stepDb > 0.0)) throw DomainError("sweep: step_db must be positive");
  if (!(fromDb <= toDb)) throw DomainError("sweep: from_db must not exceed to_db");
  if (scenarios.empty()) throw DomainError("sweep: at least one scenario is required");
}

std::vector<double> SweepSpec::axis_values() const {
  validate();
  const auto count = static_cast<long>(std::floor((toDb - fromDb) / stepDb + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(fromDb + static_cast<double>(i) * stepDb);
  return out;
}

ConstraintSet RunConfig::constraints_for(PolicyKind kind) const {
  if (kind == PolicyKind::Aip) return {pAv, iAv, InterferenceMode::Average};
  return {pAv, iPk, InterferenceMode::Peak};
}

MetricsOptions RunConfig::metrics_options() const {
  MetricsOptions o;
  o.quadrature = metricsQuadrature;
  o.ratioMode = ratioMode;
  o.muTolerance = solver.innerTol;
  return o;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value, int line) {
  const std::string k = lower(trim(key));
  const auto& table = handlers();
  const auto it = table.find(k);
  if (it == table.end()) throw ConfigError(k, line, "unknown key");
  const std::string v = trim(value);
  if (v.empty()) throw ConfigError(k, line, "empty value");
  try {
    it->second(config, v);
  } catch (const std::exception& e) {
    throw ConfigError(k, line, e.what());
  }
}

void apply_text(RunConfig& config, std::string_view text) {
  std::stringstream ss{std::string(text)};
  int lineNo = 0;
  for (std::string line; std::getline(ss, line);) {
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(body, lineNo, "expected key=value");
    apply_setting(config, body.substr(0, eq), body.substr(eq + 1), lineNo);
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig config;
  apply_text(config, buf.str());
  return config;
}

void apply_overrides(RunConfig& config, const std::vector<std::string>& tokens) {
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ConfigError(tok, 0, "expected key=value");
    apply_setting(config, tok.substr(0, eq), tok.substr(eq + 1), 0);
  }
}

void finalize(RunConfig& config) {
  try {
    config.system.validate();
    config.solver.validate();
    config.metricsQuadrature.validate();
    config.sim.validate();
    if (config.sweep) config.sweep->validate();
  } catch (const DomainError& e) {
    throw ConfigError("config", 0, e.what());
  }
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : handlers()) keys.push_back(k);
  return keys;
}

}  // namespace ssmud::cli
