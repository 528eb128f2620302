#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ssmud/channel.hpp"
#include "ssmud/policy.hpp"
#include "ssmud/ratio.hpp"

namespace ssmud::mc {

// Physical: one trial draws K secondary gains and L cross gains shared by
// all users. IidRatio: each of the K users gets its own L cross gains, so
// the K ratios g_s / g_sp are i.i.d.
enum class SimMode { Physical, IidRatio };

const char* to_string(SimMode mode);

struct SimSpec {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  SimMode mode = SimMode::Physical;
  int streams = 8;
  int threads = 0;  // 0 = hardware concurrency; never changes the result

  void validate() const;
};

struct SimResult {
  double mean = 0.0;
  double stdError = 0.0;
  std::vector<double> perStream;  // per-stream means, stream order

  bool operator==(const SimResult&) const = default;
};

struct SimMetrics {
  SimResult eP;
  SimResult eI;
  SimResult capacity;
  SimResult outage;

  bool operator==(const SimMetrics&) const = default;
};

// Monte Carlo estimates of E[P_t], E[g_sp P_t], E[log2(1 + P_t g_s / n)] and
// Pr{P_t = 0} for `policy`. In IidRatio mode the policy acts on the user
// with the largest ratio.
SimMetrics simulate_metrics(const SystemConfig& config, const Policy& policy, const SimSpec& spec);

// Sorted draws of the best-of-K ratio. Deterministic given the spec.
std::vector<double> sample_max_ratio(const ratio::RatioParams& params, const ratio::MudParams& mud,
                                     const SimSpec& spec);

struct DistributionCheck {
  double ksDistance = 0.0;    // upper bound on sup |F_n - F|
  double maxAbsCdfGap = 0.0;  // largest gap observed at the evaluation grid
  int gridPoints = 0;
};

// Compares the empirical law of the best-of-K ratio with its analytic CDF:
// the i.i.d.-ratio transform of `params` in IidRatio mode, the shared-cross
// joint law in Physical mode. The analytic CDF is evaluated on a grid of
// sample quantiles; monotonicity of both CDFs turns the grid into a bound.
DistributionCheck validate_distribution(const ratio::RatioParams& params, const ratio::MudParams& mud,
                                        const SimSpec& spec, int gridPoints = 4000);

// Same bound for an arbitrary nondecreasing CDF and sorted samples.
template <class Cdf>
DistributionCheck ks_grid_bound(std::span<const double> sorted, Cdf&& cdf, int gridPoints);

// Two-sample Kolmogorov-Smirnov statistic of two sorted samples.
double two_sample_ks(std::span<const double> a, std::span<const double> b);

template <class Cdf>
DistributionCheck ks_grid_bound(std::span<const double> sorted, Cdf&& cdf, int gridPoints) {
  DistributionCheck out;
  const auto n = static_cast<std::int64_t>(sorted.size());
  if (n == 0) return out;
  const std::int64_t step = std::max<std::int64_t>(1, n / std::max(1, gridPoints));
  const double dn = static_cast<double>(n);
  // Grid over 1-based order-statistic indices 1, 1+step, ..., n.
  std::int64_t prevIdx = 0;
  double prevF = 0.0;  // F at the left end; the empirical CDF is 0 below s_1
  bool first = true;
  auto visit = [&](std::int64_t idx) {
    const double z = sorted[static_cast<std::size_t>(idx - 1)];
    const double f = cdf(z);
    ++out.gridPoints;
    out.maxAbsCdfGap = std::max({out.maxAbsCdfGap, std::abs(idx / dn - f), std::abs((idx - 1) / dn - f)});
    if (first) {
      out.ksDistance = std::max(out.ksDistance, f);
      first = false;
    } else {
      // On [s_prev, s_idx): F_n in [prev/n, (idx-1)/n], F in [prevF, f].
      out.ksDistance = std::max({out.ksDistance, (idx - 1) / dn - prevF, f - prevIdx / dn});
    }
    out.ksDistance = std::max(out.ksDistance, std::abs(idx / dn - f));
    prevIdx = idx;
    prevF = f;
  };
  for (std::int64_t idx = 1; idx < n; idx += step) visit(idx);
  visit(n);
  out.ksDistance = std::max(out.ksDistance, 1.0 - prevF);
  return out;
}

}  // namespace ssmud::mc
