#include "ssmud/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ssmud/error.hpp"
#include "ssmud/metrics.hpp"
#include "ssmud/random.hpp"

namespace ssmud::mc {

namespace {

// Welford accumulator; merged with Chan's pairwise update.
struct Moments {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    const std::int64_t total = n + o.n;
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(total);
    n = total;
  }
};

std::int64_t stream_samples(const SimSpec& spec, int stream) {
  const std::int64_t base = spec.samples / spec.streams;
  return base + (stream < spec.samples % spec.streams ? 1 : 0);
}

// Runs fn(stream) for every stream on a small worker pool. Each stream
// writes only its own slot, so scheduling never changes results.
template <class Fn>
void for_each_stream(const SimSpec& spec, Fn&& fn) {
  int threads = spec.threads > 0 ? spec.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, spec.streams);
  if (threads == 1) {
    for (int s = 0; s < spec.streams; ++s) fn(s);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int s = next++; s < spec.streams; s = next++) {
        try {
          fn(s);
        } catch (...) {
          std::lock_guard lock(failureMutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

SimResult finish(std::span<const Moments> perStream) {
  SimResult r;
  Moments total;
  for (const auto& m : perStream) {
    total.merge(m);
    r.perStream.push_back(m.mean);
  }
  r.mean = total.mean;
  r.stdError = total.n > 1 ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n)) : 0.0;
  return r;
}

double max_draw(const FadingSpec& spec, int count, Rng& rng) {
  double best = 0.0;
  for (int i = 0; i < count; ++i) best = std::max(best, draw_gain(spec, rng));
  return best;
}

struct Selected {
  double gS;
  double gSp;
};

// The user served in one trial under the spec's sampling semantics.
Selected draw_selected(const SystemConfig& config, SimMode mode, Rng& rng) {
  if (mode == SimMode::Physical) {
    const double gS = max_draw(config.secondaryFading, config.K, rng);
    return {gS, max_draw(config.crossFading, config.L, rng)};
  }
  Selected best{0.0, 1.0};
  double bestRatio = -1.0;
  for (int k = 0; k < config.K; ++k) {
    const double gS = draw_gain(config.secondaryFading, rng);
    const double gSp = max_draw(config.crossFading, config.L, rng);
    const double z = gS / gSp;
    if (z > bestRatio) {
      bestRatio = z;
      best = {gS, gSp};
    }
  }
  return best;
}

}  // namespace

const char* to_string(SimMode mode) { return mode == SimMode::Physical ? "Physical" : "IidRatio"; }

void SimSpec::validate() const {
  if (samples < 1) throw DomainError("SimSpec: samples must be >= 1");
  if (streams < 1) throw DomainError("SimSpec: streams must be >= 1");
  if (threads < 0) throw DomainError("SimSpec: threads must be >= 0");
}

SimMetrics simulate_metrics(const SystemConfig& config, const Policy& policy, const SimSpec& spec) {
  config.validate();
  spec.validate();
  if (policy.kind == PolicyKind::Aip) policy.duals.validate();
  const auto streams = static_cast<std::size_t>(spec.streams);
  std::vector<std::array<Moments, 4>> acc(streams);
  const double n = config.noiseVar;

  for_each_stream(spec, [&](int s) {
    Rng rng(stream_seed(spec.seed, static_cast<std::uint64_t>(s)));
    auto& a = acc[static_cast<std::size_t>(s)];
    const std::int64_t count = stream_samples(spec, s);
    for (std::int64_t i = 0; i < count; ++i) {
      const Selected u = draw_selected(config, spec.mode, rng);
      const double p = transmit_power(policy, u.gS, u.gSp, n);
      a[0].add(p);
      a[1].add(u.gSp * p);
      a[2].add(std::log2(1.0 + p * u.gS / n));
      a[3].add(p == 0.0 ? 1.0 : 0.0);
    }
  });

  SimMetrics out;
  SimResult* fields[4] = {&out.eP, &out.eI, &out.capacity, &out.outage};
  std::vector<Moments> column(streams);
  for (std::size_t f = 0; f < 4; ++f) {
    for (std::size_t s = 0; s < streams; ++s) column[s] = acc[s][f];
    *fields[f] = finish(column);
  }
  return out;
}

std::vector<double> sample_max_ratio(const ratio::RatioParams& params, const ratio::MudParams& mud,
                                     const SimSpec& spec) {
  params.validate();
  mud.validate();
  spec.validate();
  const FadingSpec fading = FadingSpec::from_shape(params.m);
  const SystemConfig config{mud.K, params.L, 1.0, fading, fading};
  std::vector<std::vector<double>> parts(static_cast<std::size_t>(spec.streams));
  for_each_stream(spec, [&](int s) {
    Rng rng(stream_seed(spec.seed, static_cast<std::uint64_t>(s)));
    auto& part = parts[static_cast<std::size_t>(s)];
    const std::int64_t count = stream_samples(spec, s);
    part.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
      const Selected u = draw_selected(config, spec.mode, rng);
      part.push_back(u.gS / u.gSp);
    }
  });
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(spec.samples));
  for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  std::sort(all.begin(), all.end());
  return all;
}

DistributionCheck validate_distribution(const ratio::RatioParams& params, const ratio::MudParams& mud,
                                        const SimSpec& spec, int gridPoints) {
  const std::vector<double> samples = sample_max_ratio(params, mud, spec);
  if (spec.mode == SimMode::IidRatio) {
    const ratio::RatioDistribution law(params);
    return ks_grid_bound(samples, [&](double z) { return ratio::mud_transform(law, mud, z).cdf; }, gridPoints);
  }
  const FadingSpec fading = FadingSpec::from_shape(params.m);
  const SystemConfig config{mud.K, params.L, 1.0, fading, fading};
  return ks_grid_bound(samples, [&](double z) { return selected_ratio_cdf(config, z); }, gridPoints);
}

double two_sample_ks(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("two_sample_ks: samples must be non-empty");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace ssmud::mc
