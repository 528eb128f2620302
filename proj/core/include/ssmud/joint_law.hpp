#pragma once

#include <array>
#include <cstddef>

#include "ssmud/channel.hpp"
#include "ssmud/quadrature.hpp"

namespace ssmud {

// Joint law of (x, y) = (best of K secondary gains, largest of L cross
// gains), the two independent variables every policy functional depends on.
// Integrals are iterated: outer over y, inner over x.
class JointGainLaw {
 public:
  JointGainLaw(const SystemConfig& config, const numerics::QuadratureSettings& settings);

  const SystemConfig& config() const noexcept { return config_; }
  // Settings for the inner integral, one decade tighter than the outer one.
  const numerics::QuadratureSettings& inner_settings() const noexcept { return inner_; }
  const numerics::QuadratureSettings& outer_settings() const noexcept { return outer_; }

  DensityValue selected(double x) const { return max_gain_density(config_.secondaryFading, config_.K, x); }
  DensityValue cross(double y) const { return max_gain_density(config_.crossFading, config_.L, y); }

  // E[1/y] is finite iff m_sp * L > 1.
  bool inverse_cross_moment_finite() const noexcept {
    return config_.crossFading.m() * config_.L > 1.0;
  }

  // ∫_{x0}^∞ g(x) f_sel(x) dx
  template <class G>
  double inner(G&& g, double x0) const {
    auto integrand = [&](double x) {
      const double f = selected(x).pdf;
      return f == 0.0 ? 0.0 : g(x) * f;
    };
    return numerics::integrate_semi_infinite(integrand, x0, inner_).value;
  }

  // ∫_{x0}^{x1} g(x) f_sel(x) dx
  template <class G>
  double inner(G&& g, double x0, double x1) const {
    auto integrand = [&](double x) {
      const double f = selected(x).pdf;
      return f == 0.0 ? 0.0 : g(x) * f;
    };
    return numerics::integrate(integrand, x0, x1, inner_).value;
  }

  // ∫_0^∞ h(y) f_cross(y) dy for vector-valued h, optionally split at a
  // breakpoint where h has a kink.
  template <std::size_t N, class H>
  std::array<double, N> outer(H&& h, double breakpoint = 0.0) const {
    auto integrand = [&](double y) {
      const double f = cross(y).pdf;
      std::array<double, N> v{};
      if (f == 0.0) return v;
      v = h(y);
      for (auto& c : v) c *= f;
      return v;
    };
    std::array<double, N> total =
        numerics::integrate_vector_semi_infinite<N>(integrand, breakpoint, outer_).value;
    if (breakpoint > 0.0) {
      const auto head = numerics::integrate_vector<N>(integrand, 0.0, breakpoint, outer_).value;
      for (std::size_t c = 0; c < N; ++c) total[c] += head[c];
    }
    return total;
  }

  double cross_mean() const;

  // Beyond this point the selected-gain density underflows to zero, so
  // finite integrals over x can be truncated here without loss.
  double selected_support_end() const noexcept { return selectedEnd_; }

 private:
  SystemConfig config_;
  double selectedEnd_ = 0.0;
  numerics::QuadratureSettings outer_;
  numerics::QuadratureSettings inner_;
};

}  // namespace ssmud
