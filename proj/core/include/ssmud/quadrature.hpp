#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ssmud/error.hpp"

namespace ssmud::numerics {

struct QuadratureSettings {
  double absTol = 1e-10;
  double relTol = 1e-8;
  int maxDepth = 50;        // bisection levels below the starting interval
  int maxIntervals = 4000;  // hard cap on live subintervals

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double errorEstimate = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

// Thrown when the tolerance cannot be met within maxDepth/maxIntervals.
// Carries the subinterval with the largest error estimate, in the
// integration variable of the adaptive engine.
class QuadratureError : public ConvergenceError {
 public:
  QuadratureError(const std::string& what, double worstLo, double worstHi, double errorEstimate)
      : ConvergenceError(what), worstLo_(worstLo), worstHi_(worstHi), errorEstimate_(errorEstimate) {}

  double worstLo() const noexcept { return worstLo_; }
  double worstHi() const noexcept { return worstHi_; }
  double errorEstimate() const noexcept { return errorEstimate_; }

 private:
  double worstLo_;
  double worstHi_;
  double errorEstimate_;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980520235, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <std::size_t N>
struct Panel {
  double lo;
  double hi;
  int depth;
  std::array<double, N> value;
  std::array<double, N> error;
  double priority;
};

template <std::size_t N>
inline bool operator<(const Panel<N>& lhs, const Panel<N>& rhs) {
  return lhs.priority < rhs.priority;
}

template <std::size_t N, class F>
Panel<N> gk21(F& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, N> kronrod{};
  std::array<double, N> gauss{};
  const std::array<double, N> fc = f(center);
  for (std::size_t c = 0; c < N; ++c) kronrod[c] = kWgk[10] * fc[c];
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const std::array<double, N> f1 = f(center - dx);
    const std::array<double, N> f2 = f(center + dx);
    for (std::size_t c = 0; c < N; ++c) {
      const double s = f1[c] + f2[c];
      kronrod[c] += kWgk[j] * s;
      if (j % 2 == 1) gauss[c] += kWg[j / 2] * s;
    }
  }
  Panel<N> p{lo, hi, depth, {}, {}, 0.0};
  for (std::size_t c = 0; c < N; ++c) {
    p.value[c] = kronrod[c] * half;
    p.error[c] = std::abs((kronrod[c] - gauss[c]) * half);
    p.priority = std::max(p.priority, p.error[c]);
  }
  return p;
}

}  // namespace detail

template <std::size_t N>
struct VectorQuadratureResult {
  std::array<double, N> value{};
  std::array<double, N> errorEstimate{};
  int evaluations = 0;
  int intervals = 0;
};

// Globally adaptive 21-point Gauss-Kronrod integration of a vector-valued
// integrand over the finite interval [lo, hi]. Every component must satisfy
// error <= max(absTol, relTol * |value|).
template <std::size_t N, class F>
VectorQuadratureResult<N> integrate_vector(F&& f, double lo, double hi,
                                           const QuadratureSettings& settings) {
  settings.validate();
  VectorQuadratureResult<N> out;
  if (lo == hi) return out;
  std::vector<detail::Panel<N>> heap;
  heap.reserve(64);
  heap.push_back(detail::gk21<N>(f, lo, hi, 0));
  out.evaluations = 21;

  std::array<double, N> total = heap.front().value;
  std::array<double, N> totalErr = heap.front().error;

  auto converged = [&] {
    for (std::size_t c = 0; c < N; ++c) {
      if (!std::isfinite(total[c])) return false;
      if (totalErr[c] > std::max(settings.absTol, settings.relTol * std::abs(total[c]))) return false;
    }
    return true;
  };

  while (!converged()) {
    std::pop_heap(heap.begin(), heap.end());
    const detail::Panel<N> worst = heap.back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const bool unresolvable = worst.depth >= settings.maxDepth || mid <= worst.lo || mid >= worst.hi ||
                              static_cast<int>(heap.size()) >= settings.maxIntervals;
    if (unresolvable || !std::isfinite(worst.priority)) {
      throw QuadratureError("adaptive quadrature did not converge; worst subinterval [" +
                                std::to_string(worst.lo) + ", " + std::to_string(worst.hi) +
                                "] error " + std::to_string(worst.priority),
                            worst.lo, worst.hi, worst.priority);
    }
    heap.pop_back();
    const auto left = detail::gk21<N>(f, worst.lo, mid, worst.depth + 1);
    const auto right = detail::gk21<N>(f, mid, worst.hi, worst.depth + 1);
    out.evaluations += 42;
    for (std::size_t c = 0; c < N; ++c) {
      total[c] += left.value[c] + right.value[c] - worst.value[c];
      totalErr[c] += left.error[c] + right.error[c] - worst.error[c];
    }
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());

    // Re-sum periodically so running totals cannot drift.
    if (heap.size() % 64 == 0) {
      total.fill(0.0);
      totalErr.fill(0.0);
      for (const auto& p : heap) {
        for (std::size_t c = 0; c < N; ++c) {
          total[c] += p.value[c];
          totalErr[c] += p.error[c];
        }
      }
    }
  }

  out.value.fill(0.0);
  out.errorEstimate.fill(0.0);
  for (const auto& p : heap) {
    for (std::size_t c = 0; c < N; ++c) {
      out.value[c] += p.value[c];
      out.errorEstimate[c] += p.error[c];
    }
  }
  out.intervals = static_cast<int>(heap.size());
  return out;
}

// Vector integral over [lo, inf) through x = lo + scale * (t / (1 - t))^2.
// The square keeps tails as heavy as x^{-3/2} bounded in t and absorbs an
// (x - lo)^{-1/2} singularity at the left end.
template <std::size_t N, class F>
VectorQuadratureResult<N> integrate_vector_semi_infinite(F&& f, double lo,
                                                         const QuadratureSettings& settings,
                                                         double scale = 1.0) {
  auto mapped = [&](double t) {
    const double u = 1.0 - t;
    const double r = t / u;
    const std::array<double, N> v = f(lo + scale * r * r);
    std::array<double, N> out;
    const double jac = 2.0 * scale * r / (u * u);
    for (std::size_t c = 0; c < N; ++c) out[c] = v[c] == 0.0 ? 0.0 : v[c] * jac;
    return out;
  };
  return integrate_vector<N>(mapped, 0.0, 1.0, settings);
}

template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureSettings& settings = {}) {
  auto wrapped = [&](double x) { return std::array<double, 1>{f(x)}; };
  const auto r = integrate_vector<1>(wrapped, lo, hi, settings);
  return {r.value[0], r.errorEstimate[0], r.evaluations, r.intervals};
}

// Integral of f over [lo, inf); f may carry an integrable singularity at lo
// and an algebraically decaying tail.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double lo = 0.0,
                                         const QuadratureSettings& settings = {},
                                         double scale = 1.0) {
  auto wrapped = [&](double x) { return std::array<double, 1>{f(x)}; };
  const auto r = integrate_vector_semi_infinite<1>(wrapped, lo, settings, scale);
  return {r.value[0], r.errorEstimate[0], r.evaluations, r.intervals};
}

}  // namespace ssmud::numerics
