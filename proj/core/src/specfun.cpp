#include "ssmud/specfun.hpp"

#include <cmath>
#include <numeric>
#include <limits>
#include <numbers>
#include <string>

#include "ssmud/error.hpp"

namespace ssmud::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 2000;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

// Series for P(a, x), valid and fast for x < a + 1.
double lower_series(double a, double x, double logPrefactor) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(logPrefactor);
    }
  }
  throw ConvergenceError("reg_inc_gamma: lower series did not converge for a=" + std::to_string(a) +
                         " x=" + std::to_string(x));
}

// Modified Lentz continued fraction for Q(a, x), x >= a + 1.
double upper_continued_fraction(double a, double x, double logPrefactor) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return std::exp(logPrefactor) * h;
    }
  }
  throw ConvergenceError("reg_inc_gamma: continued fraction did not converge for a=" +
                         std::to_string(a) + " x=" + std::to_string(x));
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("ln_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  if (x < 170.0) {
    return std::log(std::tgamma(x));
  }
  // Stirling series; the truncation error is far below double precision here.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double rgamma(double x) {
  if (std::isnan(x)) throw DomainError("rgamma: NaN argument");
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 171.0) return std::exp(-ln_gamma(x));
  return 1.0 / std::tgamma(x);
}

double digamma(double x) {
  if (std::isnan(x) || is_nonpositive_integer(x)) {
    throw DomainError("digamma: pole or NaN at x=" + std::to_string(x));
  }
  double result = 0.0;
  if (x < 0.0) {
    // Reflection: ψ(x) = ψ(1 - x) - π cot(πx).
    result -= std::numbers::pi / std::tan(std::numbers::pi * x);
    x = 1.0 - x;
  }
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  const double tail =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
  return result + std::log(x) - 0.5 / x - tail;
}

IncGamma reg_inc_gamma(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("reg_inc_gamma: shape must be positive, got " + std::to_string(a));
  }
  if (!(x >= 0.0)) {
    throw DomainError("reg_inc_gamma: x must be non-negative, got " + std::to_string(x));
  }
  if (x == 0.0) return {0.0, 1.0};
  if (std::isinf(x)) return {1.0, 0.0};
  if (a == 1.0) return {-std::expm1(-x), std::exp(-x)};

  const double logPrefactor = a * std::log(x) - x - ln_gamma(a);
  if (x < a + 1.0) {
    const double p = lower_series(a, x, logPrefactor);
    return {p, 1.0 - p};
  }
  if (a == std::nearbyint(a) && a <= 30.0) {
    // Q(n, x) = e^{-x} Σ_{k<n} x^k / k!
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < static_cast<int>(a); ++k) {
      term *= x / k;
      sum += term;
    }
    const double q = std::exp(-x) * sum;
    return {1.0 - q, q};
  }
  const double q = upper_continued_fraction(a, x, logPrefactor);
  return {1.0 - q, q};
}

double ln_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("ln_beta: arguments must be positive");
  }
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

std::uint64_t binom_exact(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("binom: need 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  if (n > 62) throw DomainError("binom: n > 62 overflows 64-bit range");
  if (k > n - k) k = n - k;
  // r * (n - i) is divisible by i + 1; cancel the gcd first so that no
  // intermediate exceeds the final value.
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t d = static_cast<std::uint64_t>(i + 1);
    const std::uint64_t g = std::gcd(r, d);
    r = (r / g) * (static_cast<std::uint64_t>(n - i) / (d / g));
  }
  return r;
}

double binom(int n, int k) { return static_cast<double>(binom_exact(n, k)); }

}  // namespace ssmud::specfun
