#include <cmath>
#include <limits>
#include <string>

#include "ssmud/error.hpp"
#include "ssmud/specfun.hpp"

namespace ssmud::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTarget = 1e-10;
constexpr int kMaxTerms = 20000;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

// A partial evaluation: value plus the sum of magnitudes that produced it,
// which bounds the cancellation loss.
struct Partial {
  double value = 0.0;
  double magnitude = 0.0;
  bool converged = true;
  int terms = 0;
};

Partial scaled(Partial p, double factor) {
  p.value *= factor;
  p.magnitude *= std::abs(factor);
  return p;
}

Partial combined(const Partial& lhs, const Partial& rhs) {
  return {lhs.value + rhs.value, lhs.magnitude + rhs.magnitude, lhs.converged && rhs.converged,
          lhs.terms + rhs.terms};
}

// Σ (a)_n (b)_n / ((c)_n n!) x^n. Terminates exactly when a or b is a
// non-positive integer.
Partial power_series(double a, double b, double c, double x) {
  Partial p{1.0, 1.0, false, 1};
  double term = 1.0;
  int quiet = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    p.value += term;
    p.magnitude += std::abs(term);
    ++p.terms;
    if (term == 0.0) {
      p.converged = true;
      return p;
    }
    if (std::abs(term) <= 0.5 * kEps * std::abs(p.value)) {
      if (++quiet >= 2) {
        p.converged = true;
        return p;
      }
    } else {
      quiet = 0;
    }
  }
  return p;
}

// 1-x connection formula for non-integer s = c - a - b.
Partial connection_generic(double a, double b, double c, double x) {
  const double y = 1.0 - x;
  const double s = c - a - b;
  const double gc = std::tgamma(c);
  Partial first = power_series(a, b, 1.0 - s, y);
  Partial second = power_series(c - a, c - b, 1.0 + s, y);
  first = scaled(first, gc * std::tgamma(s) * rgamma(c - a) * rgamma(c - b));
  second = scaled(second, std::pow(y, s) * gc * std::tgamma(-s) * rgamma(a) * rgamma(b));
  return combined(first, second);
}

// Logarithmic limit of the 1-x connection formula for c = a + b + n, n >= 0.
Partial connection_log(double a, double b, double c, int n, double x) {
  const double y = 1.0 - x;
  const double ly = std::log(y);
  const double gc = std::tgamma(c);

  Partial finite{0.0, 0.0, true, 0};
  if (n > 0) {
    // Γ(n)Γ(c)/(Γ(a+n)Γ(b+n)) Σ_{k<n} (a)_k (b)_k / (k! (1-n)_k) y^k
    const double pref = std::tgamma(static_cast<double>(n)) * gc * rgamma(a + n) * rgamma(b + n);
    double term = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k > 0) term *= (a + k - 1) * (b + k - 1) / (k * (k - n)) * y;
      finite.value += term;
      finite.magnitude += std::abs(term);
      ++finite.terms;
    }
    finite = scaled(finite, pref);
  }

  const double pref = (n % 2 == 0 ? -1.0 : 1.0) * std::pow(y, n) * gc * rgamma(a) * rgamma(b);
  if (pref == 0.0) return finite;

  // Σ (a+n)_k (b+n)_k / (k! (k+n)!) y^k [ln y - ψ(k+1) - ψ(k+n+1) + ψ(a+k+n) + ψ(b+k+n)]
  double coef = std::exp(-ln_gamma(n + 1.0));
  double psi1 = digamma(1.0);
  double psi2 = digamma(n + 1.0);
  double psi3 = digamma(a + n);
  double psi4 = digamma(b + n);
  Partial tail{0.0, 0.0, false, 0};
  int quiet = 0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double term = coef * (ly - psi1 - psi2 + psi3 + psi4);
    tail.value += term;
    tail.magnitude += std::abs(term);
    ++tail.terms;
    if (std::abs(term) <= 0.5 * kEps * std::abs(tail.value) || term == 0.0) {
      if (++quiet >= 2) {
        tail.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
    coef *= (a + n + k) * (b + n + k) / ((k + 1.0) * (k + n + 1.0)) * y;
    psi1 += 1.0 / (k + 1.0);
    psi2 += 1.0 / (k + n + 1.0);
    psi3 += 1.0 / (a + n + k);
    psi4 += 1.0 / (b + n + k);
  }
  return combined(finite, scaled(tail, pref));
}

Partial connection(double a, double b, double c, double x) {
  const double s = c - a - b;
  const double n = std::nearbyint(s);
  const double scale = std::max(1.0, std::abs(a) + std::abs(b) + std::abs(c));
  if (std::abs(s - n) > 1e-13 * scale) {
    return connection_generic(a, b, c, x);
  }
  if (n >= 0) {
    return connection_log(a, b, a + b + n, static_cast<int>(n), x);
  }
  // Euler: F(a,b;c;x) = (1-x)^{c-a-b} F(c-a, c-b; c; x) moves n to -n.
  const double ca = c - a;
  const double cb = c - b;
  return scaled(connection_log(ca, cb, ca + cb - n, static_cast<int>(-n), x), std::pow(1.0 - x, n));
}

Partial evaluate(double a, double b, double c, double x) {
  if (x == 0.0) return {1.0, 1.0, true, 1};
  const bool polynomial = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (std::abs(x) <= 0.5 || (polynomial && x > 0.0)) {
    return power_series(a, b, c, x);
  }
  if (x < -0.5) {
    // Pfaff: F(a,b;c;x) = (1-x)^{-a} F(a, c-b; c; x/(x-1)), or the a<->b mirror.
    const double w = x / (x - 1.0);
    if (is_nonpositive_integer(c - a) && !is_nonpositive_integer(c - b)) {
      return scaled(evaluate(c - a, b, c, w), std::pow(1.0 - x, -b));
    }
    return scaled(evaluate(a, c - b, c, w), std::pow(1.0 - x, -a));
  }
  // 1/2 < x < 1
  if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) {
    // Euler transformation turns the series into a polynomial.
    return scaled(power_series(c - a, c - b, c, x), std::pow(1.0 - x, c - a - b));
  }
  return connection(a, b, c, x);
}

}  // namespace

SpecFunResult gauss_2f1(double a, double b, double c, double x) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || std::isnan(x)) {
    throw DomainError("gauss_2f1: non-finite parameter");
  }
  if (is_nonpositive_integer(c)) {
    throw DomainError("gauss_2f1: c must not be a non-positive integer, got " + std::to_string(c));
  }
  if (!(x < 1.0)) {
    throw DomainError("gauss_2f1: argument must be < 1, got " + std::to_string(x));
  }
  const Partial p = evaluate(a, b, c, x);
  SpecFunResult result;
  result.value = p.value;
  result.termCount = p.terms;
  const double loss = p.value == 0.0 ? std::numeric_limits<double>::infinity()
                                     : 16.0 * kEps * p.magnitude / std::abs(p.value);
  result.converged = p.converged && std::isfinite(p.value) && loss <= kTarget && p.terms >= 1;
  return result;
}

}  // namespace ssmud::specfun
