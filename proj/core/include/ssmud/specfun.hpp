#pragma once

#include <cstdint>

// Scalar special functions behind the fading and ratio closed forms.
// All functions are pure. Invalid arguments throw ssmud::DomainError.
namespace ssmud::specfun {

struct SpecFunResult {
  double value = 0.0;
  bool converged = false;
  int termCount = 0;
};

// ln Γ(x), x > 0.
double ln_gamma(double x);

// 1/Γ(x) for any real x; exactly zero at the poles x = 0, -1, -2, ...
double rgamma(double x);

// ψ(x) = d/dx ln Γ(x); x must not be a non-positive integer.
double digamma(double x);

struct IncGamma {
  double P;  // regularized lower, γ(a,x)/Γ(a)
  double Q;  // regularized upper, Γ(a,x)/Γ(a)
};

// Regularized incomplete gamma functions, a > 0, x >= 0.
IncGamma reg_inc_gamma(double a, double x);

// ln B(a, b), a, b > 0.
double ln_beta(double a, double b);

// Exact binomial coefficient for n <= 62.
std::uint64_t binom_exact(int n, int k);

// Binomial coefficient as a double (correctly rounded for n <= 62).
double binom(int n, int k);

// Gauss hypergeometric function 2F1(a, b; c; x) for real x < 1.
//
// Regions: direct series for |x| <= 1/2, Pfaff transformation for x < -1/2,
// and the 1-x connection formula for 1/2 < x < 1. When c-a-b is an integer
// the connection formula is replaced by its logarithmic limit. Results that
// miss the 1e-10 relative target are returned with converged == false.
SpecFunResult gauss_2f1(double a, double b, double c, double x);

}  // namespace ssmud::specfun
