#pragma once

#include "ssmud/channel.hpp"
#include "ssmud/quadrature.hpp"

// Law of the channel ratio z = g_s / g_sp, where g_s is one secondary gain
// and g_sp is the largest of L cross gains, all unit-mean Gamma(m, 1/m).
namespace ssmud::ratio {

enum class RatioMode {
  PaperClosedForm,  // closed forms; exact only for m == 1 or L <= 2
  ExactQuadrature,  // numerical integration of the two-gain joint law, any (m, L)
};

struct RatioParams {
  double m = 1.0;
  int L = 1;
  RatioMode mode = RatioMode::PaperClosedForm;

  void validate() const;
};

struct MudParams {
  int K = 1;

  void validate() const;
};

// Named closed forms, usable on their own for reduction checks.
namespace closed_form {

double rayleigh_single_pdf(double z);               // 1/(1+z)^2
double rayleigh_single_cdf(double z);               // 1 - 1/(1+z)
double nakagami_single_pdf(double m, double z);     // z^{m-1} / (B(m,m) (1+z)^{2m})
double nakagami_single_cdf(double m, double z);     // (z^m / (m B(m,m))) 2F1(m, 2m; 1+m; -z)
double rayleigh_multi_pdf(int L, double z);         // L Σ (-1)^k C(L-1,k) / (1+z+k)^2
double rayleigh_multi_cdf(int L, double z);         // L Σ (-1)^k C(L-1,k) (1/(1+k) - 1/(1+z+k))
// Multi-receiver Nakagami density from a binomial expansion of the
// cross-gain law integrated term by term; the
// indeterminate k = 0 term is replaced by its pre-integrated value
// L Γ(2m) z^{m-1} / (Γ(m)^L (1+z)^{2m}).
double nakagami_multi_pdf(double m, int L, double z);
// Integrated m = 2 form of nakagami_multi_pdf.
double nakagami2_multi_cdf(int L, double z);

}  // namespace closed_form

// Quadrature settings used for ExactQuadrature evaluations and for CDFs
// with no closed form. Tighter than the library default so that nested
// integrals built on top of them still meet 1e-8.
numerics::QuadratureSettings default_ratio_quadrature();

class RatioDistribution {
 public:
  explicit RatioDistribution(RatioParams params,
                             numerics::QuadratureSettings settings = default_ratio_quadrature());

  double pdf(double z) const;
  double cdf(double z) const;

  const RatioParams& params() const noexcept { return params_; }
  const numerics::QuadratureSettings& settings() const noexcept { return settings_; }

  // True when PaperClosedForm coincides with the exact law (m == 1 or L <= 2).
  bool closed_form_is_exact() const noexcept;

 private:
  double exact_pdf(double z) const;
  double exact_cdf(double z) const;

  RatioParams params_;
  numerics::QuadratureSettings settings_;
  FadingSpec fading_;
};

double ratio_pdf(const RatioParams& params, double z);
double ratio_cdf(const RatioParams& params, double z);

// Best-of-K order statistic applied to a base (pdf, cdf) pair:
// pdf = K f F^{K-1}, cdf = F^K.
DensityValue mud_transform(double basePdf, double baseCdf, const MudParams& mud);
DensityValue mud_transform(const RatioDistribution& base, const MudParams& mud, double z);

}  // namespace ssmud::ratio
