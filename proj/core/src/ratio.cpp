#include "ssmud/ratio.hpp"

#include <cmath>
#include <string>

#include "ssmud/error.hpp"
#include "ssmud/specfun.hpp"

namespace ssmud::ratio {

namespace {

void check_z(double z) {
  if (!(z >= 0.0)) throw DomainError("ratio: z must be non-negative, got " + std::to_string(z));
}

double sign_of(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

// z^{m-1} with the conventional values at z = 0.
double power_m_minus_one(double m, double z) {
  if (m == 1.0) return 1.0;
  if (z == 0.0) return m < 1.0 ? HUGE_VAL : 0.0;
  return std::pow(z, m - 1.0);
}

}  // namespace

void RatioParams::validate() const {
  if (!(m >= 0.5) || !std::isfinite(m)) throw DomainError("RatioParams: m must be >= 0.5");
  if (L < 1) throw DomainError("RatioParams: L must be >= 1");
}

void MudParams::validate() const {
  if (K < 1) throw DomainError("MudParams: K must be >= 1");
}

namespace closed_form {

double rayleigh_single_pdf(double z) {
  check_z(z);
  const double d = 1.0 + z;
  return 1.0 / (d * d);
}

double rayleigh_single_cdf(double z) {
  check_z(z);
  if (std::isinf(z)) return 1.0;
  return z / (1.0 + z);
}

double nakagami_single_pdf(double m, double z) {
  check_z(z);
  if (z == 0.0) return power_m_minus_one(m, z) / std::exp(specfun::ln_beta(m, m));
  if (std::isinf(z)) return 0.0;
  return std::exp((m - 1.0) * std::log(z) - 2.0 * m * std::log1p(z) - specfun::ln_beta(m, m));
}

double nakagami_single_cdf(double m, double z) {
  check_z(z);
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return 1.0;
  const auto f = specfun::gauss_2f1(m, 2.0 * m, 1.0 + m, -z);
  if (!f.converged) {
    throw ConvergenceError("nakagami_single_cdf: 2F1 did not converge at z=" + std::to_string(z));
  }
  return std::exp(m * std::log(z) - std::log(m) - specfun::ln_beta(m, m)) * f.value;
}

double rayleigh_multi_pdf(int L, double z) {
  check_z(z);
  if (L < 1) throw DomainError("rayleigh_multi_pdf: L must be >= 1");
  double sum = 0.0;
  for (int k = 0; k < L; ++k) {
    const double d = 1.0 + z + k;
    sum += sign_of(k) * specfun::binom(L - 1, k) / (d * d);
  }
  return L * sum;
}

double rayleigh_multi_cdf(int L, double z) {
  check_z(z);
  if (L < 1) throw DomainError("rayleigh_multi_cdf: L must be >= 1");
  double sum = 0.0;
  for (int k = 0; k < L; ++k) {
    const double tail = std::isinf(z) ? 0.0 : 1.0 / (1.0 + z + k);
    sum += sign_of(k) * specfun::binom(L - 1, k) * (1.0 / (1.0 + k) - tail);
  }
  return L * sum;
}

double nakagami_multi_pdf(double m, int L, double z) {
  check_z(z);
  if (L < 1) throw DomainError("nakagami_multi_pdf: L must be >= 1");
  const double zpow = power_m_minus_one(m, z);
  if (std::isinf(zpow)) return zpow;
  if (zpow == 0.0 || std::isinf(z)) return 0.0;
  const double lgm = specfun::ln_gamma(m);
  // k = 0, pre-integrated.
  double total = L * std::exp(specfun::ln_gamma(2.0 * m) - L * lgm - 2.0 * m * std::log1p(z)) * zpow;
  const double pref = L * std::exp(specfun::ln_gamma(3.0 * m) - (L + 1) * lgm) * zpow / (2.0 * m);
  for (int k = 1; k < L; ++k) {
    const double d = z + k + 1.0;
    const double u = (z + 1.0) / d;
    const auto f = specfun::gauss_2f1(1.0, 3.0 * m, 2.0 * m + 1.0, u);
    if (!f.converged) {
      throw ConvergenceError("nakagami_multi_pdf: 2F1 did not converge at z=" + std::to_string(z));
    }
    const double kpow = std::exp(m * std::log(static_cast<double>(k)) - 3.0 * m * std::log(d));
    total += pref * sign_of(k) * specfun::binom(L - 1, k) * kpow * f.value;
  }
  return total;
}

double nakagami2_multi_cdf(int L, double z) {
  check_z(z);
  if (L < 1) throw DomainError("nakagami2_multi_cdf: L must be >= 1");
  double sum = 0.0;
  for (int k = 0; k < L; ++k) {
    const double k1 = 1.0 + k;
    const double head = (1.0 + 3.0 * k * k + 4.0 * k) / (6.0 * k1 * k1 * k1 * k1);
    double tail = 0.0;
    if (!std::isinf(z)) {
      const double d = 1.0 + k + z;
      tail = (1.0 + 3.0 * k * k + 4.0 * z + 3.0 * z * z + 4.0 * k * (1.0 + 3.0 * z)) / (6.0 * d * d * d * d);
    }
    sum += sign_of(k) * specfun::binom(L - 1, k) * (head - tail);
  }
  // Γ(6) / (Γ(2)^{L+1} 20) = 6
  return L * 6.0 * sum;
}

}  // namespace closed_form

numerics::QuadratureSettings default_ratio_quadrature() {
  numerics::QuadratureSettings s;
  s.absTol = 1e-13;
  s.relTol = 1e-11;
  s.maxDepth = 60;
  return s;
}

RatioDistribution::RatioDistribution(RatioParams params, numerics::QuadratureSettings settings)
    : params_(params), settings_(settings), fading_(FadingSpec::from_shape(params.m)) {
  params_.validate();
  settings_.validate();
}

bool RatioDistribution::closed_form_is_exact() const noexcept {
  return params_.m == 1.0 || params_.L <= 2;
}

double RatioDistribution::exact_pdf(double z) const {
  // f_z(z) = ∫ y f_s(z y) f_max(y) dy
  if (z == 0.0) {
    const double head = power_m_minus_one(params_.m, 0.0);
    if (head == 0.0 || std::isinf(head)) return head;
    return gain_density(fading_, 0.0).pdf * max_gain_mean(fading_, params_.L);
  }
  if (std::isinf(z)) return 0.0;
  auto integrand = [&](double y) {
    if (y == 0.0) return 0.0;
    const double fs = gain_density(fading_, z * y).pdf;
    if (fs == 0.0) return 0.0;
    return y * fs * max_gain_density(fading_, params_.L, y).pdf;
  };
  return numerics::integrate_semi_infinite(integrand, 0.0, settings_, 1.0 / (1.0 + z)).value;
}

double RatioDistribution::exact_cdf(double z) const {
  // F_z(z) = Pr{g_s <= z g_sp} = ∫ P(m, m z y) f_max(y) dy
  if (z == 0.0) return 0.0;
  if (std::isinf(z)) return 1.0;
  auto integrand = [&](double y) {
    const double f = max_gain_density(fading_, params_.L, y).pdf;
    if (f == 0.0) return 0.0;
    return gain_density(fading_, z * y).cdf * f;
  };
  return numerics::integrate_semi_infinite(integrand, 0.0, settings_).value;
}

double RatioDistribution::pdf(double z) const {
  check_z(z);
  const double m = params_.m;
  const int L = params_.L;
  if (params_.mode == RatioMode::ExactQuadrature) return exact_pdf(z);
  if (m == 1.0 && L == 1) return closed_form::rayleigh_single_pdf(z);
  if (L == 1) return closed_form::nakagami_single_pdf(m, z);
  if (m == 1.0) return closed_form::rayleigh_multi_pdf(L, z);
  return closed_form::nakagami_multi_pdf(m, L, z);
}

double RatioDistribution::cdf(double z) const {
  check_z(z);
  const double m = params_.m;
  const int L = params_.L;
  if (params_.mode == RatioMode::ExactQuadrature) return exact_cdf(z);
  if (m == 1.0 && L == 1) return closed_form::rayleigh_single_cdf(z);
  if (L == 1) return closed_form::nakagami_single_cdf(m, z);
  if (m == 1.0) return closed_form::rayleigh_multi_cdf(L, z);
  if (m == 2.0) return closed_form::nakagami2_multi_cdf(L, z);
  if (z == 0.0) return 0.0;
  auto density = [&](double t) { return closed_form::nakagami_multi_pdf(m, L, t); };
  if (std::isinf(z)) return numerics::integrate_semi_infinite(density, 0.0, settings_).value;
  return numerics::integrate(density, 0.0, z, settings_).value;
}

double ratio_pdf(const RatioParams& params, double z) { return RatioDistribution(params).pdf(z); }

double ratio_cdf(const RatioParams& params, double z) { return RatioDistribution(params).cdf(z); }

DensityValue mud_transform(double basePdf, double baseCdf, const MudParams& mud) {
  mud.validate();
  if (mud.K == 1) return {basePdf, baseCdf};
  const double head = std::pow(baseCdf, mud.K - 1);
  return {mud.K * basePdf * head, head * baseCdf};
}

DensityValue mud_transform(const RatioDistribution& base, const MudParams& mud, double z) {
  return mud_transform(base.pdf(z), base.cdf(z), mud);
}

}  // namespace ssmud::ratio
