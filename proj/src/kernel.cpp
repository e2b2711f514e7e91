#include "cubesec/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cubesec/error.hpp"
#include "cubesec/quadrature.hpp"
#include "cubesec/specfun.hpp"

namespace cubesec::kernel {

namespace {

constexpr double kSqrtPi = 1.0 / std::numbers::inv_sqrtpi;
constexpr double kOracleSplit = 50.0;

void require_nonnegative_r(double r, const char* who) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(who) + ": r must be finite and >= 0");
  }
}

}  // namespace

ConcentrationParam::ConcentrationParam(double b) : b_(b) {
  if (!std::isfinite(b) || b < 0.0) {
    throw DomainError("ConcentrationParam: b must be finite and >= 0, got " + std::to_string(b));
  }
}

std::string_view to_string(KernelBranch branch) {
  switch (branch) {
    case KernelBranch::closed_form: return "closed_form";
    case KernelBranch::lebesgue_sinc: return "lebesgue_sinc";
    case KernelBranch::quadrature_oracle: return "quadrature_oracle";
  }
  return "unknown";
}

KernelValue f_lebesgue(double r) {
  require_nonnegative_r(r, "f_lebesgue");
  if (r < 1e-4) {
    const double r2 = r * r;
    return {1.0 - r2 / 6.0 * (1.0 - r2 / 20.0), KernelBranch::lebesgue_sinc};
  }
  return {std::sin(r) / r, KernelBranch::lebesgue_sinc};
}

KernelValue f_closed(ConcentrationParam param, double r) {
  require_nonnegative_r(r, "f_closed");
  const double b = param.value();
  if (b == 0.0) throw DomainError("f_closed: b = 0 has no closed form here; use f_lebesgue");
  if (b < kLebesgueSwitch) return f_lebesgue(r);

  const double sb = std::sqrt(b);
  const double c = r / (2.0 * sb);
  // e^{-c^2} erf(sqrt(b) + ic) = e^{-c^2} - e^{-b} e^{-2i sqrt(b) c} w(i sqrt(b) - c),
  // and 2 sqrt(b) c = r.
  const specfun::ComplexValue w = specfun::faddeeva({-c, sb});
  const double rotated = std::cos(r) * w.real() + std::sin(r) * w.imag();
  const double bracket = 2.0 * std::exp(-c * c) - 2.0 * std::exp(-b) * rotated;
  return {kSqrtPi / (4.0 * sb) * bracket, KernelBranch::closed_form};
}

KernelValue f_quadrature(ConcentrationParam param, double r) {
  require_nonnegative_r(r, "f_quadrature");
  const double b = param.value();
  const auto integrand = [b, r](double s) { return std::cos(r * s) * std::exp(-b * s * s); };

  quadrature::QuadratureConfig cfg;
  cfg.rel_tol = 1e-14;

  std::vector<double> breaks{0.0};
  if (r > kOracleSplit) {
    for (int k = 0;; ++k) {
      const double zero = (k + 0.5) * std::numbers::pi / r;
      if (zero >= 1.0) break;
      breaks.push_back(zero);
    }
  }
  breaks.push_back(1.0);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    // Scaled to the piece length so the pieces' tolerances sum to ~2e-14.
    cfg.abs_tol = 2e-14 * (breaks[i + 1] - breaks[i]);
    total += quadrature::integrate_finite(integrand, breaks[i], breaks[i + 1], cfg).value;
  }
  return {total, KernelBranch::quadrature_oracle};
}

KernelValue f_value(ConcentrationParam b, double r) {
  return b.is_lebesgue() ? f_lebesgue(r) : f_closed(b, r);
}

double f_at_zero(ConcentrationParam param) {
  const double b = param.value();
  if (b < kLebesgueSwitch) return 1.0;
  const double sb = std::sqrt(b);
  return kSqrtPi * specfun::erf_real(sb) / (2.0 * sb);
}

double phi(ConcentrationParam b, double t) {
  if (t == 0.0) return 1.0;
  const double ratio = f_value(b, t).value / f_at_zero(b);
  return std::clamp(ratio, -1.0, 1.0);
}

namespace {

// int_0^1 s^{2k} e^{-b s^2} ds = e^{-b} sum_j (2b)^j / ((2k+1)(2k+3)...(2k+2j+1))
double even_moment(double b, int k) {
  double term = std::exp(-b) / (2.0 * k + 1.0);
  double sum = term;
  for (int j = 1; j < 4000; ++j) {
    term *= 2.0 * b / (2.0 * k + 2.0 * j + 1.0);
    sum += term;
    if (j > b && term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

double log_phi_near_zero(ConcentrationParam param, double t) {
  if (!(t >= 0.0) || t > kPhiSeriesMaxT) {
    throw DomainError("log_phi_near_zero: t must lie in [0, " + std::to_string(kPhiSeriesMaxT) +
                      "]");
  }
  if (param.value() > kPhiSeriesMaxB) {
    throw DomainError("log_phi_near_zero: b above " + std::to_string(kPhiSeriesMaxB));
  }
  if (t == 0.0) return 0.0;
  const double b = param.value() < kLebesgueSwitch ? 0.0 : param.value();
  // phi - 1 = sum_{k>=1} (-1)^k t^{2k} M_{2k} / ((2k)! M_0)
  const double t2 = t * t;
  double power = 1.0;  // t^{2k} / (2k)!
  double sum = 0.0;
  for (int k = 1; k < 40; ++k) {
    power *= t2 / ((2.0 * k - 1.0) * (2.0 * k));
    const double term = power * even_moment(b, k);
    sum += (k % 2 != 0) ? -term : term;
    if (term < 1e-18 * std::abs(sum)) break;
  }
  return std::log1p(sum / even_moment(b, 0));
}

}  // namespace cubesec::kernel
