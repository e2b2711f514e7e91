#include "cubesec/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cubesec/error.hpp"
#include "cubesec/specfun.hpp"

namespace cubesec::asymptotics {

namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// g(x) = sum_k kG[k] x^k
constexpr std::array<double, 10> kG{
    1.0 / 4.0,          -1.0 / 6.0,           2.0 / 45.0,
    -4.0 / 945.0,       -8.0 / 14175.0,       16.0 / 93555.0,
    736.0 / 638512875.0, -1472.0 / 273648375.0, 20096.0 / 44405668125.0,
    24845056.0 / 194896477400625.0};

// (1 - 4 g(x)) / x = sum_k kH[k] x^k
constexpr std::array<double, 10> kH{
    2.0 / 3.0,           -8.0 / 45.0,           16.0 / 945.0,
    32.0 / 14175.0,      -64.0 / 93555.0,       -2944.0 / 638512875.0,
    5888.0 / 273648375.0, -80384.0 / 44405668125.0, -99380224.0 / 194896477400625.0,
    3306665984.0 / 32157918771103125.0};

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be finite and > 0");
  }
}

}  // namespace

double g_function(double x) {
  require_positive(x, "g_function");
  if (x < kSeriesSwitch) return horner(kG, x);
  const double sx = std::sqrt(x);
  return std::exp(-x) * sx * kInvSqrtPi / (2.0 * specfun::erf_real(sx));
}

double one_minus_4g(double x) {
  require_positive(x, "one_minus_4g");
  if (x < kSeriesSwitch) return x * horner(kH, x);
  return 1.0 - 4.0 * g_function(x);
}

double limit_series_partial(double b, int K) {
  require_positive(b, "limit_series_partial");
  if (K < 0) throw DomainError("limit_series_partial: K must be >= 0");
  const double g = g_function(b);
  const double lead = 2.0 * std::sqrt(b) * kInvSqrtPi;
  // t_k = g^k C(2k-1, k);  t_{k+1} / t_k = 2 g (2k + 1) / (k + 1)
  double term = g;
  double sum = 0.0;
  for (int k = 1; k <= K; ++k) {
    sum += term;
    term *= 2.0 * g * (2.0 * k + 1.0) / (k + 1.0);
  }
  return lead + 2.0 * lead * sum;
}

namespace {

// Smallest K with (4g)^{K+1} / (1 - 4g) below target, or -1 past the cap.
int terms_for_tail(double b) {
  const double q = 1.0 - one_minus_4g(b);  // 4g
  const double log_needed = std::log(kSeriesTailTarget * one_minus_4g(b));
  const double k = std::ceil(log_needed / std::log(q)) - 1.0;
  if (!(k <= kMaxSeriesTerms)) return -1;
  return std::max(0, static_cast<int>(k));
}

}  // namespace

int limit_series_terms(double b) {
  require_positive(b, "limit_series_terms");
  const int K = terms_for_tail(b);
  if (K < 0) {
    throw Error("limit_series_terms: more than " + std::to_string(kMaxSeriesTerms) +
                " terms needed at b = " + std::to_string(b));
  }
  return K;
}

LimitBreakdown limit_value(double b, int K) {
  require_positive(b, "limit_value");
  LimitBreakdown out{};
  out.b = b;
  out.g_value = g_function(b);
  out.one_minus_4g = one_minus_4g(b);
  out.limit = 2.0 * std::sqrt(b) * kInvSqrtPi / std::sqrt(out.one_minus_4g);
  if (K < 0) {
    const int auto_k = terms_for_tail(b);
    out.series_converged = auto_k >= 0;
    out.series_terms_used = out.series_converged ? auto_k : kMaxSeriesTerms;
  } else {
    out.series_terms_used = K;
    out.series_converged =
        std::pow(1.0 - out.one_minus_4g, K + 1.0) / out.one_minus_4g < kSeriesTailTarget;
  }
  out.series_partial = limit_series_partial(b, out.series_terms_used);
  return out;
}

CatalanSums catalan_series(double a, int K) {
  if (!(std::abs(a) < 0.25)) throw DomainError("catalan_series: need |a| < 1/4");
  if (K < 0) throw DomainError("catalan_series: K must be >= 0");
  double term = a;
  double sum = 0.0;
  for (int k = 1; k <= K; ++k) {
    sum += term;
    term *= 2.0 * a * (2.0 * k + 1.0) / (k + 1.0);
  }
  // 1/2 (1/sqrt(1 - 4a) - 1) = 1/2 expm1(-1/2 log(1 - 4a))
  const double closed = 0.5 * std::expm1(-0.5 * std::log1p(-4.0 * a));
  return {sum, closed};
}

double gaussian_half_moment(double b, int p) {
  require_positive(b, "gaussian_half_moment");
  if (p < 0 || p % 2 != 0) {
    throw DomainError("gaussian_half_moment: p must be even and >= 0, got " + std::to_string(p));
  }
  const double scale = std::pow(2.0, p / 2) / kInvSqrtPi * std::pow(b, (p + 1) / 2.0);
  return scale * specfun::double_factorial_real(p - 1);
}

TaylorCoeffs taylor_coeffs(double b) {
  require_positive(b, "taylor_coeffs");
  const double sb = std::sqrt(b);
  const double e = sb * std::exp(-b) * kInvSqrtPi;
  return {2.0 * specfun::erf_real(sb), 4.0 * e, 2.0 * e * (3.0 - 2.0 * b) / 3.0,
          2.0 * e * (4.0 * b * b - 20.0 * b + 15.0) / 45.0};
}

}  // namespace cubesec::asymptotics
