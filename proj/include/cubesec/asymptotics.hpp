#pragma once

// Large-n limit of the diagonal section and the identities behind it.
//
//   g(x) = e^{-x} sqrt(x) / (2 sqrt(pi) erf(sqrt(x)))
//   L(b) = 2 sqrt(b/pi) (1 - 4 g(b))^{-1/2}
//        = 2 sqrt(b/pi) + 4 sqrt(b/pi) sum_{k>=1} g(b)^k C(2k-1, k)

namespace cubesec::asymptotics {

/// Below this x, g and 1 - 4g come from their Maclaurin series.
inline constexpr double kSeriesSwitch = 1e-2;
/// Hard cap on the number of terms of the limit series.
inline constexpr int kMaxSeriesTerms = 100000;
/// Target for the geometric tail bound (4g)^{K+1} / (1 - 4g).
inline constexpr double kSeriesTailTarget = 1e-14;

struct LimitBreakdown {
  double b;
  double g_value;
  double one_minus_4g;
  double limit;
  double series_partial;
  int series_terms_used;
  // false when the tail bound was still above target at kMaxSeriesTerms
  bool series_converged;
};

/// Decreasing on (0, inf) from 1/4 to 0. Throws DomainError for x <= 0.
double g_function(double x);

/// 1 - 4 g(x) without cancellation for small x.
double one_minus_4g(double x);

/// Closed-form limit plus the series cross-check. K < 0 picks the number of
/// series terms from the tail bound (capped at kMaxSeriesTerms).
LimitBreakdown limit_value(double b, int K = -1);

/// Partial sum of the limit series through k = K.
double limit_series_partial(double b, int K);

/// Smallest K whose geometric tail bound is below kSeriesTailTarget.
/// Throws Error when that exceeds kMaxSeriesTerms.
int limit_series_terms(double b);

struct CatalanSums {
  double partial;
  double closed;
};

/// sum_{k=1}^K a^k C(2k-1, k) and 1/2 (1/sqrt(1 - 4a) - 1). Needs |a| < 1/4.
CatalanSums catalan_series(double a, int K);

/// int_0^inf e^{-r^2/(4b)} r^p dr = 2^{p/2} sqrt(pi) b^{(p+1)/2} (p-1)!! for
/// even p >= 0. Odd p throws DomainError.
double gaussian_half_moment(double b, int p);

/// Coefficients of c^0, c^2, c^4, c^6 in erf(sqrt(b) - ic) + erf(sqrt(b) + ic).
struct TaylorCoeffs {
  double c0;
  double c2;
  double c4;
  double c6;
};

TaylorCoeffs taylor_coeffs(double b);

}  // namespace cubesec::asymptotics
