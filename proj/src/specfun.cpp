#include "cubesec/specfun.hpp"

#include <cmath>
#include <numeric>
#include <numbers>
#include <string>

#include "cubesec/error.hpp"

namespace cubesec::specfun {

namespace {

// Below this modulus erf(z) is summed directly; above it the Faddeeva route
// has no cancellation worth worrying about.
constexpr double kSeriesRadius = 0.5;

ComplexValue erf_maclaurin(ComplexValue z) {
  // 2/sqrt(pi) * sum_k (-1)^k z^(2k+1) / (k! (2k+1))
  const ComplexValue z2 = z * z;
  ComplexValue power = z;
  ComplexValue sum = z;
  for (int k = 1; k < 60; ++k) {
    power *= -z2 / static_cast<double>(k);
    const ComplexValue term = power / static_cast<double>(2 * k + 1);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return 2.0 * std::numbers::inv_sqrtpi * sum;
}

}  // namespace

double erf_real(double x) {
  // Evaluate on |x| and restore the sign so oddness holds bit for bit.
  const double v = std::erf(std::abs(x));
  return std::signbit(x) ? -v : v;
}

ComplexValue erf_complex(ComplexValue z) {
  const double x = z.real();
  const double y = z.imag();
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("erf_complex: non-finite argument");
  }
  if (y == 0.0) return {erf_real(x), 0.0};
  if (x < 0.0) return -erf_complex(-z);
  if (y * y - x * x > kMaxErfExponent) {
    throw OverflowError("erf_complex: Im(z)^2 - Re(z)^2 = " +
                        std::to_string(y * y - x * x) + " exceeds " +
                        std::to_string(kMaxErfExponent));
  }
  if (std::abs(z) < kSeriesRadius) return erf_maclaurin(z);

  // erf(z) = 1 - exp(-z^2) w(iz); iz = -y + ix lies in the upper half-plane.
  const ComplexValue w = faddeeva({-y, x});
  const double log_mag = (y * y - x * x) + std::log(std::abs(w));
  const double phase = -2.0 * x * y + std::arg(w);
  return 1.0 - std::polar(std::exp(log_mag), phase);
}

std::uint64_t double_factorial(int k) {
  if (k < -1) throw DomainError("double_factorial: k = " + std::to_string(k) + " < -1");
  if (k > kMaxExactDoubleFactorial) {
    throw OverflowError("double_factorial: " + std::to_string(k) +
                        "!! exceeds the exact-integer range");
  }
  std::uint64_t result = 1;
  for (int i = k; i > 1; i -= 2) result *= static_cast<std::uint64_t>(i);
  return result;
}

double double_factorial_real(int k) {
  if (k <= kMaxExactDoubleFactorial) return static_cast<double>(double_factorial(k));
  double result = static_cast<double>(double_factorial(k % 2 == 0 ? 28 : 29));
  for (int i = k; i > kMaxExactDoubleFactorial; i -= 2) result *= i;
  return result;
}

std::uint64_t central_binomial_shifted_exact(int k) {
  if (k < 1) throw DomainError("central_binomial_shifted: k = " + std::to_string(k) + " < 1");
  if (k > kMaxExactCentralBinomial) {
    throw OverflowError("central_binomial_shifted: C(2k-1, k) for k = " +
                        std::to_string(k) + " leaves the exact range");
  }
  // C(k - 1 + i, i) built up incrementally; each partial value is an integer.
  // Dividing out gcd(c, i) first keeps every intermediate below C(2k-1, k).
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(k); ++i) {
    const std::uint64_t g = std::gcd(c, i);
    c = (c / g) * ((static_cast<std::uint64_t>(k) - 1 + i) / (i / g));
  }
  return c;
}

double central_binomial_shifted(int k) {
  if (k <= kMaxExactCentralBinomial) {
    return static_cast<double>(central_binomial_shifted_exact(k));
  }
  // C(2k+1, k+1) = C(2k-1, k) * 2(2k+1)/(k+1)
  double c = static_cast<double>(central_binomial_shifted_exact(kMaxExactCentralBinomial));
  for (int j = kMaxExactCentralBinomial; j < k; ++j) {
    c *= 2.0 * (2.0 * j + 1.0) / (j + 1.0);
  }
  return c;
}

}  // namespace cubesec::specfun
