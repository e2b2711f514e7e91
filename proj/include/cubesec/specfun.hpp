#pragma once

// Special-function engine: real and complex error functions, the Faddeeva
// function w(z) = exp(-z^2) erfc(-iz), and the integer sequences used by the
// moment and series identities.
//
// All functions are pure and re-entrant.

#include <complex>
#include <cstdint>

namespace cubesec::specfun {

using ComplexValue = std::complex<double>;

/// Largest k for which k!! is exactly representable as a double.
inline constexpr int kMaxExactDoubleFactorial = 29;
/// Largest k for which C(2k-1, k) is computed in exact 64-bit arithmetic.
inline constexpr int kMaxExactCentralBinomial = 31;
/// Bound on Im(z)^2 - Re(z)^2 accepted by erf_complex.
inline constexpr double kMaxErfExponent = 700.0;

/// erf(x) for real x. Odd to the last bit, |erf(x)| < 1 for finite x.
double erf_real(double x);

/// Faddeeva function w(z) on the closed upper half-plane.
/// Throws DomainError when Im(z) < 0; use the reflection
/// w(-z) = 2 exp(-z^2) - w(z) to reach the lower half-plane.
ComplexValue faddeeva(ComplexValue z);

/// Complex error function.
///
/// Away from the origin this is 1 - exp(-z^2) w(iz), with the magnitudes of
/// exp(-z^2) and w(iz) combined in log space before exponentiating. Near the
/// origin the Maclaurin series is used to avoid the cancellation in 1 - (...).
/// Throws OverflowError when Im(z)^2 - Re(z)^2 > kMaxErfExponent.
ComplexValue erf_complex(ComplexValue z);

/// k!! for k >= -1, with (-1)!! = 0!! = 1.
/// Throws DomainError for k < -1 and OverflowError for k > 29.
std::uint64_t double_factorial(int k);

/// k!! in floating point for any k >= -1 (exact for k <= 29).
double double_factorial_real(int k);

/// C(2k - 1, k) in exact integer arithmetic for 1 <= k <= 31.
/// Throws DomainError for k < 1 and OverflowError for k > 31.
std::uint64_t central_binomial_shifted_exact(int k);

/// C(2k - 1, k) as a double; exact integer path for k <= 31, floating beyond.
double central_binomial_shifted(int k);

namespace detail {

// Branches of the Faddeeva evaluation, exposed so tests can check that they
// agree on their common boundary. Both expect x >= 0, y >= 0.
ComplexValue faddeeva_power_series(double x, double y);
ComplexValue faddeeva_continued_fraction(double x, double y);

// Region selector used by faddeeva(): (x/6.3)^2 + (y/4.4)^2.
double faddeeva_region_radius(double x, double y);
inline constexpr double kPowerSeriesRegion = 0.085264;

}  // namespace detail

}  // namespace cubesec::specfun
