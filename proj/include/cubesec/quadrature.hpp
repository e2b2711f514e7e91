#pragma once

// Adaptive Gauss-Kronrod (7/15) integration on finite intervals and on
// [0, inf) with explicit truncation accounting.

#include <cstddef>
#include <functional>
#include <limits>

#include "cubesec/error.hpp"

namespace cubesec::quadrature {

using Integrand = std::function<double(double)>;
using TailBound = std::function<double(double)>;

struct QuadratureConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_subdivisions = 10'000;
  double initial_truncation_radius = 64.0;
  double truncation_growth = 2.0;
  // Width of the panels the interval is pre-split into before adaptive
  // bisection starts; 0 means a single initial panel. Oscillatory callers
  // set this to at most half the oscillation period.
  double initial_panel_width = 0.0;

  /// Throws DomainError if any field violates its invariant.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  // Absolute; for semi-infinite integrals it includes the tail allowance.
  double error_estimate = 0.0;
  // Only meaningful for semi-infinite integrals; +inf for finite ones.
  double truncation_radius = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  // True when truncation was decided by the doubling heuristic instead of a
  // caller-supplied analytic tail bound.
  bool heuristic_tail = false;
};

/// Tolerance not reached within max_subdivisions (or the truncation radius
/// cap). The best available result is carried along with its honest estimate.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, IntegralResult partial)
      : Error(what), partial_(partial) {}
  const IntegralResult& partial() const noexcept { return partial_; }

 private:
  IntegralResult partial_;
};

/// Successive truncation doublings keep adding non-shrinking contributions.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, IntegralResult partial)
      : Error(what), partial_(partial) {}
  const IntegralResult& partial() const noexcept { return partial_; }

 private:
  IntegralResult partial_;
};

/// Integral of f over [lo, hi] to max(abs_tol, rel_tol * |value|).
IntegralResult integrate_finite(const Integrand& f, double lo, double hi,
                                const QuadratureConfig& cfg = {});

/// Integral of f over [0, inf).
///
/// Integrates [0, R] and keeps extending to [R, growth * R]. With a tail bound
/// the loop stops once tail_bound(R) is below tolerance and the bound is added
/// to the error estimate. Without one, it stops after two consecutive
/// extensions whose contribution is below rel_tol * |accumulated|, and the
/// result is marked heuristic.
IntegralResult integrate_semi_infinite(const Integrand& f, const QuadratureConfig& cfg = {},
                                       const TailBound& tail_bound = {});

/// Largest number of truncation extensions integrate_semi_infinite attempts.
inline constexpr int kMaxTruncationExtensions = 40;
/// Extensions with non-shrinking increments that count as divergence.
inline constexpr int kDivergenceStreak = 15;

}  // namespace cubesec::quadrature
