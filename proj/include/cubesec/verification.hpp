#pragma once

// The acceptance checks, shared by `cubesec verify` and the acceptance test.

#include <string>
#include <string_view>
#include <vector>

namespace cubesec::verification {

struct CriterionResult {
  int number;
  std::string id;
  std::string title;
  bool passed;
  // Reported but not counted against the run.
  bool exploratory;
  std::string detail;
  double seconds;
};

struct Report {
  std::vector<CriterionResult> items;

  /// True when every non-exploratory item passed.
  bool passed() const;
};

/// Ids in criterion order: kernel_closed_form, convergence, lebesgue,
/// scan_shape, g_monotone, catalan, moments, taylor, definition, lambda0, extreme.
std::vector<std::string> criterion_ids();

/// Runs one criterion. Throws DomainError for an unknown id. Exceptions from
/// the numerics are caught and turned into a failed result.
CriterionResult run_criterion(std::string_view id);

/// Runs the named criteria (all of them when `only` is empty), in order.
Report run(const std::vector<std::string>& only = {});

/// Root of L(b) - A_two(b) on [lo, hi], where A_two is the section orthogonal
/// to (1, 1, 0, ..., 0) / sqrt(2) (independent of n) and L is the diagonal
/// limit. Bisection to width tol.
struct Crossing {
  double root;
  double gap_lo;  // L - A_two at the final lower end
  double gap_hi;  // L - A_two at the final upper end
  int iterations;
};

/// Throws BracketError when L - A_two has the same sign at both ends.
Crossing lambda0_crossing(double lo, double hi, double tol);

/// The threshold value quoted in the literature.
inline constexpr double kLambda0Reference = 0.1962627;

}  // namespace cubesec::verification
