#pragma once

// The scalar kernel f_b(r) = int_0^1 cos(r s) exp(-b s^2) ds and the ratio
// phi_b(t) = f_b(t) / f_b(0), which is the characteristic function of one
// coordinate of the truncated Gaussian measure on [-1, 1].

#include <string_view>

namespace cubesec::kernel {

/// Gaussian weight b >= 0; b = 0 is the uniform (Lebesgue) measure.
class ConcentrationParam {
 public:
  /// Throws DomainError for negative or non-finite b.
  explicit ConcentrationParam(double b);

  double value() const noexcept { return b_; }
  bool is_lebesgue() const noexcept { return b_ == 0.0; }

  friend bool operator==(ConcentrationParam, ConcentrationParam) = default;

 private:
  double b_;
};

enum class KernelBranch { closed_form, lebesgue_sinc, quadrature_oracle };

std::string_view to_string(KernelBranch branch);

struct KernelValue {
  double value;
  KernelBranch branch;
};

/// Below this b the closed form hands over to sin(r)/r; the committed error
/// is at most b.
inline constexpr double kLebesgueSwitch = 1e-7;

/// Closed form through the complex error function, evaluated as
///   (sqrt(pi) / (4 sqrt(b))) * [2 e^{-c^2} - 2 e^{-b} Re(e^{-ir} w(i sqrt(b) - c))]
/// with c = r / (2 sqrt(b)); every term is bounded, so this never overflows.
/// Throws DomainError when b == 0 (use f_lebesgue) or r < 0.
KernelValue f_closed(ConcentrationParam b, double r);

/// Direct adaptive quadrature of the defining integral. For r > 50 the
/// interval is split at the zeros of cos(r s). Absolute accuracy ~1e-13.
KernelValue f_quadrature(ConcentrationParam b, double r);

/// sin(r) / r with the removable singularity filled in.
KernelValue f_lebesgue(double r);

/// f_b(r) through whichever of f_lebesgue / f_closed applies.
KernelValue f_value(ConcentrationParam b, double r);

/// f_b(0) = sqrt(pi) erf(sqrt(b)) / (2 sqrt(b)), and 1 on the Lebesgue branch.
double f_at_zero(ConcentrationParam b);

/// f_b(t) / f_b(0); exactly 1 at t = 0 and clamped to [-1, 1].
double phi(ConcentrationParam b, double t);

/// Range of log_phi_near_zero.
inline constexpr double kPhiSeriesMaxT = 1.0;
inline constexpr double kPhiSeriesMaxB = 200.0;

/// log phi_b(t) for 0 <= t <= kPhiSeriesMaxT and b <= kPhiSeriesMaxB, summed
/// from the even moments of the weight so that phi_b - 1 keeps full relative
/// accuracy as t -> 0. Raising phi to the power n = 10^6 needs this.
double log_phi_near_zero(ConcentrationParam b, double t);

}  // namespace cubesec::kernel
