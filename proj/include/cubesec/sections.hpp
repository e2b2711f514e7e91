#pragma once

// Measure A(u, gamma_n[b]) of the central hyperplane section of [-1, 1]^n
// orthogonal to u, under the truncated Gaussian probability measure with
// density proportional to exp(-b |x|^2).
//
// Normalization: A(u) = 2 * (density of <X, u> at 0), which for b = 0 is the
// (n-1)-volume of the central section of the unit cube [-1/2, 1/2]^n. The
// Fourier representation is
//
//   A(u) = (2/pi) * int_0^inf prod_j phi_b(r |u_j|) dr,
//
// which for the main diagonal becomes (2/pi) int_0^inf phi_b(r/sqrt(n))^n dr.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "cubesec/kernel.hpp"
#include "cubesec/quadrature.hpp"

namespace cubesec::sections {

using kernel::ConcentrationParam;
using quadrature::IntegralResult;
using quadrature::QuadratureConfig;

/// Unit vector in R^n.
class Direction {
 public:
  enum class Kind { diagonal, axis, two_coord, explicit_coords };

  /// (1, ..., 1) / sqrt(n)
  static Direction diagonal(int n);
  /// e_index, 0-based.
  static Direction axis(int n, int index = 0);
  /// (1, 1, 0, ..., 0) / sqrt(2); needs n >= 2.
  static Direction two_coord(int n);
  /// Arbitrary coordinates; the Euclidean norm must be 1 within 1e-12.
  static Direction from_coordinates(std::vector<double> coordinates);

  int dimension() const noexcept { return n_; }
  Kind kind() const noexcept { return kind_; }
  std::vector<double> coordinates() const;
  /// -u, always as explicit coordinates.
  Direction negated() const;

 private:
  Direction(int n, Kind kind, int axis_index, std::vector<double> coords);

  int n_;
  Kind kind_;
  int axis_index_ = 0;
  std::vector<double> coords_;  // explicit_coords only
};

std::string_view to_string(Direction::Kind kind);

struct SectionQuery {
  int n;
  ConcentrationParam b;
  Direction direction;
  QuadratureConfig quadrature{};
};

struct ScanRow {
  int n;
  double b;
  double value;
  double error_estimate;
};

/// Rows ordered by strictly increasing n.
struct ScanTable {
  std::vector<ScanRow> rows;
};

/// phi_b(r / sqrt(n))^n evaluated as sign * exp(n log|phi|); underflow
/// flushes to zero, so any n up to 10^6 is safe.
double integrand(int n, ConcentrationParam b, double r);

/// Section orthogonal to the main diagonal. Throws DimensionError for n < 2.
///
/// For n <= kAsymptoticTailMaxDimension the 1/r^n tail decays too slowly for
/// the rigorous bound to be usable; the integral is cut at a multiple of the
/// oscillation period and the remainder is taken from the large-r expansion
/// of f_b, with its truncation charged to error_estimate. Larger n use the
/// rigorous bound (sqrt(n)/f_b(0))^n R^{1-n} / (n - 1).
IntegralResult diagonal_section(int n, ConcentrationParam b, const QuadratureConfig& cfg = {});

inline constexpr int kAsymptoticTailMaxDimension = 4;

/// 1 / f_b(0): the exact section orthogonal to a coordinate axis.
double axis_section(ConcentrationParam b);

/// Section orthogonal to an arbitrary direction. Coordinates below 1e-12 in
/// magnitude drop out; a single remaining coordinate gives axis_section, and
/// k equal remaining coordinates reduce to diagonal_section(k).
IntegralResult direction_section(const SectionQuery& query);

/// gamma_n[b]({x in C^n : |<x, u>| <= t}) by nested adaptive quadrature,
/// n in {2, 3}. The innermost coordinate is integrated in closed form.
double slab_measure_oracle(int n, ConcentrationParam b, const Direction& u, double t);

struct SlabLimit {
  // lim_{t->0} slab / (2t): the density of <X, u> at 0.
  double density_at_zero;
  // 2 * density_at_zero, comparable with diagonal_section / direction_section.
  double section_measure;
  std::array<double, 3> half_widths;
  std::array<double, 3> quotients;
};

/// Extrapolates slab_measure_oracle(t) / (2t) to t -> 0 from
/// t in {1e-2, 5e-3, 2.5e-3}. Throws ExtrapolationError if the quotients do
/// not converge monotonically.
SlabLimit slab_limit_oracle(int n, ConcentrationParam b, const Direction& u);

/// One diagonal_section row per n in [n_min, n_max]. Rows may be computed on
/// several threads (0 = hardware concurrency); output order is always by n.
ScanTable scan(int n_min, int n_max, ConcentrationParam b, const QuadratureConfig& cfg = {},
               unsigned threads = 0);

}  // namespace cubesec::sections
