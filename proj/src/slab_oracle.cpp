// Brute-force check of the section formula straight from its definition:
// the probability of a thin slab |<x, u>| <= t, divided by 2t, as t -> 0.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cubesec/error.hpp"
#include "cubesec/sections.hpp"
#include "cubesec/specfun.hpp"

namespace cubesec::sections {

namespace {

struct TruncatedGaussian {
  double b;       // 0 on the Lebesgue branch
  double sqrt_b;
  double erf_sqrt_b;

  explicit TruncatedGaussian(ConcentrationParam param)
      : b(param.value() < kernel::kLebesgueSwitch ? 0.0 : param.value()),
        sqrt_b(std::sqrt(b)),
        erf_sqrt_b(specfun::erf_real(sqrt_b)) {}

  double density(double x) const {
    if (b == 0.0) return 0.5;
    // e^{-b x^2} / int_{-1}^{1} e^{-b s^2} ds
    return std::exp(-b * x * x) * sqrt_b / (std::sqrt(std::numbers::pi) * erf_sqrt_b);
  }

  // Probability of [lo, hi] intersected with [-1, 1].
  double interval(double lo, double hi) const {
    lo = std::max(lo, -1.0);
    hi = std::min(hi, 1.0);
    if (!(hi > lo)) return 0.0;
    if (b == 0.0) return 0.5 * (hi - lo);
    return (specfun::erf_real(sqrt_b * hi) - specfun::erf_real(sqrt_b * lo)) /
           (2.0 * erf_sqrt_b);
  }
};

std::vector<double> breakpoints(std::vector<double> candidates) {
  std::vector<double> pts{-1.0, 1.0};
  for (double c : candidates) {
    if (c > -1.0 && c < 1.0) pts.push_back(c);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double integrate_pieces(const quadrature::Integrand& f, const std::vector<double>& pts,
                        const QuadratureConfig& cfg) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    total += quadrature::integrate_finite(f, pts[i], pts[i + 1], cfg).value;
  }
  return total;
}

QuadratureConfig inner_config() {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-15;
  return cfg;
}

QuadratureConfig outer_config() {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  return cfg;
}

}  // namespace

double slab_measure_oracle(int n, ConcentrationParam b, const Direction& u, double t) {
  if (n != 2 && n != 3) throw DimensionError("slab_measure_oracle: n must be 2 or 3");
  if (u.dimension() != n) throw DimensionError("slab_measure_oracle: direction dimension mismatch");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("slab_measure_oracle: t must be > 0");

  // Innermost coordinate: the one with the largest |u_j|, made positive.
  std::vector<double> v = u.coordinates();
  const auto inner_it =
      std::max_element(v.begin(), v.end(), [](double a, double c) { return std::abs(a) < std::abs(c); });
  if (*inner_it < 0.0) {
    for (double& c : v) c = -c;
  }
  const double c = *inner_it;
  v.erase(inner_it);

  const TruncatedGaussian g(b);
  const auto slab_given = [&g, c, t](double shift) {
    // P(|shift + c x| <= t) for the innermost coordinate x.
    return g.interval((-t - shift) / c, (t - shift) / c);
  };

  if (n == 2) {
    const double a = v[0];
    std::vector<double> cand;
    if (a != 0.0) {
      for (double s1 : {-1.0, 1.0}) {
        for (double s2 : {-1.0, 1.0}) cand.push_back((s1 * t - s2 * c) / a);
      }
    }
    const auto f = [&](double x) { return g.density(x) * slab_given(a * x); };
    return integrate_pieces(f, breakpoints(cand), outer_config());
  }

  const double a1 = v[0];
  const double a2 = v[1];
  std::vector<double> outer_cand;
  if (a1 != 0.0) {
    for (double s1 : {-1.0, 1.0}) {
      for (double s2 : {-1.0, 1.0}) {
        for (double s3 : {-1.0, 1.0}) outer_cand.push_back((s1 * t + s2 * a2 + s3 * c) / a1);
      }
    }
  }
  const QuadratureConfig icfg = inner_config();
  const auto middle = [&](double x1) {
    std::vector<double> cand;
    if (a2 != 0.0) {
      for (double s1 : {-1.0, 1.0}) {
        for (double s2 : {-1.0, 1.0}) cand.push_back((s1 * t - a1 * x1 - s2 * c) / a2);
      }
    }
    const auto f = [&](double x2) { return g.density(x2) * slab_given(a1 * x1 + a2 * x2); };
    return g.density(x1) * integrate_pieces(f, breakpoints(cand), icfg);
  };
  return integrate_pieces(middle, breakpoints(outer_cand), outer_config());
}

SlabLimit slab_limit_oracle(int n, ConcentrationParam b, const Direction& u) {
  SlabLimit out{};
  out.half_widths = {1e-2, 5e-3, 2.5e-3};
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = out.half_widths[i];
    out.quotients[i] = slab_measure_oracle(n, b, u, t) / (2.0 * t);
  }
  const auto& q = out.quotients;
  const double d1 = q[1] - q[0];
  const double d2 = q[2] - q[1];
  const double noise = 1e-9 * std::abs(q[2]);
  const bool shrinking = std::abs(d2) <= std::abs(d1) + noise;
  const bool same_side = d1 * d2 >= 0.0 || std::abs(d2) <= noise;
  if (!shrinking || !same_side) {
    throw ExtrapolationError("slab_limit_oracle: difference quotients are not converging "
                             "monotonically");
  }

  // The slab density can have a kink at 0 (n = 2 diagonal), so the quotient
  // carries odd powers of t as well; extrapolate the quadratic through all
  // three points rather than assuming an expansion in t^2.
  const auto& h = out.half_widths;
  double limit = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    double weight = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) weight *= (0.0 - h[j]) / (h[i] - h[j]);
    }
    limit += weight * q[i];
  }
  out.density_at_zero = limit;
  out.section_measure = 2.0 * limit;
  return out;
}

}  // namespace cubesec::sections
