#include "cubesec/sections.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "cubesec/error.hpp"

namespace cubesec::sections {

namespace {

constexpr double kPi = std::numbers::pi;
// exp() of anything below this is subnormal or zero.
const double kLogMin = std::log(std::numeric_limits<double>::min());
constexpr double kCoordinateFloor = 1e-12;
// Upper limit on the cut point T (in units of t = r / sqrt(n)) for the
// asymptotic-tail route; beyond it the remainder estimate is reported as is.
constexpr double kMaxAsymptoticCut = 2.0e5;

double effective_b(ConcentrationParam b) {
  return b.value() < kernel::kLebesgueSwitch ? 0.0 : b.value();
}

QuadratureConfig oscillatory_config(const QuadratureConfig& base, double half_period) {
  QuadratureConfig cfg = base;
  const double width = half_period / 4.0;
  if (cfg.initial_panel_width <= 0.0 || cfg.initial_panel_width > width) {
    cfg.initial_panel_width = width;
  }
  return cfg;
}

// Mean of sin^n over a period: C(n, n/2) / 2^n for even n, 0 for odd n.
double sine_power_mean(int n) {
  if (n % 2 != 0) return 0.0;
  double m = 1.0;
  for (int i = 1; i <= n / 2; ++i) m *= static_cast<double>(n / 2 + i) / (4.0 * i);
  return m;
}

// Large-t behaviour: phi_b(t) = kappa [sin t / t - 2b cos t / t^2 + O(t^-3)]
// with kappa = e^{-b} / f_b(0). At a cut T = k pi the n-th power integrates to
// kappa^n m_n T^{1-n} / (n - 1) plus terms of relative order 1/T.
struct AsymptoticTail {
  double value;
  double remainder;
};

AsymptoticTail asymptotic_tail(int n, double b, double kappa_n, double cut) {
  const double root_n = std::sqrt(static_cast<double>(n));
  const double value =
      root_n * kappa_n * sine_power_mean(n) * std::pow(cut, 1 - n) / (n - 1);
  const double lead = (n % 2 != 0) ? 2.0 * std::pow(cut, -n) : 2.0 * std::pow(cut, -n - 1);
  const double next = (2.0 * b + 4.0 * n * (1.0 + b) * (1.0 + b)) * std::pow(cut, -n - 1);
  return {value, root_n * kappa_n * (lead + next)};
}

IntegralResult diagonal_small_n(int n, ConcentrationParam b, const QuadratureConfig& base) {
  const double root_n = std::sqrt(static_cast<double>(n));
  const double beff = effective_b(b);
  const double kappa_n = std::pow(std::exp(-beff) / kernel::f_at_zero(b), n);
  // The integral is O(1); aim the remainder at half the tolerance.
  const double target = 0.5 * std::max(base.abs_tol, base.rel_tol);

  double cut = 64.0 * kPi;
  while (asymptotic_tail(n, beff, kappa_n, cut).remainder > target && cut < kMaxAsymptoticCut) {
    cut *= 2.0;
  }
  const AsymptoticTail tail = asymptotic_tail(n, beff, kappa_n, cut);
  const double radius = cut * root_n;

  const QuadratureConfig cfg = oscillatory_config(base, kPi * root_n);
  const auto h = [n, b](double r) { return integrand(n, b, r); };
  IntegralResult head = quadrature::integrate_finite(h, 0.0, radius, cfg);

  IntegralResult result;
  result.value = head.value + tail.value;
  result.error_estimate = head.error_estimate + tail.remainder;
  result.truncation_radius = radius;
  result.evaluations = head.evaluations;
  return result;
}

IntegralResult diagonal_large_n(int n, ConcentrationParam b, const QuadratureConfig& base) {
  const double root_n = std::sqrt(static_cast<double>(n));
  QuadratureConfig cfg = oscillatory_config(base, kPi * root_n);
  cfg.initial_truncation_radius =
      std::max(cfg.initial_truncation_radius, 8.0 * std::sqrt(b.value() * n));

  // |f_b(r)| <= 1/r gives |integrand| <= (sqrt(n) / (f_b(0) r))^n.
  const double log_scale = std::log(root_n / kernel::f_at_zero(b));
  const auto bound = [n, log_scale](double radius) {
    const double log_bound =
        n * (log_scale - std::log(radius)) + std::log(radius / (n - 1));
    return log_bound < kLogMin ? 0.0 : std::exp(log_bound);
  };
  const auto h = [n, b](double r) { return integrand(n, b, r); };
  return quadrature::integrate_semi_infinite(h, cfg, bound);
}

IntegralResult scaled(IntegralResult r, double factor) {
  r.value *= factor;
  r.error_estimate *= factor;
  return r;
}

// Applies the 2/pi normalization, also to partial results carried by errors.
template <typename F>
IntegralResult normalized(F&& compute) {
  const double factor = 2.0 / kPi;
  try {
    return scaled(compute(), factor);
  } catch (const quadrature::NonConvergenceError& e) {
    throw quadrature::NonConvergenceError(e.what(), scaled(e.partial(), factor));
  } catch (const quadrature::DivergenceError& e) {
    throw quadrature::DivergenceError(e.what(), scaled(e.partial(), factor));
  }
}

IntegralResult general_direction(const std::vector<double>& magnitudes, ConcentrationParam b,
                                 const QuadratureConfig& base) {
  const int k = static_cast<int>(magnitudes.size());
  const double largest = magnitudes.back();
  QuadratureConfig cfg = oscillatory_config(base, kPi / largest);
  cfg.initial_truncation_radius =
      std::max(cfg.initial_truncation_radius, 8.0 * std::sqrt(b.value() * k));

  const auto h = [&magnitudes, b](double r) {
    double log_sum = 0.0;
    bool negative = false;
    for (double u : magnitudes) {
      const double p = kernel::phi(b, r * u);
      if (p == 0.0) return 0.0;
      negative ^= (p < 0.0);
      log_sum += std::log(std::abs(p));
    }
    if (log_sum < kLogMin) return 0.0;
    return negative ? -std::exp(log_sum) : std::exp(log_sum);
  };

  double log_coeff = -k * std::log(kernel::f_at_zero(b)) - std::log(k - 1.0);
  for (double u : magnitudes) log_coeff -= std::log(u);
  const auto bound = [k, log_coeff](double radius) {
    const double log_bound = log_coeff + (1 - k) * std::log(radius);
    return log_bound < kLogMin ? 0.0 : std::exp(log_bound);
  };
  return quadrature::integrate_semi_infinite(h, cfg, bound);
}

}  // namespace

double integrand(int n, ConcentrationParam b, double r) {
  if (n < 1) throw DimensionError("integrand: n must be >= 1");
  if (r == 0.0) return 1.0;
  const double t = r / std::sqrt(static_cast<double>(n));
  if (t <= kernel::kPhiSeriesMaxT && b.value() <= kernel::kPhiSeriesMaxB) {
    const double log_mag = n * kernel::log_phi_near_zero(b, t);
    return log_mag < kLogMin ? 0.0 : std::exp(log_mag);
  }
  const double p = kernel::phi(b, t);
  if (p == 0.0) return 0.0;
  const double log_mag = n * std::log(std::abs(p));
  if (log_mag < kLogMin) return 0.0;
  const bool negative = p < 0.0 && n % 2 != 0;
  return negative ? -std::exp(log_mag) : std::exp(log_mag);
}

IntegralResult diagonal_section(int n, ConcentrationParam b, const QuadratureConfig& cfg) {
  if (n < 2) {
    throw DimensionError("diagonal_section: n = " + std::to_string(n) +
                         " < 2; the n = 1 integral only converges conditionally, use "
                         "axis_section");
  }
  cfg.validate();
  return normalized([&] {
    return n <= kAsymptoticTailMaxDimension ? diagonal_small_n(n, b, cfg)
                                            : diagonal_large_n(n, b, cfg);
  });
}

double axis_section(ConcentrationParam b) { return 1.0 / kernel::f_at_zero(b); }

IntegralResult direction_section(const SectionQuery& query) {
  if (query.direction.dimension() != query.n) {
    throw DimensionError("direction_section: direction has dimension " +
                         std::to_string(query.direction.dimension()) + ", query n = " +
                         std::to_string(query.n));
  }
  query.quadrature.validate();
  if (query.direction.kind() == Direction::Kind::diagonal) {
    if (query.n == 1) {
      IntegralResult axis;
      axis.value = axis_section(query.b);
      axis.evaluations = 1;
      return axis;
    }
    return diagonal_section(query.n, query.b, query.quadrature);
  }

  std::vector<double> magnitudes;
  for (double c : query.direction.coordinates()) {
    if (std::abs(c) >= kCoordinateFloor) magnitudes.push_back(std::abs(c));
  }
  // Only the multiset of |u_j| matters; a canonical order makes the result
  // bit-identical under permutations and sign flips.
  std::sort(magnitudes.begin(), magnitudes.end());

  if (magnitudes.size() == 1) {
    IntegralResult axis;
    axis.value = axis_section(query.b);
    axis.error_estimate = 4.0 * std::numeric_limits<double>::epsilon() * axis.value;
    axis.evaluations = 1;
    return axis;
  }
  const double lo = magnitudes.front();
  const double hi = magnitudes.back();
  if (hi - lo <= 1e-12 * hi) {
    return diagonal_section(static_cast<int>(magnitudes.size()), query.b, query.quadrature);
  }
  return normalized([&] { return general_direction(magnitudes, query.b, query.quadrature); });
}

ScanTable scan(int n_min, int n_max, ConcentrationParam b, const QuadratureConfig& cfg,
               unsigned threads) {
  if (n_min < 2 || n_max < n_min) {
    throw DimensionError("scan: need 2 <= n_min <= n_max");
  }
  const auto count = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<ScanRow> rows(count);
  std::vector<std::exception_ptr> failures(count);

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      const int n = n_min + static_cast<int>(i);
      try {
        const IntegralResult r = diagonal_section(n, b, cfg);
        rows[i] = {n, b.value(), r.value, r.error_estimate};
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  for (const ScanRow& row : rows) {
    if (!(row.value > 0.0)) {
      throw Error("scan: non-positive section value at n = " + std::to_string(row.n));
    }
  }
  return ScanTable{std::move(rows)};
}

}  // namespace cubesec::sections
