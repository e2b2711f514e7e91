#include "cubesec/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

namespace cubesec::quadrature {

namespace {

// Kronrod abscissae; odd indices (and the centre) are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

// Max-heap on error; ties broken by position so the refinement order is a
// pure function of the inputs.
bool panel_less(const Panel& a, const Panel& b) {
  if (a.error != b.error) return a.error < b.error;
  return a.lo > b.lo;
}

double eval_checked(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand is not finite at x = " << x;
    throw DomainError(os.str());
  }
  return v;
}

// One 15-point Kronrod panel with the embedded 7-point Gauss estimate. The
// error scaling follows QUADPACK's qk15, which is deliberately pessimistic.
Panel kronrod15(const Integrand& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double abs_half = std::abs(half);

  const double fc = eval_checked(f, centre);
  double res_gauss = fc * kWg[3];
  double res_kronrod = fc * kWgk[7];
  double res_abs = std::abs(res_kronrod);
  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = half * kXgk[jtw];
    const double f1 = eval_checked(f, centre - absc);
    const double f2 = eval_checked(f, centre + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    res_gauss += kWg[j] * (f1 + f2);
    res_kronrod += kWgk[jtw] * (f1 + f2);
    res_abs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = half * kXgk[jtwm1];
    const double f1 = eval_checked(f, centre - absc);
    const double f2 = eval_checked(f, centre + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    res_kronrod += kWgk[jtwm1] * (f1 + f2);
    res_abs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }

  const double mean = 0.5 * res_kronrod;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }

  const double value = res_kronrod * half;
  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * res_abs, err);
  return {lo, hi, value, err};
}

double tolerance_for(const QuadratureConfig& cfg, double value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

// Neumaier-compensated sums of value and error over panels in position order.
std::pair<double, double> summarize(std::vector<Panel> panels) {
  std::sort(panels.begin(), panels.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  double sum = 0.0;
  double comp = 0.0;
  double err = 0.0;
  for (const Panel& p : panels) {
    const double t = sum + p.value;
    if (std::abs(sum) >= std::abs(p.value)) {
      comp += (sum - t) + p.value;
    } else {
      comp += (p.value - t) + sum;
    }
    sum = t;
    err += p.error;
  }
  return {sum + comp, err};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureConfig: rel_tol must be > 0");
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureConfig: abs_tol must be > 0");
  if (max_subdivisions < 1) throw DomainError("QuadratureConfig: max_subdivisions must be >= 1");
  if (!(truncation_growth > 1.0)) {
    throw DomainError("QuadratureConfig: truncation_growth must be > 1");
  }
  if (!(initial_truncation_radius > 0.0) || !std::isfinite(initial_truncation_radius)) {
    throw DomainError("QuadratureConfig: initial_truncation_radius must be finite and > 0");
  }
  if (!(initial_panel_width >= 0.0)) {
    throw DomainError("QuadratureConfig: initial_panel_width must be >= 0");
  }
}

IntegralResult integrate_finite(const Integrand& f, double lo, double hi,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw DomainError("integrate_finite: need finite lo <= hi");
  }
  IntegralResult result;
  if (lo == hi) {
    result.evaluations = 1;
    return result;
  }

  std::size_t initial = 1;
  if (cfg.initial_panel_width > 0.0) {
    initial = static_cast<std::size_t>(std::ceil((hi - lo) / cfg.initial_panel_width));
    initial = std::max<std::size_t>(initial, 1);
  }

  std::vector<Panel> heap;
  heap.reserve(initial + static_cast<std::size_t>(cfg.max_subdivisions) + 1);
  const double step = (hi - lo) / static_cast<double>(initial);
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i < initial; ++i) {
    const double a = lo + step * static_cast<double>(i);
    const double b = (i + 1 == initial) ? hi : lo + step * static_cast<double>(i + 1);
    heap.push_back(kronrod15(f, a, b));
    total += heap.back().value;
    total_err += heap.back().error;
  }
  std::make_heap(heap.begin(), heap.end(), panel_less);
  result.evaluations = 15 * initial;

  // Panels too narrow to bisect further sit here; they still count.
  std::vector<Panel> frozen;
  int bisections = 0;
  bool converged = false;
  while (true) {
    if (total_err <= tolerance_for(cfg, total)) {
      // Running sums drift; confirm against a fresh summation.
      std::vector<Panel> all(heap);
      all.insert(all.end(), frozen.begin(), frozen.end());
      std::tie(total, total_err) = summarize(std::move(all));
      if (total_err <= tolerance_for(cfg, total)) {
        converged = true;
        break;
      }
    }
    if (heap.empty() || bisections >= cfg.max_subdivisions) break;

    std::pop_heap(heap.begin(), heap.end(), panel_less);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) ||
        (worst.hi - worst.lo) <= 8.0 * kEps * std::max(std::abs(worst.lo), std::abs(worst.hi))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = kronrod15(f, worst.lo, mid);
    const Panel right = kronrod15(f, mid, worst.hi);
    result.evaluations += 30;
    ++bisections;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), panel_less);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), panel_less);
  }

  heap.insert(heap.end(), frozen.begin(), frozen.end());
  std::tie(result.value, result.error_estimate) = summarize(std::move(heap));
  if (!converged) {
    std::ostringstream os;
    os.precision(6);
    os << "integrate_finite: tolerance not met on [" << lo << ", " << hi << "] after "
       << bisections << " subdivisions (estimate " << result.error_estimate << ")";
    throw NonConvergenceError(os.str(), result);
  }
  return result;
}

IntegralResult integrate_semi_infinite(const Integrand& f, const QuadratureConfig& cfg,
                                       const TailBound& tail_bound) {
  cfg.validate();
  double radius = cfg.initial_truncation_radius;
  IntegralResult head = integrate_finite(f, 0.0, radius, cfg);

  IntegralResult result;
  result.value = head.value;
  result.error_estimate = head.error_estimate;
  result.evaluations = head.evaluations;
  result.heuristic_tail = !tail_bound;

  int small_streak = 0;
  int growth_streak = 0;
  double previous_increment = std::abs(head.value);
  for (int ext = 0; ext <= kMaxTruncationExtensions; ++ext) {
    if (tail_bound) {
      const double bound = tail_bound(radius);
      if (bound <= tolerance_for(cfg, result.value)) {
        result.error_estimate += bound;
        result.truncation_radius = radius;
        return result;
      }
    }
    if (ext == kMaxTruncationExtensions) break;

    QuadratureConfig panel_cfg = cfg;
    panel_cfg.abs_tol = std::max(cfg.abs_tol, 0.25 * cfg.rel_tol * std::abs(result.value));
    const double next = radius * cfg.truncation_growth;
    IntegralResult piece;
    try {
      piece = integrate_finite(f, radius, next, panel_cfg);
    } catch (const NonConvergenceError& e) {
      result.value += e.partial().value;
      result.error_estimate += e.partial().error_estimate;
      result.evaluations += e.partial().evaluations;
      result.truncation_radius = next;
      throw NonConvergenceError(e.what(), result);
    }
    result.value += piece.value;
    result.error_estimate += piece.error_estimate;
    result.evaluations += piece.evaluations;
    radius = next;

    const double increment = std::abs(piece.value);
    growth_streak = (increment >= previous_increment && increment > 0.0) ? growth_streak + 1 : 0;
    previous_increment = increment;
    if (growth_streak >= kDivergenceStreak) {
      result.truncation_radius = radius;
      throw DivergenceError("integrate_semi_infinite: increments stopped shrinking", result);
    }

    if (!tail_bound) {
      small_streak = increment <= tolerance_for(cfg, result.value) ? small_streak + 1 : 0;
      if (small_streak >= 2) {
        // The untracked remainder is charged at the size of the last piece.
        result.error_estimate += increment;
        result.truncation_radius = radius;
        return result;
      }
    }
  }

  result.truncation_radius = radius;
  if (tail_bound) result.error_estimate += tail_bound(radius);
  throw NonConvergenceError("integrate_semi_infinite: truncation radius cap reached", result);
}

}  // namespace cubesec::quadrature
