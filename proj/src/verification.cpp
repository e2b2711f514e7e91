#include "cubesec/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "cubesec/asymptotics.hpp"
#include "cubesec/error.hpp"
#include "cubesec/kernel.hpp"
#include "cubesec/quadrature.hpp"
#include "cubesec/sections.hpp"
#include "cubesec/specfun.hpp"

namespace cubesec::verification {

namespace {

using kernel::ConcentrationParam;
using Clock = std::chrono::steady_clock;

const double kLebesgueLimit = std::sqrt(6.0 / std::numbers::pi);

struct Outcome {
  bool passed;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::ostringstream stream() {
  std::ostringstream os;
  os << std::setprecision(6);
  return os;
}

Outcome kernel_closed_form() {
  const auto start = Clock::now();
  double worst = 0.0;
  double worst_b = 0.0;
  double worst_r = 0.0;
  for (double b : {0.01, 0.1, 0.25, 1.0, 5.0, 20.0}) {
    const ConcentrationParam param(b);
    for (int i = 0; i <= 1000; ++i) {
      const double r = 0.1 * i;
      const double gap =
          std::abs(kernel::f_closed(param, r).value - kernel::f_quadrature(param, r).value);
      if (gap > worst) {
        worst = gap;
        worst_b = b;
        worst_r = r;
      }
    }
  }
  const double elapsed = seconds_since(start);
  auto os = stream();
  os << "max |f_closed - f_quadrature| = " << worst << " at b = " << worst_b << ", r = " << worst_r
     << " (limit 1e-11); " << elapsed << " s (limit 30 s)";
  return {worst <= 1e-11 && elapsed <= 30.0, os.str()};
}

Outcome convergence() {
  const auto start = Clock::now();
  bool ok = true;
  auto os = stream();
  for (double b : {0.1, 0.25, 1.0}) {
    const ConcentrationParam param(b);
    const double limit = asymptotics::limit_value(b).limit;
    const double e3 = std::abs(sections::diagonal_section(1000, param).value - limit);
    const double e4 = std::abs(sections::diagonal_section(10000, param).value - limit);
    const double ratio = e3 / e4;
    ok = ok && e4 <= 5e-4 && ratio >= 6.0 && ratio <= 14.0;
    os << "b = " << b << ": |A(1e4) - L| = " << e4 << ", error ratio 1e3/1e4 = " << ratio << "; ";
  }
  const double elapsed = seconds_since(start);
  os << elapsed << " s (limit 60 s)";
  return {ok && elapsed <= 60.0, os.str()};
}

Outcome lebesgue() {
  const double limit = asymptotics::limit_value(1e-8).limit;
  const bool limit_ok = std::abs(limit - 1.3819766) <= 1e-6;

  const ConcentrationParam lebesgue(0.0);
  bool increasing = true;
  bool bounded = true;
  double previous = -std::numeric_limits<double>::infinity();
  int first_bad = 0;
  for (int n = 3; n <= 50; ++n) {
    const double a = sections::diagonal_section(n, lebesgue).value;
    if (!(a > previous) && increasing) {
      increasing = false;
      first_bad = n;
    }
    if (a > kLebesgueLimit && bounded) {
      bounded = false;
      first_bad = n;
    }
    previous = a;
  }
  const double a2 = sections::diagonal_section(2, lebesgue).value;
  const bool two_ok = std::abs(a2 - std::numbers::sqrt2) <= 1e-10;

  auto os = stream();
  os << std::setprecision(10) << "L(1e-8) = " << limit << "; b = 0, n = 3..50 "
     << (increasing ? "strictly increasing" : "NOT increasing") << " and "
     << (bounded ? "<= sqrt(6/pi)" : "EXCEEDS sqrt(6/pi)");
  if (!increasing || !bounded) os << " (first at n = " << first_bad << ")";
  os << std::setprecision(3) << "; |A(2, 0) - sqrt(2)| = " << std::abs(a2 - std::numbers::sqrt2);
  return {limit_ok && increasing && bounded && two_ok, os.str()};
}

Outcome scan_shape() {
  bool ok = true;
  auto os = stream();
  for (double b : {0.1, 0.25}) {
    const auto start = Clock::now();
    const sections::ScanTable table = sections::scan(2, 50, ConcentrationParam(b));
    const double elapsed = seconds_since(start);
    bool increasing = true;
    for (std::size_t i = 2; i < table.rows.size(); ++i) {
      if (!(table.rows[i].value > table.rows[i - 1].value)) increasing = false;
    }
    const double gap = std::abs(table.rows.back().value - asymptotics::limit_value(b).limit);
    ok = ok && increasing && gap <= 2e-2 && elapsed <= 20.0;
    os << "b = " << b << ": " << (increasing ? "increasing" : "NOT increasing")
       << " for n >= 3, |A(50) - L| = " << gap << ", " << elapsed << " s; ";
  }
  os << "limits 2e-2 and 20 s";
  return {ok, os.str()};
}

Outcome g_monotone() {
  constexpr int kPoints = 500;
  const double lo = std::log(1e-6);
  const double hi = std::log(50.0);
  bool decreasing = true;
  bool in_range = true;
  double previous = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kPoints; ++i) {
    const double x = std::exp(lo + (hi - lo) * i / (kPoints - 1));
    const double g = asymptotics::g_function(x);
    if (!(g < previous)) decreasing = false;
    if (!(g > 0.0 && g < 0.25)) in_range = false;
    previous = g;
  }
  const double g_small = asymptotics::g_function(1e-10);
  const bool small_ok = std::abs(g_small - 0.25) <= 1e-9;
  auto os = stream();
  os << "g " << (decreasing ? "strictly decreasing" : "NOT decreasing") << " on the grid, "
     << (in_range ? "0 < g < 1/4" : "OUT of (0, 1/4)") << std::setprecision(3)
     << "; |g(1e-10) - 1/4| = " << std::abs(g_small - 0.25);
  return {decreasing && in_range && small_ok, os.str()};
}

Outcome catalan() {
  bool ok = true;
  auto os = stream();
  os << std::setprecision(3);
  for (double a : {0.05, 0.1, 0.2, 0.24}) {
    const auto sums = asymptotics::catalan_series(a, 500);
    const double gap = std::abs(sums.partial - sums.closed);
    ok = ok && gap <= 1e-10;
    os << "a = " << a << ": |partial(500) - closed| = " << gap << "; ";
  }
  const double exact = (std::numbers::sqrt2 - 1.0) / 2.0;
  const auto eighth = asymptotics::catalan_series(0.125, 500);
  const double closed_gap = std::abs(eighth.closed - exact);
  const double partial_gap = std::abs(eighth.partial - exact);
  ok = ok && closed_gap <= 1e-12 && partial_gap <= 1e-12;
  os << "a = 1/8: |closed - (sqrt2 - 1)/2| = " << closed_gap
     << ", |partial(500) - (sqrt2 - 1)/2| = " << partial_gap << "; limits 1e-10 and 1e-12";
  return {ok, os.str()};
}

// int_R^inf r^p e^{-r^2/(4b)} dr <= 2b R^{p-1} e^{-R^2/(4b)} / (1 - 2b(p-1)/R^2)
// once R^2 > 2b(p-1).
double moment_tail(double b, int p, double radius) {
  const double q = std::max(0, p - 1);
  const double denom = 1.0 - 2.0 * b * q / (radius * radius);
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * b * std::pow(radius, p - 1) * std::exp(-radius * radius / (4.0 * b)) / denom;
}

Outcome moments() {
  double worst = 0.0;
  for (double b : {0.5, 1.0, 2.0}) {
    for (int p : {0, 2, 4, 6, 8}) {
      const auto f = [b, p](double r) { return std::pow(r, p) * std::exp(-r * r / (4.0 * b)); };
      const auto tail = [b, p](double radius) { return moment_tail(b, p, radius); };
      const double numeric = quadrature::integrate_semi_infinite(f, {}, tail).value;
      const double closed = asymptotics::gaussian_half_moment(b, p);
      worst = std::max(worst, std::abs(numeric - closed) / closed);
    }
  }
  auto os = stream();
  os << std::setprecision(3) << "max relative gap closed form vs quadrature = " << worst
     << " (limit 1e-10)";
  return {worst <= 1e-10, os.str()};
}

using Stencil = std::function<double(const std::function<double(double)>&, double)>;

// Central differences; G is even, but both sides are evaluated anyway.
double second_o2(const std::function<double(double)>& g, double h) {
  return (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h);
}
double second_o4(const std::function<double(double)>& g, double h) {
  return (-g(2 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2 * h)) / (12.0 * h * h);
}
double fourth_o2(const std::function<double(double)>& g, double h) {
  return (g(2 * h) - 4.0 * g(h) + 6.0 * g(0.0) - 4.0 * g(-h) + g(-2 * h)) / (h * h * h * h);
}
double fourth_o4(const std::function<double(double)>& g, double h) {
  return (-g(3 * h) + 12.0 * g(2 * h) - 39.0 * g(h) + 56.0 * g(0.0) - 39.0 * g(-h) +
          12.0 * g(-2 * h) - g(-3 * h)) /
         (6.0 * h * h * h * h);
}

// Steps h = 2^{-k/2} within two decades of the scale eps^{1/(m+p)} at which
// truncation (order p) and rounding (derivative order m) balance; the
// estimate is taken where two neighbours agree best.
double plateau(const std::function<double(double)>& g, const Stencil& stencil, int m, int p) {
  const double scale = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (m + p));
  std::vector<double> estimates;
  for (double h = 10.0 * scale; h >= 0.1 * scale; h /= std::numbers::sqrt2) {
    estimates.push_back(stencil(g, h));
  }
  std::size_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < estimates.size(); ++k) {
    const double gap = std::abs(estimates[k + 1] - estimates[k]);
    if (gap < best_gap) {
      best_gap = gap;
      best = k;
    }
  }
  return 0.5 * (estimates[best] + estimates[best + 1]);
}

Outcome taylor() {
  bool ok = true;
  auto os = stream();
  os << std::setprecision(3);
  for (double b : {0.25, 1.0, 4.0}) {
    const double sb = std::sqrt(b);
    const std::function<double(double)> g = [sb](double c) {
      return 2.0 * specfun::erf_complex({sb, c}).real();
    };
    const auto coeffs = asymptotics::taylor_coeffs(b);
    const double c2_o2 = std::abs(plateau(g, second_o2, 2, 2) / 2.0 / coeffs.c2 - 1.0);
    const double c2_o4 = std::abs(plateau(g, second_o4, 2, 4) / 2.0 / coeffs.c2 - 1.0);
    const double c4_o2 = std::abs(plateau(g, fourth_o2, 4, 2) / 24.0 / coeffs.c4 - 1.0);
    const double c4_o4 = std::abs(plateau(g, fourth_o4, 4, 4) / 24.0 / coeffs.c4 - 1.0);
    ok = ok && std::max({c2_o2, c2_o4, c4_o2, c4_o4}) <= 1e-5;
    os << "b = " << b << ": rel err c2 " << c2_o2 << " / " << c2_o4 << ", c4 " << c4_o2 << " / "
       << c4_o4 << " (order 2 / 4); ";
  }
  const double c4_zero = std::abs(asymptotics::taylor_coeffs(1.5).c4);
  ok = ok && c4_zero <= 1e-12;
  os << "|c4(1.5)| = " << c4_zero << "; limits 1e-5 and 1e-12";
  return {ok, os.str()};
}

Outcome definition() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (int n : {2, 3}) {
    for (double b : {0.0, 0.5, 1.0}) {
      const ConcentrationParam param(b);
      const double slab =
          sections::slab_limit_oracle(n, param, sections::Direction::diagonal(n)).section_measure;
      worst = std::max(worst, std::abs(slab - sections::diagonal_section(n, param).value));
    }
  }
  const double elapsed = seconds_since(start);
  auto os = stream();
  os << std::setprecision(3) << "max |slab limit - integral formula| = " << worst
     << " (limit 1e-6); " << elapsed << " s (limit 120 s)";
  return {worst <= 1e-6 && elapsed <= 120.0, os.str()};
}

Outcome lambda0() {
  const Crossing c = lambda0_crossing(0.1, 0.3, 1e-7);
  const double distance = std::abs(c.root - kLambda0Reference);
  auto os = stream();
  os << std::setprecision(9) << "root of L(b) - A_two(b) on [0.1, 0.3] = " << c.root
     << ", distance to " << kLambda0Reference << " = " << std::setprecision(3) << distance
     << " (limit 5e-3)";
  return {distance <= 5e-3, os.str()};
}

Outcome extreme() {
  const sections::IntegralResult r = sections::diagonal_section(1000000, ConcentrationParam(0.25));
  const double gap = std::abs(r.value - asymptotics::limit_value(0.25).limit);
  const bool finite = std::isfinite(r.value) && std::isfinite(r.error_estimate);
  auto os = stream();
  os << std::setprecision(12) << "A(1e6, 0.25) = " << r.value << std::setprecision(3)
     << ", |A - L| = " << gap << " (limit 1e-3)";
  return {finite && gap <= 1e-3, os.str()};
}

struct Entry {
  const char* id;
  const char* title;
  bool exploratory;
  Outcome (*run)();
};

constexpr Entry kEntries[] = {
    {"kernel_closed_form", "closed-form kernel vs direct quadrature", false, kernel_closed_form},
    {"convergence", "convergence of the diagonal section to L(b)", false, convergence},
    {"lebesgue", "Lebesgue case and the sqrt(6/pi) bound", false, lebesgue},
    {"scan_shape", "n = 2..50 sweeps at b = 0.1 and 0.25", false, scan_shape},
    {"g_monotone", "g decreasing with values in (0, 1/4)", false, g_monotone},
    {"catalan", "Catalan series identity", false, catalan},
    {"moments", "Gaussian half-line moments", false, moments},
    {"taylor", "Taylor coefficients of the erf sum", false, taylor},
    {"definition", "slab-limit definition vs integral formula", false, definition},
    {"lambda0", "crossing of L(b) and the two-coordinate section", true, lambda0},
    {"extreme", "n = 10^6 stability", false, extreme},
};

}  // namespace

bool Report::passed() const {
  return std::all_of(items.begin(), items.end(),
                     [](const CriterionResult& r) { return r.passed || r.exploratory; });
}

std::vector<std::string> criterion_ids() {
  std::vector<std::string> ids;
  for (const Entry& e : kEntries) ids.emplace_back(e.id);
  return ids;
}

CriterionResult run_criterion(std::string_view id) {
  for (std::size_t i = 0; i < std::size(kEntries); ++i) {
    const Entry& e = kEntries[i];
    if (id != e.id) continue;
    CriterionResult result{static_cast<int>(i) + 1, e.id, e.title, false, e.exploratory, "", 0.0};
    const auto start = Clock::now();
    try {
      const Outcome outcome = e.run();
      result.passed = outcome.passed;
      result.detail = outcome.detail;
    } catch (const std::exception& ex) {
      result.detail = std::string("exception: ") + ex.what();
    }
    result.seconds = seconds_since(start);
    return result;
  }
  throw DomainError("unknown criterion '" + std::string(id) + "'");
}

Report run(const std::vector<std::string>& only) {
  Report report;
  if (only.empty()) {
    for (const Entry& e : kEntries) report.items.push_back(run_criterion(e.id));
    return report;
  }
  for (const std::string& id : only) report.items.push_back(run_criterion(id));
  return report;
}

Crossing lambda0_crossing(double lo, double hi, double tol) {
  if (!(lo > 0.0) || !(hi > lo) || !(tol > 0.0)) {
    throw DomainError("lambda0_crossing: need 0 < lo < hi and tol > 0");
  }
  const auto gap = [](double b) {
    const ConcentrationParam param(b);
    const sections::SectionQuery query{2, param, sections::Direction::two_coord(2), {}};
    return asymptotics::limit_value(b).limit - sections::direction_section(query).value;
  };
  double g_lo = gap(lo);
  double g_hi = gap(hi);
  if ((g_lo < 0.0) == (g_hi < 0.0)) {
    auto os = stream();
    os << "lambda0_crossing: no sign change on [" << lo << ", " << hi << "] (gaps " << g_lo
       << ", " << g_hi << ")";
    throw BracketError(os.str());
  }
  int iterations = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = gap(mid);
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
      g_hi = g_mid;
    }
    ++iterations;
  }
  return {0.5 * (lo + hi), g_lo, g_hi, iterations};
}

}  // namespace cubesec::verification
