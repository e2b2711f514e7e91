#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cubesec/error.hpp"
#include "cubesec/quadrature.hpp"

namespace q = cubesec::quadrature;

namespace {

struct Case {
  std::string name;
  std::function<double(double)> f;
  double lo;
  double hi;  // +inf for [lo, inf)
  double truth;
  q::TailBound tail;
};

std::vector<Case> battery() {
  const double pi = M_PI;
  const double inf = INFINITY;
  return {
      {"x^2", [](double x) { return x * x; }, 0, 1, 1.0 / 3.0, {}},
      {"exp", [](double x) { return std::exp(x); }, 0, 1, std::expm1(1.0), {}},
      {"sin", [](double x) { return std::sin(x); }, 0, pi, 2.0, {}},
      {"lorentz", [](double x) { return 1.0 / (1.0 + x * x); }, 0, 1, pi / 4.0, {}},
      {"sqrt", [](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3.0, {}},
      {"log", [](double x) { return std::log(x); }, 0, 1, -1.0, {}},
      {"cos50", [](double x) { return std::cos(50.0 * x); }, 0, 1, std::sin(50.0) / 50.0, {}},
      {"kink", [](double x) { return std::abs(x - 1.0 / 3.0); }, 0, 1, 5.0 / 18.0, {}},
      {"inv_sqrt", [](double x) { return 1.0 / std::sqrt(x); }, 0, 1, 2.0, {}},
      {"x^10", [](double x) { return std::pow(x, 10); }, -1, 1, 2.0 / 11.0, {}},
      {"gauss", [](double x) { return std::exp(-x * x); }, -3, 3, std::sqrt(pi) * std::erf(3.0),
       {}},
      {"runge", [](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1, 1,
       0.4 * std::atan(5.0), {}},
      {"sin^2", [](double x) { return std::sin(x) * std::sin(x); }, 0, 10,
       5.0 - std::sin(20.0) / 4.0, {}},
      {"cubic", [](double x) { return 3 * x * x * x - 2 * x + 1; }, -2, 5,
       0.75 * (625.0 - 16.0) - (25.0 - 4.0) + 7.0, {}},
      {"x e^-x", [](double x) { return x * std::exp(-x); }, 0, inf, 1.0,
       [](double r) { return (r + 1.0) * std::exp(-r); }},
      {"half gauss", [](double x) { return std::exp(-x * x); }, 0, inf, std::sqrt(pi) / 2.0,
       [](double r) { return std::exp(-r * r) / (2.0 * r); }},
      {"cauchy tail", [](double x) { return 1.0 / (1.0 + x * x); }, 0, inf, pi / 2.0,
       [](double r) { return 1.0 / r; }},
      {"damped cos", [](double x) { return std::exp(-x) * std::cos(x); }, 0, inf, 0.5,
       [](double r) { return std::exp(-r); }},
      {"cubic decay", [](double x) { return std::pow(1.0 + x, -3); }, 0, inf, 0.5,
       [](double r) { return 0.5 / ((1.0 + r) * (1.0 + r)); }},
      {"gamma(1/2)", [](double x) { return std::exp(-x) / std::sqrt(x); }, 0, inf,
       std::sqrt(pi), [](double r) { return std::exp(-r) / std::sqrt(r); }},
  };
}

}  // namespace

TEST_CASE("error estimates are honest on a battery with known integrals") {
  const auto cases = battery();
  REQUIRE(cases.size() == 20);
  for (const Case& c : cases) {
    INFO(c.name);
    q::IntegralResult r = std::isinf(c.hi) ? q::integrate_semi_infinite(c.f, {}, c.tail)
                                           : q::integrate_finite(c.f, c.lo, c.hi);
    CHECK(std::abs(r.value - c.truth) <= r.error_estimate);
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.evaluations >= 1);
    // not wildly pessimistic either; slow algebraic tails cost a little more
    CHECK(r.error_estimate <= 1e-12 * std::abs(r.value) + 1e-11);
  }
}

TEST_CASE("reference examples") {
  const q::IntegralResult one = q::integrate_finite([](double) { return 1.0; }, 0.0, 1.0);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(q::integrate_finite([](double x) { return std::sin(x); }, 0.0, M_PI).value - 2.0) <=
        1e-13);
  const double gauss01 = std::sqrt(M_PI) / 2.0 * std::erf(1.0);
  CHECK(std::abs(q::integrate_finite([](double x) { return std::exp(-x * x); }, 0.0, 1.0).value -
                 gauss01) <= 1e-12);

  const auto half_gauss = [](double r) { return std::exp(-r * r / 4.0); };
  CHECK(std::abs(q::integrate_semi_infinite(half_gauss).value - std::sqrt(M_PI)) <= 1e-12);
  CHECK(std::abs(q::integrate_semi_infinite([](double r) { return std::exp(-r); }).value - 1.0) <=
        1e-12);
  const auto second = [](double r) { return r * r * std::exp(-r * r / 4.0); };
  CHECK(std::abs(q::integrate_semi_infinite(second).value - 2.0 * std::sqrt(M_PI)) <= 1e-11);
}

TEST_CASE("linearity on random polynomial pairs") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_int_distribution<int> degree(0, 8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(static_cast<std::size_t>(degree(rng)) + 1);
    std::vector<double> g(static_cast<std::size_t>(degree(rng)) + 1);
    for (double& c : p) c = coef(rng);
    for (double& c : g) c = coef(rng);
    const double alpha = coef(rng);
    const double beta = coef(rng);
    const double lo = coef(rng);
    const double hi = lo + 0.1 + std::abs(coef(rng));
    const auto eval = [](const std::vector<double>& c, double x) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
    const auto rp = q::integrate_finite([&](double x) { return eval(p, x); }, lo, hi);
    const auto rg = q::integrate_finite([&](double x) { return eval(g, x); }, lo, hi);
    const auto rc = q::integrate_finite(
        [&](double x) { return alpha * eval(p, x) + beta * eval(g, x); }, lo, hi);
    const double combined = std::abs(alpha) * rp.error_estimate +
                            std::abs(beta) * rg.error_estimate + rc.error_estimate;
    CHECK(std::abs(rc.value - (alpha * rp.value + beta * rg.value)) <= combined);
  }
}

TEST_CASE("results are bit-identical across repeated calls") {
  const auto f = [](double x) { return std::cos(30.0 * x) * std::exp(-x); };
  const auto a = q::integrate_semi_infinite(f, {}, [](double r) { return std::exp(-r); });
  const auto b = q::integrate_semi_infinite(f, {}, [](double r) { return std::exp(-r); });
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.truncation_radius == b.truncation_radius);
}

TEST_CASE("degenerate interval") {
  const auto r = q::integrate_finite([](double x) { return x; }, 2.0, 2.0);
  CHECK(r.value == 0.0);
  CHECK(r.error_estimate == 0.0);
  CHECK(r.evaluations == 1);
}

TEST_CASE("tail handling: bound, heuristic flag, truncation radius") {
  const auto f = [](double x) { return std::exp(-x); };
  const auto bounded = q::integrate_semi_infinite(f, {}, [](double r) { return std::exp(-r); });
  CHECK_FALSE(bounded.heuristic_tail);
  CHECK(std::isfinite(bounded.truncation_radius));
  CHECK(std::exp(-bounded.truncation_radius) <= bounded.error_estimate);

  const auto heuristic = q::integrate_semi_infinite(f);
  CHECK(heuristic.heuristic_tail);
  CHECK(std::abs(heuristic.value - 1.0) <= heuristic.error_estimate);
}

TEST_CASE("failures carry the best available result") {
  q::QuadratureConfig cfg;
  cfg.max_subdivisions = 3;
  try {
    q::integrate_finite([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, cfg);
    FAIL("expected NonConvergenceError");
  } catch (const q::NonConvergenceError& e) {
    CHECK(e.partial().evaluations > 0);
    CHECK(e.partial().error_estimate > 0.0);
  }

  CHECK_THROWS_AS(q::integrate_semi_infinite([](double) { return 1.0; }), q::DivergenceError);
}

TEST_CASE("input validation") {
  q::QuadratureConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), cubesec::DomainError);
  bad = {};
  bad.truncation_growth = 1.0;
  CHECK_THROWS_AS(bad.validate(), cubesec::DomainError);
  bad = {};
  bad.max_subdivisions = 0;
  CHECK_THROWS_AS(bad.validate(), cubesec::DomainError);

  CHECK_THROWS_AS(q::integrate_finite([](double x) { return x; }, 1.0, 0.0), cubesec::DomainError);
  CHECK_THROWS_AS(q::integrate_finite([](double) { return NAN; }, 0.0, 1.0), cubesec::DomainError);
}
