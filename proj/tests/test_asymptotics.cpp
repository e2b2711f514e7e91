#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cubesec/asymptotics.hpp"
#include "cubesec/error.hpp"
#include "cubesec/sections.hpp"

namespace a = cubesec::asymptotics;

namespace {

struct Ref {
  double x;
  double value;
};

// mpmath, 30 digits
const Ref kLimit[] = {
    {1e-8, 1.3819765997279773828}, {1e-5, 1.381978440522736143},
    {1e-3, 1.3821608807343564779}, {0.05, 1.3912378864599394194},
    {0.1, 1.4005947886337613065},  {0.25, 1.4292294556807316994},
    {0.5, 1.4787686673605554544},  {1.0, 1.584077105059978573},
    {2.0, 1.8141457125403425621},  {5.0, 2.5448919778407832574},
};

const Ref kG[] = {
    {1e-6, 0.24999983333337777777}, {1e-3, 0.24983337777354440934},
    {0.05, 0.24177724520337014007}, {1.0, 0.12314794909815776873},
    {5.0, 0.0042568469791332774714},
};

const Ref kOneMinus4G[] = {
    {1e-6, 6.6666648888890578994e-7},
    {1e-3, 0.00066648890582236264547},
};

const double kSqrt6OverPi = std::sqrt(6.0 / M_PI);

}  // namespace

TEST_CASE("g and 1 - 4g against reference values") {
  for (const Ref& r : kG) {
    INFO("x = " << r.x);
    CHECK(std::abs(a::g_function(r.x) - r.value) <= 1e-15 * r.value);
  }
  for (const Ref& r : kOneMinus4G) {
    INFO("x = " << r.x);
    CHECK(std::abs(a::one_minus_4g(r.x) - r.value) <= 1e-14 * r.value);
  }
  CHECK_THROWS_AS(a::g_function(0.0), cubesec::DomainError);
  CHECK_THROWS_AS(a::g_function(-1.0), cubesec::DomainError);
}

TEST_CASE("g is decreasing and 1 - 4g is positive") {
  double prev = 0.25;
  for (int i = -80; i <= 20; ++i) {
    const double x = std::pow(10.0, i / 10.0);
    const double g = a::g_function(x);
    REQUIRE(g < prev);
    REQUIRE(a::one_minus_4g(x) > 0.0);
    prev = g;
  }
}

TEST_CASE("series and direct branches meet at the switch") {
  const double below = std::nextafter(a::kSeriesSwitch, 0.0);
  const double above = a::kSeriesSwitch;
  CHECK(std::abs(a::g_function(below) - a::g_function(above)) <= 1e-15);
  CHECK(std::abs(a::one_minus_4g(below) / a::one_minus_4g(above) - 1.0) <= 1e-11);
}

TEST_CASE("limit against reference values") {
  for (const Ref& r : kLimit) {
    INFO("b = " << r.x);
    CHECK(std::abs(a::limit_value(r.x).limit - r.value) <= 1e-13 * r.value);
  }
}

TEST_CASE("series reproduces the closed form") {
  for (double b : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0}) {
    const a::LimitBreakdown lb = a::limit_value(b);
    INFO("b = " << b);
    CHECK(lb.series_converged);
    CHECK(std::abs(lb.series_partial - lb.limit) <= 1e-12 * lb.limit);
    CHECK(lb.series_terms_used == a::limit_series_terms(b));
  }
}

TEST_CASE("partial sums increase towards the limit") {
  const double b = 0.3;
  const double limit = a::limit_value(b).limit;
  CHECK(std::abs(a::limit_series_partial(b, 0) - 2.0 * std::sqrt(b / M_PI)) <= 1e-16);
  double prev = a::limit_series_partial(b, 0);
  for (int K = 1; K <= 60; ++K) {
    const double s = a::limit_series_partial(b, K);
    REQUIRE(s > prev);
    REQUIRE(s <= limit * (1.0 + 1e-15));
    prev = s;
  }
}

TEST_CASE("small-b behaviour") {
  for (double b : {1e-8, 1e-6, 1e-4, 1e-2}) {
    const double l = a::limit_value(b).limit;
    INFO("b = " << b);
    CHECK(l > kSqrt6OverPi);
    CHECK(l - kSqrt6OverPi <= 0.2 * b);
  }
  // the series needs about 1/b terms and gives up at the cap
  CHECK_THROWS_AS(a::limit_series_terms(1e-8), cubesec::Error);
  const a::LimitBreakdown lb = a::limit_value(1e-8);
  CHECK_FALSE(lb.series_converged);
  CHECK(lb.series_terms_used == a::kMaxSeriesTerms);
  CHECK(lb.series_partial < lb.limit);
}

TEST_CASE("large-n sections approach the limit") {
  const double b = 0.5;
  const double limit = a::limit_value(b).limit;
  const double gap100 = cubesec::sections::diagonal_section(100, cubesec::kernel::ConcentrationParam(b)).value - limit;
  const double gap1000 = cubesec::sections::diagonal_section(1000, cubesec::kernel::ConcentrationParam(b)).value - limit;
  CHECK(std::abs(gap1000) < std::abs(gap100));
  CHECK(std::abs(gap100 / gap1000 - 10.0) <= 1.0);
}

TEST_CASE("Catalan generating function") {
  const a::CatalanSums zero = a::catalan_series(0.0, 10);
  CHECK(zero.partial == 0.0);
  CHECK(zero.closed == 0.0);

  const a::CatalanSums eighth = a::catalan_series(0.125, 200);
  CHECK(std::abs(eighth.closed - 0.5 * (std::sqrt(2.0) - 1.0)) <= 1e-16);
  CHECK(std::abs(eighth.partial - eighth.closed) <= 1e-15);

  // first terms: C(1,1) a + C(3,2) a^2 + C(5,3) a^3 = a + 3a^2 + 10a^3
  const double x = 0.01;
  CHECK(std::abs(a::catalan_series(x, 3).partial - (x + 3 * x * x + 10 * x * x * x)) <= 1e-18);

  CHECK_THROWS_AS(a::catalan_series(0.25, 10), cubesec::DomainError);
  CHECK_THROWS_AS(a::catalan_series(0.1, -1), cubesec::DomainError);
}

TEST_CASE("Gaussian half moments") {
  CHECK(std::abs(a::gaussian_half_moment(1.0, 0) - std::sqrt(M_PI)) <= 1e-15);
  CHECK(std::abs(a::gaussian_half_moment(1.0, 2) - 2.0 * std::sqrt(M_PI)) <= 1e-14);
  // 2^3 sqrt(pi) b^{7/2} 5!!
  CHECK(std::abs(a::gaussian_half_moment(2.0, 6) / (8.0 * std::sqrt(M_PI) * std::pow(2.0, 3.5) * 15.0) -
                 1.0) <= 1e-14);
  CHECK_THROWS_AS(a::gaussian_half_moment(1.0, 3), cubesec::DomainError);
  CHECK_THROWS_AS(a::gaussian_half_moment(0.0, 2), cubesec::DomainError);
}

TEST_CASE("Taylor coefficients") {
  struct TaylorRef {
    double b;
    double c4;
    double c6;
  };
  const TaylorRef refs[] = {
      {0.25, 0.36615940788976866, 0.10008357148987010},
      {1.0, 0.13836916580686490, -0.0092246110537909934},
  };
  for (const TaylorRef& r : refs) {
    const a::TaylorCoeffs t = a::taylor_coeffs(r.b);
    CHECK(std::abs(t.c4 - r.c4) <= 1e-15);
    CHECK(std::abs(t.c6 - r.c6) <= 1e-15);
    CHECK(std::abs(t.c0 - 2.0 * std::erf(std::sqrt(r.b))) <= 1e-15);
    CHECK(std::abs(t.c2 - 4.0 * std::sqrt(r.b) * std::exp(-r.b) / std::sqrt(M_PI)) <= 1e-15);
  }
  CHECK(std::abs(a::taylor_coeffs(4.0).c4 - -0.068889951180306846) <= 1e-15);
  CHECK(a::taylor_coeffs(1.5).c4 == 0.0);
}
