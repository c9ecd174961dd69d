#include <cmath>

#include "doctest.h"
#include "wmeans/catalog.hpp"
#include "wmeans/error.hpp"
#include "wmeans/functions.hpp"

using namespace wmeans;

TEST_CASE("central differences match analytic derivatives") {
  const auto f = ScalarFunction::from_expression("x^3", IntervalDomain::real_line());
  CHECK_FALSE(f.has_d1());
  CHECK(derivative(f, 2.0, DerivativeOrder::First) == doctest::Approx(12.0).epsilon(1e-8));
  CHECK(derivative(f, 2.0, DerivativeOrder::Second) == doctest::Approx(12.0).epsilon(1e-5));
  const auto c = catalog::cosh();
  CHECK(derivative(c, 1.0, DerivativeOrder::First) == std::sinh(1.0));
}

TEST_CASE("stencil outside the domain is reported") {
  const auto f = ScalarFunction::from_expression("log(x)", IntervalDomain::positive());
  try {
    derivative(f, 1e-9, DerivativeOrder::First);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StencilOutsideDomain);
  }
  const RealFn g = [](double x) { return std::log(x); };
  CHECK(central_difference_near_endpoint(g, 1e-9, DerivativeOrder::First, IntervalDomain::positive()) ==
        doctest::Approx(1e9).epsilon(1e-6));
}

TEST_CASE("supplied derivatives are cross-checked") {
  CHECK_NOTHROW(ScalarFunction::from_expression("x^2", IntervalDomain::positive(), {}, "2*x", "2"));
  try {
    ScalarFunction::from_expression("x^2", IntervalDomain::positive(), {}, "3*x");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DerivativeMismatch);
  }
}

TEST_CASE("kernel partials") {
  const auto k = Kernel2::from_expression("x^2 - y^2", IntervalDomain::positive());
  CHECK(k.partial1(3.0, 2.0) == doctest::Approx(6.0).epsilon(1e-8));
  CHECK(k.partial2(3.0, 2.0) == doctest::Approx(-4.0).epsilon(1e-8));
  CHECK(k.diagonal_slope(2.0) == doctest::Approx(-4.0).epsilon(1e-8));
}

TEST_CASE("catalog differences avoid cancellation") {
  // f(a) - f(b) for nearby tiny a, b: the naive difference loses every digit.
  const double a = 1e-9 * (1.0 + 1e-9);
  const double b = 1e-9;
  CHECK(catalog::cosh().difference(a, b) == doctest::Approx(1e-27).epsilon(1e-6));
  CHECK(catalog::exp().difference(1e-12, 0.0) == doctest::Approx(1e-12).epsilon(1e-9));
  CHECK(catalog::power(2.0).difference(1.0 + 1e-10, 1.0) == doctest::Approx(2e-10).epsilon(1e-6));
  CHECK(catalog::log().difference(2.0, 1.0) == doctest::Approx(std::log(2.0)));
  CHECK(catalog::shifted_power(0.5, 1.0).difference(3.0, 0.0) == doctest::Approx(1.0));
  CHECK(catalog::shifted_power(0.0, 1.0).difference(1e-20, 0.0) == doctest::Approx(1e-20));
}

TEST_CASE("catalog generators agree with their definitions") {
  for (double x : {0.25, 1.0, 3.0}) {
    CHECK(catalog::power(-2.0)(x) == doctest::Approx(std::pow(x, -2.0)));
    CHECK(catalog::power(0.0)(x) == doctest::Approx(std::log(x)));
    CHECK(catalog::shifted_power(0.5, 1.0)(x) == doctest::Approx(std::sqrt(x + 1.0)));
    CHECK(catalog::cosh().d2(x) == doctest::Approx(std::cosh(x)));
  }
  CHECK(catalog::shifted_power(2.0, -1.0).domain() == IntervalDomain::open(1.0, kInfinity));
}

TEST_CASE("difference kernels are oriented as semideviations") {
  // x^-1 is decreasing; the kernel flips it so that sign E(x, y) = sign(x - y).
  const auto E = catalog::diff_gen(catalog::power(-1.0));
  CHECK(E(2.0, 1.0) > 0.0);
  CHECK(E(1.0, 2.0) < 0.0);
  CHECK(E.diagonal_slope(1.5) < 0.0);
  const auto A = catalog::diff_gen(catalog::power(2.0));
  CHECK(A(3.0, 2.0) == 5.0);
}

TEST_CASE("spec parsing") {
  CHECK(catalog::parse_generator("power:2").name() == "power:2");
  CHECK(catalog::parse_generator("shifted_power:0.5,1").name() == "shifted_power:0.5,1");
  CHECK(catalog::parse_kernel("cosh").name() == catalog::parse_kernel("diff:cosh").name());
  CHECK(catalog::parse_kernel("sign")(1.0, 2.0) == -1.0);
  CHECK_FALSE(catalog::parse_kernel("sign").continuous());
  CHECK(catalog::parse_kernel("expr:x - y", IntervalDomain::real_line())(1.0, 3.0) == -2.0);
  CHECK(catalog::parse_kernel("ratio:log")(4.0, 2.0) == doctest::Approx(std::log(2.0)));
  CHECK(catalog::parse_operation("product")(2.0, 3.0) == 6.0);
  CHECK_THROWS_AS(catalog::parse_generator("power:"), Error);
  CHECK_THROWS_AS(catalog::parse_kernel("nonsense"), Error);
  CHECK_FALSE(catalog::entries().empty());
}
