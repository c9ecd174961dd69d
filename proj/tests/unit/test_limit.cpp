#include <cmath>

#include "doctest.h"
#include "wmeans/error.hpp"
#include "wmeans/limit.hpp"

using namespace wmeans;

TEST_CASE("limit of a convergent sequence") {
  const auto est = limit_at_zero([](double t) { return std::sin(t) / t; }, 1.0);
  CHECK(est.converged);
  CHECK_FALSE(est.diverged);
  CHECK(est.value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.window == 8);
  CHECK(est.values.front().first == 1.0);
  for (std::size_t i = 1; i < est.values.size(); ++i) CHECK(est.values[i].first < est.values[i - 1].first);
  CHECK_FALSE(est.caveat.empty());
}

TEST_CASE("oscillation keeps the tail bracket open") {
  const auto est = limit_at_zero([](double t) { return std::sin(std::log2(t) * 1.5707963267948966); }, 1.0);
  CHECK_FALSE(est.converged);
  CHECK(est.tail_min < -0.5);
  CHECK(est.tail_max > 0.5);
}

TEST_CASE("divergence is flagged") {
  const auto est = limit_at_zero([](double t) { return 1.0 / t; }, 1.0);
  CHECK(est.diverged);
  CHECK_FALSE(est.converged);
}

TEST_CASE("failed evaluations are skipped and counted") {
  int calls = 0;
  const auto est = limit_at_zero(
      [&](double t) {
        if (++calls % 3 == 0) throw Error(ErrorCode::NonFinite, "flaky");
        return 2.0 + t;
      },
      1.0);
  CHECK(est.failed_evaluations > 0);
  CHECK(est.value() == doctest::Approx(2.0));
  try {
    limit_at_zero([](double) -> double { throw Error(ErrorCode::NonFinite, "always"); }, 1.0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllEvaluationsFailed);
  }
}
