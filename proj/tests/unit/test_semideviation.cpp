#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wmeans/catalog.hpp"
#include "wmeans/error.hpp"
#include "wmeans/sampling.hpp"
#include "wmeans/semideviation.hpp"

using namespace wmeans;

namespace {

const SemidevMeanConfig kCfg;

double refine(double v) { return kCfg.refine_tol * std::max(1.0, std::abs(v)); }

}  // namespace

TEST_CASE("sign kernel gives the weighted lower and upper medians") {
  const auto S = catalog::sign_dev();
  const auto two = WeightedSample::make({1, 3}, {1, 1}, IntervalDomain::positive());
  const auto m = semidev_means(S, two);
  CHECK(std::abs(m[0] - 1.0) <= refine(1.0));
  CHECK(std::abs(m[1] - 3.0) <= refine(3.0));
  CHECK(std::abs(m[2] - 1.0) <= refine(1.0));
  CHECK(std::abs(m[3] - 3.0) <= refine(3.0));
  const auto three = WeightedSample::make({1, 2, 3}, {1, 1, 1}, IntervalDomain::positive());
  for (double v : semidev_means(S, three)) CHECK(std::abs(v - 2.0) <= refine(2.0));
}

TEST_CASE("sign kernel agrees with the plateau oracle on integer samples") {
  SamplePlan plan;
  plan.seed = 3;
  plan.n_max = 7;
  for (std::size_t k = 0; k < 300; ++k) {
    SampleRng rng(plan.seed, k);
    const std::size_t n = rng.integer(1, 7);
    std::vector<double> x(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng.integer(1, 5));
      w[i] = static_cast<double>(rng.integer(0, 3));
    }
    if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) w[0] = 1.0;
    const auto s = WeightedSample::make(x, w, IntervalDomain::positive());
    const auto got = semidev_means(catalog::sign_dev(), s);
    const auto want = wmeans::testing::sign_means_oracle(x, w);
    CAPTURE(k);
    for (std::size_t i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-11));
  }
}

TEST_CASE("difference kernels reproduce quasiarithmetic means") {
  SamplePlan plan;
  plan.seed = 9;
  for (std::size_t k = 0; k < 60; ++k) {
    SampleRng rng(plan.seed, k);
    const auto s = draw_sample(plan, rng);
    const auto E = catalog::diff_gen(catalog::cosh());
    const double qa = quasiarithmetic_mean(s, catalog::cosh());
    for (double v : semidev_means(E, s)) CHECK(v == doctest::Approx(qa).epsilon(1e-10));
    CHECK(deviation_mean(E, s) == doctest::Approx(qa).epsilon(1e-10));
    const auto A = catalog::arithmetic();
    CHECK(semidev_mean(A, s, MeanKind::UpperWeak) == doctest::Approx(power_mean(s, 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("ordering and symmetry of the four means") {
  SamplePlan plan;
  plan.seed = 21;
  const auto E = catalog::parse_kernel("expr:sign(x - y) * sqrt(abs(x - y))");
  for (std::size_t k = 0; k < 100; ++k) {
    SampleRng rng(plan.seed, k);
    const auto s = draw_sample(plan, rng);
    const auto m = semidev_means(E, s);
    const auto [lo, hi] = s.support_hull();
    CHECK(lo <= m[0] + 1e-12);
    CHECK(m[0] <= m[1] + 1e-12);
    CHECK(m[0] <= m[2] + 1e-12);
    CHECK(m[1] <= m[3] + 1e-12);
    CHECK(m[2] <= m[3] + 1e-12);
    CHECK(m[3] <= hi + 1e-12);
    const auto perm = random_permutation(rng, s.size());
    const auto mp = semidev_means(E, s.permuted(perm));
    for (std::size_t i = 0; i < 4; ++i) CHECK(mp[i] == doctest::Approx(m[i]).epsilon(1e-12));
    CHECK(semidev_mean(E, s, MeanKind::LowerStrict) == m[1]);
  }
}

TEST_CASE("normalization") {
  const auto N = normalize(catalog::diff_gen(catalog::power(2.0)));
  CHECK(N(3.0, 2.0) == doctest::Approx(1.25));
  CHECK(N.diagonal_slope(1.7) == doctest::Approx(-1.0).epsilon(1e-7));
  const auto C = normalize(catalog::diff_gen(catalog::cosh()));
  CHECK(C(1.0, 2.0) == doctest::Approx(wmeans::testing::cosh_normalized_oracle(1.0, 2.0)).epsilon(1e-12));
  try {
    normalize(catalog::sign_dev());
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalizable);
  }
}

TEST_CASE("normalization leaves the means unchanged") {
  const auto E = catalog::diff_gen(catalog::power(3.0));
  const auto s = WeightedSample::make({0.3, 2.0, 4.5}, {1, 0.5, 2}, IntervalDomain::positive());
  const auto a = semidev_means(E, s);
  const auto b = semidev_means(normalize(E), s);
  for (std::size_t i = 0; i < 4; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-11));
}

TEST_CASE("semideviation and quasideviation probes") {
  const auto dom = IntervalDomain::open(0.1, 5.0);
  CHECK(check_semideviation(catalog::sign_dev(), dom, 12).holds);
  const auto wrong = Kernel2::from_expression("y - x", IntervalDomain::positive());
  const auto v = check_semideviation(wrong, dom, 12);
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(v.witness->size() == 2);
  CHECK(check_quasideviation(catalog::arithmetic(), dom, 10).holds);
  CHECK_FALSE(check_quasideviation(catalog::sign_dev(), dom, 10).holds);
}

TEST_CASE("deviation mean needs a sign change") {
  const auto never = Kernel2::from_expression("1 + x - x + 0 * y", IntervalDomain::positive());
  const auto s = WeightedSample::make({1, 2}, {1, 1}, IntervalDomain::positive());
  try {
    deviation_mean(never, s);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSignChange);
  }
}

TEST_CASE("kernel failures are wrapped with the cause") {
  const auto bad = Kernel2::from_expression("log(x - 2) - log(y)", IntervalDomain::positive());
  const auto s = WeightedSample::make({1, 3}, {1, 1}, IntervalDomain::positive());
  try {
    semidev_means(bad, s);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KernelEvaluationError);
    CHECK(e.cause() == ErrorCode::DomainError);
  }
}

TEST_CASE("config validation") {
  SemidevMeanConfig cfg;
  cfg.grid_size = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.refine_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
