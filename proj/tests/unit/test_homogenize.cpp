#include <cmath>
#include <thread>

#include "doctest.h"
#include "wmeans/catalog.hpp"
#include "wmeans/error.hpp"
#include "wmeans/homogenize.hpp"
#include "wmeans/sampling.hpp"

using namespace wmeans;

TEST_CASE("cosh mean homogenizes to the quadratic mean") {
  const auto M = qa_handle(catalog::cosh());
  const auto s = WeightedSample::make({1, 7}, {1, 1}, IntervalDomain::positive());
  const auto est = local_homogenization(M, s);
  CHECK(est.converged);
  CHECK(est.value() == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(est.values.front().first == 1.0);
}

TEST_CASE("power means are their own homogenization") {
  SamplePlan plan;
  for (std::size_t k = 0; k < 20; ++k) {
    SampleRng rng(plan.seed, k);
    const auto s = draw_sample(plan, rng);
    const auto M = power_handle(Exponent(-0.5));
    CHECK(local_homogenization(M, s).value() == doctest::Approx(M(s)).epsilon(1e-12));
    const auto lo = envelope(M, s, EnvelopeSide::Lower);
    const auto hi = envelope(M, s, EnvelopeSide::Upper);
    CHECK(lo.value == doctest::Approx(M(s)).epsilon(1e-9));
    CHECK(hi.value == doctest::Approx(M(s)).epsilon(1e-9));
  }
}

TEST_CASE("envelopes bracket the mean") {
  auto M = qa_handle(catalog::exp());
  M.domain = IntervalDomain::open(0.0, 2.0);
  const auto s = WeightedSample::make({0.5, 1.0}, {1, 1}, M.domain);
  const auto lo = envelope(M, s, EnvelopeSide::Lower);
  const auto hi = envelope(M, s, EnvelopeSide::Upper);
  CHECK(lo.value <= M(s));
  CHECK(M(s) <= hi.value);
  CHECK(lo.value < hi.value);
  const auto [tlo, thi] = admissible_scales(s, M.domain);
  CHECK(tlo == 1e-9);
  CHECK(thi < 2.0);
  CHECK(thi > 1.99);
}

TEST_CASE("kernel homogenization") {
  // E*(u t, t) / t = (cosh(u t) - cosh t) / (t sinh t) -> (u² - 1) / 2.
  const auto E = catalog::diff_gen(catalog::cosh());
  CHECK(kernel_homogenization(E, 3.0).value() == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(kernel_homogenization(E, 0.5).value() == doctest::Approx(-0.375).epsilon(1e-8));
  const HomogenizedKernel h(E);
  CHECK(h(3.0) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(h(1.0) == 0.0);
  CHECK(h.ratio_kernel()(6.0, 2.0) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(h.side() == HomogenizedKernel::Side::Mid);
}

TEST_CASE("homogenized kernel memo is consistent across threads") {
  const HomogenizedKernel h(catalog::diff_gen(catalog::cosh()));
  std::vector<double> a(64), b(64);
  std::thread t1([&] {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = h(0.1 + 0.1 * static_cast<double>(i));
  });
  std::thread t2([&] {
    for (std::size_t i = b.size(); i-- > 0;) b[i] = h(0.1 + 0.1 * static_cast<double>(i));
  });
  t1.join();
  t2.join();
  CHECK(a == b);
}

TEST_CASE("homogeneous semideviation mean of the cosh kernel is the quadratic mean") {
  const auto s = WeightedSample::make({1, 7}, {1, 1}, IntervalDomain::positive());
  const auto E = catalog::diff_gen(catalog::cosh());
  CHECK(homogeneous_semidev_mean(E, s, MeanKind::LowerWeak) == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(homogeneous_semidev_mean(E, s.scaled(0.01), MeanKind::UpperWeak) == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("sign property of the kernel homogenization is enforced") {
  // E*(u t, t)/t -> u - 1 + 3 (u - 1)² changes sign below u = 2/3.
  const auto E = Kernel2::from_expression("(x - y) + 3 * (x - y)^2 / y", IntervalDomain::positive());
  try {
    HomogenizedKernel h(E);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SignPropertyViolated);
  }
}

TEST_CASE("shifted power handle is concave and homogenizes to the arithmetic mean") {
  const auto M = shifted_power_handle(0.5, 1.0);
  const auto s = WeightedSample::make({1, 7}, {1, 1}, IntervalDomain::positive());
  CHECK(M(s) == doctest::Approx(std::pow(0.5 * (std::sqrt(2.0) + std::sqrt(8.0)), 2.0) - 1.0));
  const auto est = local_homogenization(M, s);
  CHECK(est.value() == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(M(s) <= est.tail_min);
}
