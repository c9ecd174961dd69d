#include <cmath>

#include "doctest.h"
#include "wmeans/catalog.hpp"
#include "wmeans/verify.hpp"

using namespace wmeans;

namespace {

SamplePlan small_plan(std::uint64_t seed, std::size_t n) {
  SamplePlan plan;
  plan.seed = seed;
  plan.n_samples = n;
  return plan;
}

const Condition& cond(const Report& r, std::string_view name) {
  const Condition* c = r.find(name);
  REQUIRE_MESSAGE(c != nullptr, name);
  return *c;
}

}  // namespace

TEST_CASE("sandwich holds for the sign and cosh kernels") {
  for (const char* spec : {"sign", "cosh", "expr:sign(x-y)*abs(x-y)^0.3"}) {
    const Report r = verify_sandwich(catalog::parse_kernel(spec), small_plan(1, 60));
    CAPTURE(spec);
    CHECK(r.overall == Overall::Pass);
    CHECK(cond(r, "symmetry").checked == 240);
  }
}

TEST_CASE("sandwich refuses a non-semideviation") {
  const Report r = verify_sandwich(Kernel2::from_expression("y - x", IntervalDomain::positive()), small_plan(1, 5));
  CHECK(r.overall == Overall::Inconclusive);
  CHECK(cond(r, "admission:semideviation").witness.has_value());
}

TEST_CASE("lemma lim for the arithmetic kernel") {
  const Report r = verify_lemma_lim(catalog::arithmetic(), 1.0, 3.0);
  CHECK(r.overall == Overall::Pass);
  CHECK(cond(r, "lower-weak:final-error").max_violation < 0.0);
}

TEST_CASE("comparison: pass one way, replayable witness the other way") {
  const auto A1 = catalog::parse_kernel("power:1");
  const auto A2 = catalog::parse_kernel("power:2");
  CHECK(verify_comparison(A1, A2, small_plan(4, 40)).overall == Overall::Pass);
  const Report bad = verify_comparison(A2, A1, small_plan(4, 40));
  REQUIRE(bad.overall == Overall::Fail);
  const Condition& pw = cond(bad, "pointwise:E*<=F*");
  REQUIRE(pw.witness);
  const auto* pt = pw.witness->field("point");
  REQUIRE(pt);
  const auto E = normalize(A2);
  const auto F = normalize(A1);
  CHECK(E((*pt)[0], (*pt)[1]) > F((*pt)[0], (*pt)[1]) + kKernelTolerance);
  CHECK(cond(bad, "coupling").holds);
}

TEST_CASE("jensen faces agree") {
  const Report good = verify_jensen(catalog::parse_kernel("power:0.5"), small_plan(2, 40));
  CHECK(good.overall == Overall::Pass);
  const Report bad = verify_jensen(catalog::parse_kernel("power:2"), small_plan(2, 40));
  CHECK(bad.overall == Overall::Fail);
  const Condition& iii = cond(bad, "iii:normalized-midpoint-concave");
  REQUIRE_FALSE(iii.holds);
  REQUIRE(iii.witness);
  CHECK(iii.witness->field("point")->size() == 4);
  CHECK(cond(bad, "coupling").holds);
  CHECK(cond(bad, "agreement").holds);
}

TEST_CASE("tei holds for the cosh kernel") {
  const Report r = verify_tei(catalog::parse_kernel("cosh"), small_plan(3, 15));
  CHECK(r.overall == Overall::Pass);
}

TEST_CASE("cei: concave kernel passes, cosh kernel is inconclusive") {
  const Report good = verify_cei(catalog::parse_kernel("power:0.5"), small_plan(5, 10));
  CHECK(good.overall == Overall::Pass);
  const Report cosh = verify_cei(catalog::parse_kernel("cosh"), small_plan(5, 10));
  CHECK(cosh.overall == Overall::Inconclusive);
  CHECK_FALSE(cond(cosh, "hypothesis:normalized-midpoint-concave").holds);
  CHECK(cond(cosh, "EI+:E_h=(D)_#").holds);
}

TEST_CASE("homi presets") {
  HomiOptions o;
  o.grid = 6;
  const Report add = verify_minkowski(catalog::arithmetic(), small_plan(6, 30), o);
  CHECK(add.overall == Overall::Pass);
  CHECK(cond(add, "add1").max_slack <= 1e-9);
  const Report mul = verify_hoelder(catalog::parse_kernel("log"), small_plan(6, 30), o);
  CHECK(mul.overall == Overall::Pass);
  CHECK(cond(mul, "add1").max_slack <= 1e-9);
  // P_3 is subadditive, P_1/2 is not.
  CHECK(verify_minkowski(catalog::parse_kernel("power:3"), small_plan(6, 30), o).overall == Overall::Pass);
  const Report rev = verify_minkowski(catalog::parse_kernel("power:0.5"), small_plan(6, 30), o);
  CHECK(rev.overall == Overall::Fail);
  CHECK(cond(rev, "coupling").holds);
}

TEST_CASE("axioms for a semideviation mean") {
  const auto M = semidev_handle(catalog::sign_dev(), MeanKind::UpperStrict);
  CHECK(verify_axioms(M, small_plan(8, 50)).overall == Overall::Pass);
}

TEST_CASE("axioms catch a broken mean") {
  MeanHandle broken{"first-entry", IntervalDomain::positive(),
                    [](const WeightedSample& s) { return s.entries()[0]; }};
  const Report r = verify_axioms(broken, small_plan(8, 50));
  CHECK(r.overall == Overall::Fail);
  CHECK_FALSE(cond(r, "symmetry").holds);
}

TEST_CASE("chain and concave limit") {
  CHECK(verify_homogenization_chain(qa_handle(catalog::cosh()), small_plan(9, 10)).overall == Overall::Pass);
  CHECK(verify_concave_limit(shifted_power_handle(0.5, 1.0), small_plan(9, 10)).overall == Overall::Pass);
}

TEST_CASE("structured reports are deterministic") {
  const auto E = catalog::parse_kernel("power:2");
  const auto F = catalog::parse_kernel("power:1");
  const std::string a = to_structured(verify_comparison(E, F, small_plan(12, 20)));
  const std::string b = to_structured(verify_comparison(E, F, small_plan(12, 20)));
  CHECK(a == b);
  CHECK(a.find("\"theorem\": \"comparison\"") != std::string::npos);
  CHECK(a.find("\"overall\": \"fail\"") != std::string::npos);
}
