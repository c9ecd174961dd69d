#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "doctest.h"
#include "wmeans/domain.hpp"
#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

using namespace wmeans;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("interval parsing and membership") {
  const auto d = IntervalDomain::parse("[1, 2)");
  CHECK(d.contains(1.0));
  CHECK(d.contains(1.5));
  CHECK_FALSE(d.contains(2.0));
  CHECK(d.to_string() == "[1, 2)");

  const auto bare = IntervalDomain::parse("0,inf");
  CHECK(bare == IntervalDomain::positive());
  CHECK(bare.has_zero_infimum());
  CHECK_FALSE(bare.contains(0.0));

  CHECK(IntervalDomain::parse("(-inf,inf)") == IntervalDomain::real_line());
  CHECK(code_of([] { IntervalDomain::parse("(2,1)"); }) == ErrorCode::InvalidDomain);
  CHECK(code_of([] { IntervalDomain::parse("(a,1)"); }) == ErrorCode::InvalidDomain);
}

TEST_CASE("interior grid stays strictly inside") {
  for (const auto& d : {IntervalDomain::positive(), IntervalDomain::real_line(), IntervalDomain::open(0.1, 5.0)}) {
    const auto g = d.interior_grid(17);
    REQUIRE(g.size() == 17);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(d.contains(g[i]));
      if (i) CHECK(g[i] > g[i - 1]);
    }
  }
}

TEST_CASE("weighted sample validation") {
  const auto pos = IntervalDomain::positive();
  CHECK(code_of([&] { WeightedSample::make({1, 2}, {1}, pos); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([&] { WeightedSample::make({1, 2}, {1, -1}, pos); }) == ErrorCode::NegativeWeight);
  CHECK(code_of([&] { WeightedSample::make({1, 2}, {0, 0}, pos); }) == ErrorCode::AllWeightsZero);
  CHECK(code_of([&] { WeightedSample::make({-1, 2}, {1, 1}, pos); }) == ErrorCode::EntryOutOfDomain);

  const auto s = WeightedSample::make({5, 1, 3}, {0, 2, 1}, pos);
  CHECK(s.support_hull() == std::pair{1.0, 3.0});
  CHECK(s.min_entry() == 1.0);
  CHECK(s.max_entry() == 5.0);
  CHECK(s.weight_sum() == 3.0);
  CHECK_FALSE(s.is_constant());
  CHECK(WeightedSample::make({2, 2, 9}, {1, 1, 0}, pos).is_constant());
}

TEST_CASE("shuffle merge interleaves and elimination drops zero weights") {
  const auto pos = IntervalDomain::positive();
  const auto a = WeightedSample::make({1, 2}, {1, 0}, pos);
  const auto b = WeightedSample::make({1, 2}, {3, 4}, pos);
  const auto m = shuffle_merge(a, b);
  CHECK(std::vector<double>(m.entries().begin(), m.entries().end()) == std::vector<double>{1, 1, 2, 2});
  CHECK(std::vector<double>(m.weights().begin(), m.weights().end()) == std::vector<double>{1, 3, 0, 4});
  const auto e = eliminate_zero_weights(m);
  CHECK(e.size() == 3);
  CHECK(code_of([&] { shuffle_merge(a, WeightedSample::make({1, 3}, {1, 1}, pos)); }) ==
        ErrorCode::MismatchedEntries);
}

TEST_CASE("scaling and permutation") {
  const auto s = WeightedSample::make({1, 2, 4}, {1, 2, 3}, IntervalDomain::open(0.0, 5.0));
  const auto t = s.scaled(0.5);
  CHECK(t.entries()[2] == 2.0);
  CHECK(code_of([&] { (void)s.scaled(2.0); }) == ErrorCode::EntryOutOfDomain);
  const std::vector<std::size_t> perm{2, 0, 1};
  const auto p = s.permuted(perm);
  CHECK(p.entries()[0] == 4.0);
  CHECK(p.weights()[0] == 3.0);
}

TEST_CASE("mean kind names round trip") {
  for (MeanKind k : kAllMeanKinds) CHECK(parse_mean_kind(mean_kind_name(k)) == k);
  CHECK(code_of([] { parse_mean_kind("middle"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("format_double round trips at full precision") {
  std::mt19937_64 gen(42);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 2000) {
    const std::uint64_t b = bits(gen);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    ++checked;
    const auto back = parse_double(format_double(v));
    REQUIRE(back.has_value());
    CHECK(*back == v);
  }
  CHECK(format_double(5.0) == "5");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("number lists") {
  CHECK(parse_double_list("1,7, 2.5") == std::vector<double>{1, 7, 2.5});
  CHECK(parse_double("+inf").value() == std::numeric_limits<double>::infinity());
  CHECK_FALSE(parse_double("1x").has_value());
  CHECK(code_of([] { parse_double_list("1,,2"); }) == ErrorCode::InvalidArgument);
}
