#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "wmeans/domain.hpp"

namespace wmeans {

/// Recipe for a deterministic stream of random weighted samples.
struct SamplePlan {
  std::uint64_t seed = 1;
  std::size_t n_samples = 100;
  std::size_t n_min = 1;
  std::size_t n_max = 6;
  std::pair<double, double> entry_range{0.1, 5.0};
  /// Range for a second entry vector (the y of f(x, y)); entry_range when unset.
  std::optional<std::pair<double, double>> y_entry_range;
  std::pair<double, double> weight_range{0.1, 2.0};
  /// Fraction of samples whose entries are all equal.
  double degenerate_rate = 0.05;
  IntervalDomain domain = IntervalDomain::positive();

  /// Throws InvalidArgument on empty or inverted ranges, n_min = 0, or
  /// entry ranges leaving the domain.
  void validate() const;
};

/// Random source for sample k of a plan. Uniforms are built from the raw
/// 64-bit output ((u >> 11) * 2^-53), so streams are identical on every
/// platform and standard library.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::size_t index);

  /// Uniform on [0, 1).
  double unit();
  double uniform(double lo, double hi);
  double uniform(std::pair<double, double> range) { return uniform(range.first, range.second); }
  /// Uniform integer in [lo, hi].
  std::size_t integer(std::size_t lo, std::size_t hi);

 private:
  std::mt19937_64 engine_;
};

/// Random permutation of 0..n-1 (Fisher-Yates on SampleRng).
std::vector<std::size_t> random_permutation(SampleRng& rng, std::size_t n);

/// Sample k of the plan: entries from entry_range (all equal with
/// probability degenerate_rate), weights from weight_range.
WeightedSample draw_sample(const SamplePlan& plan, SampleRng& rng);
/// Another entry vector of length n from entry_range (or y_entry_range).
std::vector<double> draw_entries(const SamplePlan& plan, SampleRng& rng, std::size_t n,
                                 bool second_range = false);

}  // namespace wmeans
