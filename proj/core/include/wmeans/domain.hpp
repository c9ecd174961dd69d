#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wmeans {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A real interval with independently open or closed ends. Infinite
/// endpoints are always open.
class IntervalDomain {
 public:
  IntervalDomain(double lo, double hi, bool lo_open, bool hi_open);

  static IntervalDomain open(double lo, double hi) { return {lo, hi, true, true}; }
  static IntervalDomain closed(double lo, double hi) { return {lo, hi, false, false}; }
  /// (0, +inf), the canonical domain for homogenization.
  static IntervalDomain positive() { return open(0.0, kInfinity); }
  static IntervalDomain real_line() { return open(-kInfinity, kInfinity); }

  /// Accepts "(0,inf)", "[1, 2)", "(-inf,inf)" and the bare form "0,inf"
  /// (treated as open).
  static IntervalDomain parse(std::string_view text);

  [[nodiscard]] double lo() const noexcept { return lo_; }
  [[nodiscard]] double hi() const noexcept { return hi_; }
  [[nodiscard]] bool lo_open() const noexcept { return lo_open_; }
  [[nodiscard]] bool hi_open() const noexcept { return hi_open_; }

  [[nodiscard]] bool contains(double x) const noexcept;

  /// True when the left endpoint is an excluded zero, i.e. inf I = 0 and
  /// t*x stays in I for all small t > 0 and positive x.
  [[nodiscard]] bool has_zero_infimum() const noexcept { return lo_ == 0.0 && lo_open_; }
  [[nodiscard]] bool is_subset_of_positive() const noexcept { return lo_ >= 0.0 && (lo_ > 0.0 || lo_open_); }

  /// Safety distance kept from an open endpoint when a solver has to
  /// evaluate close to it.
  [[nodiscard]] static double endpoint_margin(double endpoint) noexcept;

  /// Membership with open endpoints shrunk by `endpoint_margin`.
  [[nodiscard]] bool contains_with_margin(double x) const noexcept;

  /// Finite sub-window used for probing: the interval itself when bounded,
  /// otherwise a window of width 10*max(1,|endpoint|) next to the finite
  /// endpoint, or [-10, 10] for the whole line.
  [[nodiscard]] std::pair<double, double> probe_window() const noexcept;

  /// n points strictly inside the probe window, uniformly spaced.
  [[nodiscard]] std::vector<double> interior_grid(std::size_t n) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const IntervalDomain&, const IntervalDomain&) = default;

 private:
  double lo_;
  double hi_;
  bool lo_open_;
  bool hi_open_;
};

/// n points strictly inside [lo, hi]: lo + (hi - lo) * (i + 1) / (n + 1).
std::vector<double> interior_grid(double lo, double hi, std::size_t n);

/// Entry vector with a weight vector from W_n(R), bound to the domain the
/// entries live in. Weights are kept exactly as given.
class WeightedSample {
 public:
  /// Throws LengthMismatch, NegativeWeight, AllWeightsZero or EntryOutOfDomain.
  static WeightedSample make(std::vector<double> entries, std::vector<double> weights,
                             IntervalDomain domain);

  [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
  [[nodiscard]] const IntervalDomain& domain() const noexcept { return domain_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] double weight_sum() const noexcept;

  [[nodiscard]] double min_entry() const noexcept;
  [[nodiscard]] double max_entry() const noexcept;

  /// [min, max] over entries with positive weight. Every mean in this
  /// library lands in this hull.
  [[nodiscard]] std::pair<double, double> support_hull() const noexcept;

  /// True when all positively weighted entries coincide.
  [[nodiscard]] bool is_constant() const noexcept;

  /// t * x with the same weights and domain; throws EntryOutOfDomain when a
  /// scaled entry leaves the domain.
  [[nodiscard]] WeightedSample scaled(double t) const;
  [[nodiscard]] WeightedSample scaled_weights(double t) const;
  [[nodiscard]] WeightedSample with_entries(std::vector<double> entries) const;
  /// Simultaneous permutation: result[i] = this[perm[i]].
  [[nodiscard]] WeightedSample permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const WeightedSample&, const WeightedSample&) = default;

 private:
  WeightedSample(std::vector<double> entries, std::vector<double> weights, IntervalDomain domain)
      : entries_(std::move(entries)), weights_(std::move(weights)), domain_(domain) {}

  std::vector<double> entries_;
  std::vector<double> weights_;
  IntervalDomain domain_;
};

inline WeightedSample make_weighted_sample(std::vector<double> entries, std::vector<double> weights,
                                           IntervalDomain domain) {
  return WeightedSample::make(std::move(entries), std::move(weights), domain);
}

/// (x ⊙ x, λ ⊙ μ): entries and weights interleaved coordinate by coordinate.
/// Both samples must carry identical entries and domain (MismatchedEntries).
WeightedSample shuffle_merge(const WeightedSample& first, const WeightedSample& second);

/// Drops every coordinate whose weight is zero.
WeightedSample eliminate_zero_weights(const WeightedSample& sample);

/// Power-mean exponent on the extended real line.
class Exponent {
 public:
  explicit Exponent(double value);
  static Exponent minus_infinity() { return Exponent(-kInfinity); }
  static Exponent plus_infinity() { return Exponent(kInfinity); }

  [[nodiscard]] double value() const noexcept { return value_; }
  [[nodiscard]] bool is_finite() const noexcept { return value_ > -kInfinity && value_ < kInfinity; }

  friend auto operator<=>(const Exponent& a, const Exponent& b) noexcept {
    return a.value_ <=> b.value_;
  }
  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double value_;
};

/// The four semideviation means.
///   LowerWeak   = inf{y : e(y) <= 0}
///   LowerStrict = inf{y : e(y) <  0}
///   UpperStrict = sup{y : e(y) >  0}
///   UpperWeak   = sup{y : e(y) >= 0}
enum class MeanKind { LowerWeak, LowerStrict, UpperStrict, UpperWeak };

inline constexpr std::array<MeanKind, 4> kAllMeanKinds = {
    MeanKind::LowerWeak, MeanKind::LowerStrict, MeanKind::UpperStrict, MeanKind::UpperWeak};

std::string_view mean_kind_name(MeanKind kind) noexcept;
/// Defining set of the kind, e.g. "inf{y : e(y) <= 0}".
std::string_view mean_kind_formula(MeanKind kind) noexcept;
/// Accepts the names produced by mean_kind_name ("lower-weak", ...).
MeanKind parse_mean_kind(std::string_view name);

}  // namespace wmeans
