#include "wmeans/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans {

IntervalDomain::IntervalDomain(double lo, double hi, bool lo_open, bool hi_open)
    : lo_(lo), hi_(hi), lo_open_(lo_open || std::isinf(lo)), hi_open_(hi_open || std::isinf(hi)) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    throw Error(ErrorCode::InvalidDomain,
                "interval needs lo < hi, got " + format_double(lo) + ", " + format_double(hi));
  }
}

IntervalDomain IntervalDomain::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view body = trim(text);
  bool lo_open = true;
  bool hi_open = true;
  if (!body.empty() && (body.front() == '(' || body.front() == '[')) {
    lo_open = body.front() == '(';
    body.remove_prefix(1);
    if (body.empty() || (body.back() != ')' && body.back() != ']')) {
      throw Error(ErrorCode::InvalidDomain, "unterminated interval '" + std::string(text) + "'");
    }
    hi_open = body.back() == ')';
    body.remove_suffix(1);
  }
  auto comma = body.find(',');
  if (comma == std::string_view::npos) {
    throw Error(ErrorCode::InvalidDomain, "interval needs two endpoints: '" + std::string(text) + "'");
  }
  auto lo = parse_double(body.substr(0, comma));
  auto hi = parse_double(body.substr(comma + 1));
  if (!lo || !hi) {
    throw Error(ErrorCode::InvalidDomain, "bad interval endpoint in '" + std::string(text) + "'");
  }
  return {*lo, *hi, lo_open, hi_open};
}

bool IntervalDomain::contains(double x) const noexcept {
  if (std::isnan(x)) return false;
  bool above = lo_open_ ? x > lo_ : x >= lo_;
  bool below = hi_open_ ? x < hi_ : x <= hi_;
  return above && below;
}

double IntervalDomain::endpoint_margin(double endpoint) noexcept {
  return 1e-12 * std::max(1.0, std::abs(endpoint));
}

bool IntervalDomain::contains_with_margin(double x) const noexcept {
  if (!contains(x)) return false;
  if (lo_open_ && std::isfinite(lo_) && x < lo_ + endpoint_margin(lo_)) return false;
  if (hi_open_ && std::isfinite(hi_) && x > hi_ - endpoint_margin(hi_)) return false;
  return true;
}

std::pair<double, double> IntervalDomain::probe_window() const noexcept {
  const bool lo_finite = std::isfinite(lo_);
  const bool hi_finite = std::isfinite(hi_);
  if (lo_finite && hi_finite) return {lo_, hi_};
  if (lo_finite) return {lo_, lo_ + 10.0 * std::max(1.0, std::abs(lo_))};
  if (hi_finite) return {hi_ - 10.0 * std::max(1.0, std::abs(hi_)), hi_};
  return {-10.0, 10.0};
}

std::vector<double> IntervalDomain::interior_grid(std::size_t n) const {
  auto [lo, hi] = probe_window();
  return wmeans::interior_grid(lo, hi, n);
}

std::string IntervalDomain::to_string() const {
  return std::string(lo_open_ ? "(" : "[") + format_double(lo_) + ", " + format_double(hi_) +
         (hi_open_ ? ")" : "]");
}

std::vector<double> interior_grid(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  const double width = hi - lo;
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + width * static_cast<double>(i + 1) / static_cast<double>(n + 1);
  }
  return grid;
}

WeightedSample WeightedSample::make(std::vector<double> entries, std::vector<double> weights,
                                    IntervalDomain domain) {
  if (entries.size() != weights.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(entries.size()) + " entries but " +
                                               std::to_string(weights.size()) + " weights");
  }
  if (entries.empty()) {
    throw Error(ErrorCode::LengthMismatch, "a sample needs at least one entry");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i])) {
      throw Error(ErrorCode::InvalidArgument, "weight " + std::to_string(i) + " is not finite");
    }
    if (weights[i] < 0.0) {
      throw Error(ErrorCode::NegativeWeight,
                  "weight " + std::to_string(i) + " = " + format_double(weights[i]));
    }
    total += weights[i];
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::AllWeightsZero, "weights must have a positive sum");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!domain.contains(entries[i])) {
      throw Error(ErrorCode::EntryOutOfDomain, "entry " + std::to_string(i) + " = " +
                                                   format_double(entries[i]) + " not in " +
                                                   domain.to_string());
    }
  }
  return {std::move(entries), std::move(weights), domain};
}

double WeightedSample::weight_sum() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double WeightedSample::min_entry() const noexcept {
  return *std::min_element(entries_.begin(), entries_.end());
}

double WeightedSample::max_entry() const noexcept {
  return *std::max_element(entries_.begin(), entries_.end());
}

std::pair<double, double> WeightedSample::support_hull() const noexcept {
  double lo = kInfinity;
  double hi = -kInfinity;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (weights_[i] > 0.0) {
      lo = std::min(lo, entries_[i]);
      hi = std::max(hi, entries_[i]);
    }
  }
  return {lo, hi};
}

bool WeightedSample::is_constant() const noexcept {
  auto [lo, hi] = support_hull();
  return lo == hi;
}

WeightedSample WeightedSample::scaled(double t) const {
  std::vector<double> entries(entries_);
  for (double& x : entries) x *= t;
  return make(std::move(entries), weights_, domain_);
}

WeightedSample WeightedSample::scaled_weights(double t) const {
  std::vector<double> weights(weights_);
  for (double& w : weights) w *= t;
  return make(entries_, std::move(weights), domain_);
}

WeightedSample WeightedSample::with_entries(std::vector<double> entries) const {
  return make(std::move(entries), weights_, domain_);
}

WeightedSample WeightedSample::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != entries_.size()) {
    throw Error(ErrorCode::LengthMismatch, "permutation length differs from sample size");
  }
  std::vector<double> entries(perm.size());
  std::vector<double> weights(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= entries_.size()) {
      throw Error(ErrorCode::InvalidArgument, "permutation index out of range");
    }
    entries[i] = entries_[perm[i]];
    weights[i] = weights_[perm[i]];
  }
  return {std::move(entries), std::move(weights), domain_};
}

WeightedSample shuffle_merge(const WeightedSample& first, const WeightedSample& second) {
  if (!std::ranges::equal(first.entries(), second.entries()) || first.domain() != second.domain()) {
    throw Error(ErrorCode::MismatchedEntries, "shuffle_merge needs identical entry vectors");
  }
  const std::size_t n = first.size();
  std::vector<double> entries;
  std::vector<double> weights;
  entries.reserve(2 * n);
  weights.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    entries.push_back(first.entries()[i]);
    entries.push_back(first.entries()[i]);
    weights.push_back(first.weights()[i]);
    weights.push_back(second.weights()[i]);
  }
  return WeightedSample::make(std::move(entries), std::move(weights), first.domain());
}

WeightedSample eliminate_zero_weights(const WeightedSample& sample) {
  std::vector<double> entries;
  std::vector<double> weights;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (sample.weights()[i] != 0.0) {
      entries.push_back(sample.entries()[i]);
      weights.push_back(sample.weights()[i]);
    }
  }
  return WeightedSample::make(std::move(entries), std::move(weights), sample.domain());
}

Exponent::Exponent(double value) : value_(value) {
  if (std::isnan(value)) throw Error(ErrorCode::InvalidArgument, "exponent is NaN");
}

std::string_view mean_kind_name(MeanKind kind) noexcept {
  switch (kind) {
    case MeanKind::LowerWeak: return "lower-weak";
    case MeanKind::LowerStrict: return "lower-strict";
    case MeanKind::UpperStrict: return "upper-strict";
    case MeanKind::UpperWeak: return "upper-weak";
  }
  return "?";
}

std::string_view mean_kind_formula(MeanKind kind) noexcept {
  switch (kind) {
    case MeanKind::LowerWeak: return "inf{y : e(y) <= 0}";
    case MeanKind::LowerStrict: return "inf{y : e(y) < 0}";
    case MeanKind::UpperStrict: return "sup{y : e(y) > 0}";
    case MeanKind::UpperWeak: return "sup{y : e(y) >= 0}";
  }
  return "?";
}

MeanKind parse_mean_kind(std::string_view name) {
  for (MeanKind kind : kAllMeanKinds) {
    if (mean_kind_name(kind) == name) return kind;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown mean kind '" + std::string(name) + "'");
}

}  // namespace wmeans
