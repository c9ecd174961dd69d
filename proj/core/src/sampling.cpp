#include "wmeans/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans {

namespace {

// splitmix64 finalizer; decorrelates (seed, index) pairs.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_range(const char* what, std::pair<double, double> r) {
  if (!(r.first <= r.second) || !std::isfinite(r.first) || !std::isfinite(r.second)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " range [" + format_double(r.first) + ", " +
                                                format_double(r.second) + "] is invalid");
  }
}

}  // namespace

void SamplePlan::validate() const {
  if (n_min == 0 || n_min > n_max) throw Error(ErrorCode::InvalidArgument, "need 1 <= n_min <= n_max");
  check_range("entry", entry_range);
  check_range("weight", weight_range);
  if (weight_range.first < 0.0 || weight_range.second <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative with a positive upper bound");
  }
  if (!(degenerate_rate >= 0.0 && degenerate_rate <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "degenerate_rate must lie in [0, 1]");
  }
  auto inside = [this](std::pair<double, double> r) {
    return domain.contains(r.first) && domain.contains(r.second);
  };
  if (!inside(entry_range)) throw Error(ErrorCode::InvalidArgument, "entry range leaves " + domain.to_string());
  if (y_entry_range) {
    check_range("y entry", *y_entry_range);
    if (!inside(*y_entry_range)) {
      throw Error(ErrorCode::InvalidArgument, "y entry range leaves " + domain.to_string());
    }
  }
}

SampleRng::SampleRng(std::uint64_t seed, std::size_t index)
    : engine_(mix(seed ^ mix(static_cast<std::uint64_t>(index)))) {}

double SampleRng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SampleRng::uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

std::size_t SampleRng::integer(std::size_t lo, std::size_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  const auto k = static_cast<std::size_t>(unit() * span);
  return lo + std::min(k, hi - lo);
}

std::vector<std::size_t> random_permutation(SampleRng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.integer(0, i - 1)]);
  return perm;
}

std::vector<double> draw_entries(const SamplePlan& plan, SampleRng& rng, std::size_t n, bool second_range) {
  const auto range = second_range && plan.y_entry_range ? *plan.y_entry_range : plan.entry_range;
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform(range);
  return xs;
}

WeightedSample draw_sample(const SamplePlan& plan, SampleRng& rng) {
  const std::size_t n = rng.integer(plan.n_min, plan.n_max);
  const bool degenerate = rng.unit() < plan.degenerate_rate;
  std::vector<double> xs = draw_entries(plan, rng, n);
  if (degenerate) std::fill(xs.begin(), xs.end(), xs.front());
  std::vector<double> ws(n);
  for (double& w : ws) w = rng.uniform(plan.weight_range);
  if (plan.weight_range.first == 0.0 && std::all_of(ws.begin(), ws.end(), [](double w) { return w == 0.0; })) {
    ws.front() = plan.weight_range.second;
  }
  return WeightedSample::make(std::move(xs), std::move(ws), plan.domain);
}

}  // namespace wmeans
