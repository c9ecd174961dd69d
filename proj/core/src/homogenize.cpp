#include "wmeans/homogenize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>

#include "wmeans/catalog.hpp"
#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans {

namespace {

constexpr std::size_t kEnvelopeGrid = 256;
constexpr double kGoldenTol = 1e-8;
constexpr double kMinScale = 1e-9;
constexpr double kMaxScale = 1e9;
constexpr std::array<double, 8> kSignProbes = {0.125, 0.25, 0.5, 0.9, 1.1, 2.0, 4.0, 8.0};

double round_key(double u) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", u);
  return std::strtod(buf, nullptr);
}

}  // namespace

MeanHandle power_handle(Exponent p) {
  return {"power:" + format_double(p.value()), IntervalDomain::positive(),
          [p](const WeightedSample& s) { return power_mean(s, p); }};
}

MeanHandle qa_handle(const ScalarFunction& f) {
  return {"qa:" + f.name(), f.domain(), [f](const WeightedSample& s) { return quasiarithmetic_mean(s, f); }};
}

MeanHandle semidev_handle(const Kernel2& E, MeanKind kind, const SemidevMeanConfig& cfg) {
  return {"semidev:" + E.name() + ":" + std::string(mean_kind_name(kind)), E.domain_y(),
          [E, kind, cfg](const WeightedSample& s) { return semidev_mean(E, s, kind, cfg); }};
}

MeanHandle deviation_handle(const Kernel2& E, const SemidevMeanConfig& cfg) {
  return {"deviation:" + E.name(), E.domain_y(),
          [E, cfg](const WeightedSample& s) { return deviation_mean(E, s, cfg); }};
}

MeanHandle shifted_power_handle(double q, double c) {
  MeanHandle h = qa_handle(catalog::shifted_power(q, c));
  h.name = "shifted-power:" + format_double(q) + "," + format_double(c);
  return h;
}

std::pair<double, double> admissible_scales(const WeightedSample& s, const IntervalDomain& domain) {
  double t_lo = 0.0;
  double t_hi = kInfinity;
  const double lo = domain.lo() + (std::isfinite(domain.lo()) ? IntervalDomain::endpoint_margin(domain.lo()) : 0.0);
  const double hi = domain.hi() - (std::isfinite(domain.hi()) ? IntervalDomain::endpoint_margin(domain.hi()) : 0.0);
  for (double x : s.entries()) {
    if (x > 0.0) {
      t_lo = std::max(t_lo, lo / x);
      t_hi = std::min(t_hi, hi / x);
    } else if (x < 0.0) {
      t_lo = std::max(t_lo, hi / x);
      t_hi = std::min(t_hi, lo / x);
    } else if (!domain.contains(0.0)) {
      throw Error(ErrorCode::EmptyAdmissibleSet, "entry 0 is outside " + domain.to_string());
    }
  }
  t_lo = std::max(t_lo, kMinScale);
  t_hi = std::min(t_hi, kMaxScale);
  if (!(t_lo < t_hi)) {
    throw Error(ErrorCode::EmptyAdmissibleSet,
                "no admissible scale in [" + format_double(t_lo) + ", " + format_double(t_hi) + "]");
  }
  return {t_lo, t_hi};
}

EnvelopeResult envelope(const MeanHandle& M, const WeightedSample& s, EnvelopeSide side) {
  auto [t_lo, t_hi] = admissible_scales(s, M.domain);
  EnvelopeResult out;
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  const double sign = side == EnvelopeSide::Lower ? 1.0 : -1.0;
  // Minimized objective in log t; NaN marks a failed evaluation.
  auto objective = [&](double log_t) {
    const double t = std::exp(log_t);
    try {
      return sign * M(s.scaled(t)) / t;
    } catch (const Error&) {
      ++out.failed_evaluations;
      return std::nan("");
    }
  };

  std::vector<double> grid;
  grid.reserve(kEnvelopeGrid);
  const double a = std::log(t_lo);
  const double b = std::log(t_hi);
  for (std::size_t k = 0; k + 1 < kEnvelopeGrid; ++k) {
    grid.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(kEnvelopeGrid - 2));
  }
  if (t_lo <= 1.0 && 1.0 <= t_hi) grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());

  std::vector<double> values(grid.size());
  std::size_t best = grid.size();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    values[k] = objective(grid[k]);
    if (!std::isnan(values[k]) && (best == grid.size() || values[k] < values[best])) best = k;
  }
  if (best == grid.size()) {
    throw Error(ErrorCode::AllEvaluationsFailed, "mean " + M.name + " failed at every scale");
  }

  double left = grid[best > 0 ? best - 1 : best];
  double right = grid[best + 1 < grid.size() ? best + 1 : best];
  double best_x = grid[best];
  double best_v = values[best];
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = right - invphi * (right - left);
  double d = left + invphi * (right - left);
  double fc = objective(c);
  double fd = objective(d);
  while (right - left > kGoldenTol) {
    const bool take_left = std::isnan(fd) || (!std::isnan(fc) && fc < fd);
    if (take_left) {
      right = d;
      d = c;
      fd = fc;
      c = right - invphi * (right - left);
      fc = objective(c);
    } else {
      left = c;
      c = d;
      fc = fd;
      d = left + invphi * (right - left);
      fd = objective(d);
    }
    if (!std::isnan(fc) && fc < best_v) {
      best_v = fc;
      best_x = c;
    }
    if (!std::isnan(fd) && fd < best_v) {
      best_v = fd;
      best_x = d;
    }
  }
  out.value = sign * best_v;
  out.t = std::exp(best_x);
  return out;
}

LimitEstimate local_homogenization(const MeanHandle& M, const WeightedSample& s, const LimitOptions& options) {
  if (!M.domain.has_zero_infimum()) {
    throw Error(ErrorCode::InvalidDomain, "local homogenization needs a domain with infimum 0, got " +
                                              M.domain.to_string());
  }
  for (double x : s.entries()) {
    if (!(x > 0.0)) throw Error(ErrorCode::NonPositiveEntry, "entry " + format_double(x) + " is not positive");
  }
  const double t0 = initial_scale(M.domain, s.max_entry());
  return limit_at_zero([&](double t) { return M(s.scaled(t)) / t; }, t0, options);
}

LimitEstimate normalized_kernel_homogenization(const Kernel2& normalized, double x, const LimitOptions& options) {
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel homogenization needs x > 0");
  if (!normalized.domain_y().has_zero_infimum() || !normalized.domain_x().has_zero_infimum()) {
    throw Error(ErrorCode::InvalidDomain, "kernel homogenization needs domains with infimum 0");
  }
  const double t0 = initial_scale(normalized.domain_y(), std::max(x, 1.0));
  auto g = [&](double t) {
    const double v = normalized(x * t, t);
    if (v == 0.0 && x != 1.0) {
      throw Error(ErrorCode::NonFinite, "E*(x t, t) cancelled to 0 at t = " + format_double(t));
    }
    return v / t;
  };
  return limit_at_zero(g, t0, options);
}

LimitEstimate kernel_homogenization(const Kernel2& E, double x, const LimitOptions& options) {
  return normalized_kernel_homogenization(normalize(E), x, options);
}

struct HomogenizedKernel::State {
  Kernel2 normalized;
  Side side;
  LimitOptions options;
  std::mutex mutex;
  std::map<double, double> memo;

  State(Kernel2 k, Side s, LimitOptions o) : normalized(std::move(k)), side(s), options(o) {}

  double compute(double key) const {
    const LimitEstimate est = normalized_kernel_homogenization(normalized, key, options);
    if (est.diverged) {
      throw Error(ErrorCode::NotConverged, "h(" + format_double(key) + ") diverges (" + est.caveat + ")");
    }
    switch (side) {
      case Side::Lower:
        return est.tail_min;
      case Side::Upper:
        return est.tail_max;
      case Side::Mid:
        break;
    }
    if (!est.converged) {
      throw Error(ErrorCode::NotConverged, "h(" + format_double(key) + ") tail spread " +
                                               format_double(est.spread()) + " (" + est.caveat + ")");
    }
    return est.value();
  }
};

HomogenizedKernel::HomogenizedKernel(const Kernel2& E, Side side, LimitOptions options)
    : state_(std::make_shared<State>(normalize(E), side, options)) {
  for (double u : kSignProbes) {
    const double h = (*this)(u);
    const bool ok = u < 1.0 ? h < 0.0 : h > 0.0;
    if (!ok) {
      throw Error(ErrorCode::SignPropertyViolated,
                  "h(" + format_double(u) + ") = " + format_double(h) + " has the wrong sign");
    }
  }
}

double HomogenizedKernel::operator()(double u) const {
  if (!(u > 0.0)) throw Error(ErrorCode::InvalidArgument, "h needs u > 0");
  const double key = round_key(u);
  {
    std::lock_guard<std::mutex> lock(state_->mutex);
    auto it = state_->memo.find(key);
    if (it != state_->memo.end()) return it->second;
  }
  const double value = state_->compute(key);
  std::lock_guard<std::mutex> lock(state_->mutex);
  return state_->memo.emplace(key, value).first->second;
}

LimitEstimate HomogenizedKernel::estimate(double u) const {
  return normalized_kernel_homogenization(state_->normalized, round_key(u), state_->options);
}

Kernel2 HomogenizedKernel::ratio_kernel() const {
  Kernel2::Parts parts;
  parts.name = "ratio(h[" + state_->normalized.name() + "])";
  HomogenizedKernel self = *this;
  parts.value = [self](double x, double y) { return self(x / y); };
  parts.domain_x = IntervalDomain::positive();
  parts.domain_y = IntervalDomain::positive();
  return Kernel2::make(std::move(parts));
}

const Kernel2& HomogenizedKernel::normalized() const { return state_->normalized; }

HomogenizedKernel::Side HomogenizedKernel::side() const { return state_->side; }

double homogeneous_semidev_mean(const HomogenizedKernel& h, const WeightedSample& s, MeanKind kind,
                                const SemidevMeanConfig& cfg) {
  try {
    return semidev_mean(h.ratio_kernel(), s, kind, cfg);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::KernelEvaluationError && err.cause() == ErrorCode::NotConverged) {
      throw Error(ErrorCode::NotConverged, err.what());
    }
    throw;
  }
}

double homogeneous_semidev_mean(const Kernel2& E, const WeightedSample& s, MeanKind kind,
                                const SemidevMeanConfig& cfg) {
  return homogeneous_semidev_mean(HomogenizedKernel(E), s, kind, cfg);
}

}  // namespace wmeans
