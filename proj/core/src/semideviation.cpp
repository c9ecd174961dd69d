#include "wmeans/semideviation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans {

namespace {

constexpr double kSlopeGuard = 1e-12;
constexpr std::size_t kNormalizeProbe = 16;
constexpr std::size_t kRatioProbe = 16;
constexpr double kNudge = 1e-7;
constexpr double kJumpTolerance = 1e-3;

int classify(double v, double band) {
  if (std::abs(v) <= band) return 0;
  return v > 0.0 ? 1 : -1;
}

bool satisfies(MeanKind kind, int c) {
  switch (kind) {
    case MeanKind::LowerWeak:
      return c <= 0;
    case MeanKind::LowerStrict:
      return c < 0;
    case MeanKind::UpperStrict:
      return c > 0;
    case MeanKind::UpperWeak:
      return c >= 0;
  }
  return false;
}

bool is_lower(MeanKind kind) { return kind == MeanKind::LowerWeak || kind == MeanKind::LowerStrict; }

bool bracket_done(double lo, double hi, const SemidevMeanConfig& cfg) {
  const double mid = 0.5 * (lo + hi);
  return hi - lo <= cfg.refine_tol * std::max(std::abs(lo), std::abs(hi)) || mid <= lo || mid >= hi;
}

struct Grid {
  std::vector<double> y;
  std::vector<int> cls;
};

Grid classify_grid(const RealFn& e, double a, double b, const SemidevMeanConfig& cfg) {
  Grid g;
  g.y.resize(cfg.grid_size);
  g.cls.resize(cfg.grid_size);
  const double step = (b - a) / static_cast<double>(cfg.grid_size - 1);
  for (std::size_t j = 0; j < cfg.grid_size; ++j) {
    g.y[j] = j + 1 == cfg.grid_size ? b : a + step * static_cast<double>(j);
    g.cls[j] = classify(e(g.y[j]), cfg.zero_band);
  }
  std::size_t flips = 0;
  for (std::size_t j = 1; j + 1 < g.cls.size(); ++j) {
    if (g.cls[j] != 0 && g.cls[j - 1] == -g.cls[j] && g.cls[j + 1] == -g.cls[j]) ++flips;
  }
  if (flips > 0) {
    throw Error(ErrorCode::AmbiguousClassification,
                "e changes sign in " + std::to_string(flips) + " isolated grid cell(s) on [" +
                    format_double(a) + ", " + format_double(b) + "]; increase grid_size");
  }
  return g;
}

double locate(const RealFn& e, const Grid& g, MeanKind kind, const SemidevMeanConfig& cfg) {
  const std::size_t n = g.y.size();
  const double a = g.y.front();
  const double b = g.y.back();
  // inside: a point satisfying the predicate; outside: one that does not.
  double outside = 0.0;
  double inside = 0.0;
  if (is_lower(kind)) {
    std::optional<std::size_t> first;
    for (std::size_t j = 0; j < n; ++j) {
      if (satisfies(kind, g.cls[j])) {
        first = j;
        break;
      }
    }
    if (!first) return b;
    if (*first == 0) return a;
    outside = g.y[*first - 1];
    inside = g.y[*first];
  } else {
    std::optional<std::size_t> last;
    for (std::size_t j = n; j-- > 0;) {
      if (satisfies(kind, g.cls[j])) {
        last = j;
        break;
      }
    }
    if (!last) return a;
    if (*last == n - 1) return b;
    inside = g.y[*last];
    outside = g.y[*last + 1];
  }
  double lo = std::min(inside, outside);
  double hi = std::max(inside, outside);
  const bool inside_is_hi = inside > outside;
  for (int iter = 0; iter < cfg.max_bisect && !bracket_done(lo, hi, cfg); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const bool in = satisfies(kind, classify(e(mid), cfg.zero_band));
    if (in == inside_is_hi) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void SemidevMeanConfig::validate() const {
  if (grid_size < 2) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 2");
  if (!(refine_tol >= 0.0) || !(zero_band >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be nonnegative");
  }
  if (max_bisect < 0) throw Error(ErrorCode::InvalidArgument, "max_bisect must be nonnegative");
}

RealFn build_e(const Kernel2& E, const WeightedSample& s) {
  std::vector<double> xs;
  std::vector<double> ws;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.weights()[i] > 0.0) {
      xs.push_back(s.entries()[i]);
      ws.push_back(s.weights()[i]);
    }
  }
  return [E, xs = std::move(xs), ws = std::move(ws)](double y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      try {
        acc += ws[i] * E(xs[i], y);
      } catch (const Error& err) {
        throw Error(ErrorCode::KernelEvaluationError, E.name() + " at (" + format_double(xs[i]) + ", " +
                                                          format_double(y) + "): " + err.what(),
                    err.code());
      }
    }
    return acc;
  };
}

std::array<double, 4> semidev_means(const Kernel2& E, const WeightedSample& s,
                                    const SemidevMeanConfig& cfg) {
  cfg.validate();
  auto [a, b] = s.support_hull();
  if (s.is_constant()) return {a, a, a, a};
  const RealFn e = build_e(E, s);
  const Grid g = classify_grid(e, a, b, cfg);
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < kAllMeanKinds.size(); ++k) out[k] = locate(e, g, kAllMeanKinds[k], cfg);
  return out;
}

double semidev_mean(const Kernel2& E, const WeightedSample& s, MeanKind kind,
                    const SemidevMeanConfig& cfg) {
  cfg.validate();
  auto [a, b] = s.support_hull();
  if (s.is_constant()) return a;
  const RealFn e = build_e(E, s);
  return locate(e, classify_grid(e, a, b, cfg), kind, cfg);
}

Kernel2 normalize(const Kernel2& E) {
  if (!E.continuous()) {
    throw Error(ErrorCode::NotNormalizable, E.name() + " is not continuous in y");
  }
  for (double y : E.domain_y().interior_grid(kNormalizeProbe)) {
    if (!E.domain_x().contains(y)) continue;
    double slope = 0.0;
    try {
      slope = E.diagonal_slope(y);
    } catch (const Error& err) {
      throw Error(ErrorCode::NotNormalizable,
                  E.name() + ": no diagonal slope at y = " + format_double(y) + " (" + err.what() + ")");
    }
    if (!(slope < -kSlopeGuard)) {
      throw Error(ErrorCode::NotNormalizable, E.name() + ": d2 E(y, y) = " + format_double(slope) +
                                                  " at y = " + format_double(y));
    }
  }
  Kernel2::Parts parts = E.parts();
  parts.name = "normalized(" + E.name() + ")";
  parts.value = [E](double x, double y) { return E(x, y) / (-E.diagonal_slope(y)); };
  if (E.has_d1()) {
    parts.d1 = [E](double x, double y) { return E.partial1(x, y) / (-E.diagonal_slope(y)); };
  } else {
    parts.d1 = nullptr;
  }
  parts.d2 = nullptr;
  return Kernel2::make(std::move(parts));
}

ComparisonVerdict check_semideviation(const Kernel2& E, const IntervalDomain& domain, std::size_t grid) {
  ComparisonVerdict verdict;
  const auto points = domain.interior_grid(grid);
  for (double x : points) {
    for (double y : points) {
      ++verdict.checked_points;
      const int expected = x > y ? 1 : (x < y ? -1 : 0);
      int got = 0;
      std::string failure;
      try {
        got = classify(E(x, y), 0.0);
      } catch (const Error& err) {
        failure = err.what();
      }
      if (failure.empty() && got == expected) continue;
      verdict.holds = false;
      verdict.witness = std::vector<double>{x, y};
      verdict.detail = failure.empty() ? "sign E(" + format_double(x) + ", " + format_double(y) +
                                             ") = " + std::to_string(got) + ", expected " +
                                             std::to_string(expected)
                                       : failure;
      return verdict;
    }
  }
  return verdict;
}

ComparisonVerdict check_quasideviation(const Kernel2& E, const IntervalDomain& domain, std::size_t grid) {
  ComparisonVerdict verdict = check_semideviation(E, domain, grid);
  if (!verdict.holds) return verdict;
  if (!E.continuous()) {
    verdict.holds = false;
    verdict.detail = E.name() + " is declared discontinuous in y";
    return verdict;
  }
  const auto points = domain.interior_grid(grid);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double x = points[i];
      const double y = points[j];
      double prev = -kInfinity;
      double prev_t = x;
      for (double t : interior_grid(x, y, kRatioProbe)) {
        ++verdict.checked_points;
        const double r = E(y, t) / E(x, t);
        if (!(r > prev)) {
          verdict.holds = false;
          verdict.witness = std::vector<double>{x, y, t};
          verdict.detail = "E(y, t) / E(x, t) not strictly increasing between t = " + format_double(prev_t) +
                           " and t = " + format_double(t);
          return verdict;
        }
        prev = r;
        prev_t = t;
      }
    }
  }
  for (double x : points) {
    for (double y : points) {
      const double nudged = y + kNudge * std::max(1.0, std::abs(y));
      if (!domain.contains(nudged)) continue;
      const double v = E(x, y);
      const double jump = std::abs(E(x, nudged) - v);
      if (jump > kJumpTolerance * std::max(1.0, std::abs(v))) {
        verdict.holds = false;
        verdict.witness = std::vector<double>{x, y};
        verdict.detail = "y -> E(x, y) jumps by " + format_double(jump) + " near y = " + format_double(y);
        return verdict;
      }
    }
  }
  return verdict;
}

double deviation_mean(const Kernel2& E, const WeightedSample& s, const SemidevMeanConfig& cfg) {
  cfg.validate();
  auto [a, b] = s.support_hull();
  if (s.is_constant()) return a;
  const RealFn e = build_e(E, s);
  const int left = classify(e(a), cfg.zero_band);
  const int right = classify(e(b), cfg.zero_band);
  if (left < 0 || right > 0) {
    throw Error(ErrorCode::NoSignChange, "e(" + format_double(a) + ") and e(" + format_double(b) +
                                             ") do not bracket a root");
  }
  double lo = a;
  double hi = b;
  for (int iter = 0; iter < cfg.max_bisect && !bracket_done(lo, hi, cfg); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const int c = classify(e(mid), cfg.zero_band);
    if (c == 0) return mid;
    if (c > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace wmeans
