#include "wmeans/classic_means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDerivativeGuard = 1e-14;
constexpr double kSolverTol = 1e-12;
constexpr int kMaxBisect = 200;
constexpr std::size_t kMonotonicityProbe = 64;
constexpr double kHomogenizationEqualityTol = 1e-6;

void require_positive_entries(const WeightedSample& s) {
  for (double x : s.entries()) {
    if (!(x > 0.0)) {
      throw Error(ErrorCode::NonPositiveEntry, "power mean entry " + format_double(x) + " is not positive");
    }
  }
}

double clamp_to_hull(const WeightedSample& s, double v) {
  auto [lo, hi] = s.support_hull();
  return std::clamp(v, lo, hi);
}

// f'' / f' at x, analytic when available, otherwise on the rescaled function.
std::pair<double, double> rescaled_derivatives(const ScalarFunction& f, double x) {
  if (f.has_d1() && f.has_d2()) return {x * f.d1(x), x * x * f.d2(x)};
  if (x == 0.0) {
    return {0.0, 0.0};
  }
  const double h1 = std::cbrt(kEps);
  const double h2 = std::sqrt(std::sqrt(kEps));
  const double lo = x * (1.0 - std::max(h1, h2));
  const double hi = x * (1.0 + std::max(h1, h2));
  if (!f.domain().contains(lo) || !f.domain().contains(hi)) {
    throw Error(ErrorCode::StencilOutsideDomain,
                "x = " + format_double(x) + " is too close to the boundary of " + f.domain().to_string());
  }
  const double g1 = f.difference(x * (1.0 + h1), x * (1.0 - h1)) / (2.0 * h1);
  const double g2 =
      (f.difference(x * (1.0 + h2), x) - f.difference(x, x * (1.0 - h2))) / (h2 * h2);
  return {g1, g2};
}

}  // namespace

double power_mean(const WeightedSample& s, Exponent p) {
  require_positive_entries(s);
  const auto xs = s.entries();
  const auto ws = s.weights();
  if (p.value() == -kInfinity) return s.support_hull().first;
  if (p.value() == kInfinity) return s.support_hull().second;
  if (s.is_constant()) return s.support_hull().first;

  const double total = s.weight_sum();
  if (p.value() == 0.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (ws[i] > 0.0) acc += ws[i] * std::log(xs[i]);
    }
    return clamp_to_hull(s, std::exp(acc / total));
  }

  // Scaled by the extreme entry that makes every ratio^p <= 1, so nothing
  // overflows and the reference term keeps the sum away from 0.
  const double q = p.value();
  const auto [lo, hi] = s.support_hull();
  const double ref = q > 0.0 ? hi : lo;
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ws[i] > 0.0) acc += ws[i] * std::pow(xs[i] / ref, q);
  }
  const double value = ref * std::pow(acc / total, 1.0 / q);
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFinite, "power mean overflow for p = " + format_double(q));
  }
  return clamp_to_hull(s, value);
}

double quasiarithmetic_mean(const WeightedSample& s, const ScalarFunction& f) {
  if (s.is_constant()) return s.support_hull().first;
  auto [lo, hi] = s.support_hull();
  for (double x : s.entries()) {
    if (!f.domain().contains(x)) {
      throw Error(ErrorCode::EntryOutOfDomain,
                  "entry " + format_double(x) + " outside generator domain " + f.domain().to_string());
    }
  }

  const auto probe = interior_grid(lo, hi, kMonotonicityProbe - 2);
  std::vector<double> points;
  points.reserve(kMonotonicityProbe);
  points.push_back(lo);
  points.insert(points.end(), probe.begin(), probe.end());
  points.push_back(hi);
  const double orientation = f.difference(hi, lo) > 0.0 ? 1.0 : -1.0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (!(orientation * f.difference(points[k], points[k - 1]) > 0.0)) {
      throw Error(ErrorCode::GeneratorNotMonotone,
                  f.name() + " is not strictly monotone between " + format_double(points[k - 1]) +
                      " and " + format_double(points[k]));
    }
  }

  const auto xs = s.entries();
  const auto ws = s.weights();
  // Positive on the left of the mean, negative on the right.
  auto residual = [&](double y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (ws[i] > 0.0) acc += ws[i] * f.difference(xs[i], y);
    }
    return orientation * acc;
  };

  double a = lo;
  double b = hi;
  for (int iter = 0; iter < kMaxBisect; ++iter) {
    if (b - a <= kSolverTol * std::max(std::abs(a), std::abs(b))) break;
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double r = residual(mid);
    if (r == 0.0) return mid;
    if (r > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  const double result = 0.5 * (a + b);
  if (!std::isfinite(result)) throw Error(ErrorCode::SolverFailure, "bisection produced a non-finite value");
  return result;
}

double chi(const ScalarFunction& f, double x) {
  if (x == 0.0) {
    const double d1 = derivative(f, 0.0, DerivativeOrder::First);
    if (std::abs(d1) <= kDerivativeGuard) {
      throw Error(ErrorCode::VanishingFirstDerivative, f.name() + "'(0) vanishes");
    }
    return 1.0;
  }
  auto [g1, g2] = rescaled_derivatives(f, x);
  // g1 = x f'(x)
  if (std::abs(g1 / x) <= kDerivativeGuard) {
    throw Error(ErrorCode::VanishingFirstDerivative,
                f.name() + "'(" + format_double(x) + ") = " + format_double(g1 / x));
  }
  return g2 / g1 + 1.0;
}

ComparisonVerdict compare_quasiarithmetic(const ScalarFunction& f, const ScalarFunction& g,
                                          const IntervalDomain& domain, std::size_t grid_size) {
  auto log_slope = [](const ScalarFunction& fn, double x) {
    const double d1 = derivative(fn, x, DerivativeOrder::First);
    if (std::abs(d1) <= kDerivativeGuard) {
      throw Error(ErrorCode::VanishingFirstDerivative,
                  fn.name() + "'(" + format_double(x) + ") = " + format_double(d1));
    }
    return derivative(fn, x, DerivativeOrder::Second) / d1;
  };
  ComparisonVerdict verdict;
  for (double x : domain.interior_grid(grid_size)) {
    const double lhs = log_slope(f, x);
    const double rhs = log_slope(g, x);
    ++verdict.checked_points;
    const double margin = lhs - rhs;
    verdict.worst_margin = std::max(verdict.worst_margin, margin);
    if (margin > 1e-9 * (1.0 + std::abs(rhs)) && verdict.holds) {
      verdict.holds = false;
      verdict.witness = std::vector<double>{x};
      verdict.detail = "f''/f' = " + format_double(lhs) + " > g''/g' = " + format_double(rhs) +
                       " at x = " + format_double(x);
    }
  }
  return verdict;
}

ComparisonVerdict phi_monotonicity(const ScalarFunction& f, std::size_t grid_size, const LimitOptions& options) {
  if (grid_size < 2) throw Error(ErrorCode::InvalidArgument, "phi monotonicity needs at least 2 points");
  ComparisonVerdict v;
  v.detail = "grid heuristic: strict order of phi on [1/4, 4]; continuity not checked";
  std::vector<double> xs(grid_size);
  std::vector<double> phis(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    xs[k] = std::exp2(-2.0 + 4.0 * static_cast<double>(k) / static_cast<double>(grid_size - 1));
    phis[k] = phi_limit(f, xs[k], options).value();
  }
  // φ(1) = 0 and φ(2) = 1, so an increasing φ is the only admissible order.
  for (std::size_t k = 0; k + 1 < grid_size; ++k) {
    ++v.checked_points;
    const double margin = phis[k] - phis[k + 1];
    v.worst_margin = std::max(v.worst_margin, margin);
    if (margin >= 0.0 && v.holds) {
      v.holds = false;
      v.witness = std::vector<double>{xs[k], xs[k + 1]};
    }
  }
  return v;
}

double initial_scale(const IntervalDomain& domain, double reach) {
  if (!(reach > 0.0) || !std::isfinite(reach)) {
    throw Error(ErrorCode::InvalidArgument, "reach must be positive and finite");
  }
  double t = 1.0;
  for (int k = 0; k < 1100 && t > 0.0; ++k, t *= 0.5) {
    if (domain.contains_with_margin(t * reach)) return t;
  }
  throw Error(ErrorCode::EmptyAdmissibleSet,
              "no scale t <= 1 keeps " + format_double(reach) + " inside " + domain.to_string());
}

QaHomogenization qa_local_homogenization(const ScalarFunction& f, const LimitOptions& options) {
  if (!f.domain().has_zero_infimum()) {
    throw Error(ErrorCode::InvalidDomain, "homogenization needs a domain with infimum 0, got " +
                                              f.domain().to_string());
  }
  QaHomogenization out;
  out.chi_limit = limit_at_zero([&f](double t) { return chi(f, t); },
                                initial_scale(f.domain(), 1.0), options);
  if (out.chi_limit.diverged) {
    throw Error(ErrorCode::Diverged, "chi_" + f.name() + "(t) diverges as t -> 0 (" +
                                         out.chi_limit.caveat + ")");
  }
  out.p_low = out.chi_limit.tail_min;
  out.p_high = out.chi_limit.tail_max;
  out.equal = out.chi_limit.converged && out.p_high - out.p_low <= kHomogenizationEqualityTol;
  return out;
}

LimitEstimate phi_limit(const ScalarFunction& f, double x, const LimitOptions& options) {
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "phi needs x > 0");
  if (!f.domain().has_zero_infimum()) {
    throw Error(ErrorCode::InvalidDomain, "phi needs a domain with infimum 0, got " + f.domain().to_string());
  }
  std::size_t degenerate = 0;
  auto ratio = [&](double t) {
    const double den = f.difference(2.0 * t, t);
    if (den == 0.0 || !std::isfinite(den)) {
      ++degenerate;
      throw Error(ErrorCode::DegenerateDenominator, "f(2t) - f(t) = 0 at t = " + format_double(t));
    }
    return f.difference(t * x, t) / den;
  };
  LimitEstimate est = limit_at_zero(ratio, initial_scale(f.domain(), std::max(x, 2.0)), options);
  if (est.diverged) {
    throw Error(ErrorCode::Diverged, "phi(" + format_double(x) + ") diverges (" + est.caveat + ")");
  }
  if (!est.converged && degenerate > 0) {
    throw Error(ErrorCode::DegenerateDenominator,
                "f(2t) - f(t) vanished at " + std::to_string(degenerate) + " steps before convergence");
  }
  return est;
}

}  // namespace wmeans
