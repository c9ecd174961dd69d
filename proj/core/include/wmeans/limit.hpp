#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wmeans/functions.hpp"

namespace wmeans {

/// Numerical estimate of lim_{t -> 0+} g(t).
///
/// tail_min and tail_max are the min and max over the last `window` finite
/// values; they stand in for liminf and limsup. They are proxies only, and
/// `caveat` records the window and the t-range they were taken from.
struct LimitEstimate {
  std::vector<std::pair<double, double>> values;  // (t_k, g(t_k)), t_k decreasing
  double tail_min = 0.0;
  double tail_max = 0.0;
  bool converged = false;
  bool diverged = false;
  std::size_t window = 0;
  std::size_t failed_evaluations = 0;
  std::string caveat;

  /// Midpoint of the tail bracket.
  [[nodiscard]] double value() const noexcept { return 0.5 * (tail_min + tail_max); }
  [[nodiscard]] double spread() const noexcept { return tail_max - tail_min; }
};

struct LimitOptions {
  double ratio = 0.5;
  std::size_t max_steps = 60;
  std::size_t window = 8;
  /// Convergence: spread <= tol * max(1, |tail midpoint|).
  double tol = 1e-6;
};

/// Evaluates g at t_k = t0 * ratio^k, k = 0..max_steps, stopping early when t_k
/// drops below 1e-300. Evaluations that throw are skipped and counted.
/// Throws AllEvaluationsFailed when nothing finite came back (the last error's
/// message is included).
LimitEstimate limit_at_zero(const RealFn& g, double t0, const LimitOptions& options = {});

}  // namespace wmeans
