#include "wmeans/limit.hpp"

#include <algorithm>
#include <cmath>

#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans {

namespace {

constexpr double kSmallestStep = 1e-300;
constexpr double kDivergenceFactor = 1e8;

bool tail_diverges(const std::vector<std::pair<double, double>>& values, std::size_t window) {
  if (values.size() < 2) return false;
  const std::size_t begin = values.size() > window ? values.size() - window : 0;
  for (std::size_t k = begin + 1; k < values.size(); ++k) {
    if (std::abs(values[k].second) <= std::abs(values[k - 1].second)) return false;
  }
  const double first = std::abs(values.front().second);
  return std::abs(values.back().second) > kDivergenceFactor * std::max(1.0, first);
}

}  // namespace

LimitEstimate limit_at_zero(const RealFn& g, double t0, const LimitOptions& options) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) {
    throw Error(ErrorCode::InvalidArgument, "t0 must be positive and finite");
  }
  if (!(options.ratio > 0.0 && options.ratio < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ratio must lie in (0, 1)");
  }
  if (options.window == 0) throw Error(ErrorCode::InvalidArgument, "window must be positive");

  LimitEstimate est;
  est.window = options.window;
  std::string last_error;
  double t = t0;
  for (std::size_t k = 0; k <= options.max_steps && t >= kSmallestStep; ++k, t *= options.ratio) {
    try {
      const double v = g(t);
      if (std::isfinite(v)) {
        est.values.emplace_back(t, v);
      } else {
        ++est.failed_evaluations;
      }
    } catch (const Error& e) {
      ++est.failed_evaluations;
      last_error = e.what();
    }
  }
  if (est.values.empty()) {
    throw Error(ErrorCode::AllEvaluationsFailed,
                "no finite value of g on t in [" + format_double(t * options.ratio) + ", " +
                    format_double(t0) + "]" + (last_error.empty() ? "" : "; last: " + last_error));
  }

  const std::size_t begin = est.values.size() > options.window ? est.values.size() - options.window : 0;
  est.tail_min = est.values[begin].second;
  est.tail_max = est.values[begin].second;
  for (std::size_t k = begin; k < est.values.size(); ++k) {
    est.tail_min = std::min(est.tail_min, est.values[k].second);
    est.tail_max = std::max(est.tail_max, est.values[k].second);
  }
  const std::size_t tail_size = est.values.size() - begin;
  est.converged = tail_size >= std::min<std::size_t>(options.window, 2) &&
                  est.spread() <= options.tol * std::max(1.0, std::abs(est.value()));
  est.diverged = !est.converged && tail_diverges(est.values, options.window);
  est.caveat = "tail of " + std::to_string(tail_size) + " values on t in [" +
               format_double(est.values.back().first) + ", " +
               format_double(est.values[begin].first) + "]";
  return est;
}

}  // namespace wmeans
