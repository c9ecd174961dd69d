#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wmeans/domain.hpp"
#include "wmeans/functions.hpp"
#include "wmeans/limit.hpp"

namespace wmeans {

/// Outcome of a pointwise check over a grid. A failing verdict always names
/// the point (`witness`) where the condition broke, so it can be re-evaluated.
struct ComparisonVerdict {
  bool holds = true;
  std::optional<std::vector<double>> witness;
  std::size_t checked_points = 0;
  /// Largest observed violation (lhs - rhs); negative means slack.
  double worst_margin = -kInfinity;
  std::string detail;
};

/// Weighted power mean P_p. Entries must be positive (NonPositiveEntry);
/// p = -inf / +inf give min / max over positively weighted entries. Finite p
/// scales by the extreme entry so that no power overflows; the result is
/// clamped to the support hull.
double power_mean(const WeightedSample& s, Exponent p);
inline double power_mean(const WeightedSample& s, double p) { return power_mean(s, Exponent(p)); }

/// QA_f(x, λ) = f⁻¹(Σ λ_i f(x_i) / Σ λ_i), solved as the root of
/// y -> Σ λ_i (f(x_i) - f(y)) by bisection on the support hull (relative
/// tolerance 1e-12, at most 200 steps). f must be strictly monotone on the
/// hull; this is probed on 64 points (GeneratorNotMonotone).
double quasiarithmetic_mean(const WeightedSample& s, const ScalarFunction& f);

/// χ_f(x) = x f''(x) / f'(x) + 1. Without analytic derivatives the
/// derivatives are taken of s -> f(x s) at s = 1, i.e. with a step relative to
/// |x|. Throws VanishingFirstDerivative when |f'(x)| <= 1e-14.
double chi(const ScalarFunction& f, double x);

/// Checks f''/f' <= g''/g' on `grid_size` interior points of `domain`
/// (its probe window when unbounded). Witness: the first failing x.
ComparisonVerdict compare_quasiarithmetic(const ScalarFunction& f, const ScalarFunction& g,
                                          const IntervalDomain& domain, std::size_t grid_size);

struct QaHomogenization {
  LimitEstimate chi_limit;  // χ_f(t) as t -> 0+
  double p_low = 0.0;       // liminf proxy
  double p_high = 0.0;      // limsup proxy
  /// Both tails converged and |p_high - p_low| <= 1e-6; then the lower and
  /// upper local homogenizations of QA_f both equal P_p with p = `p()`.
  bool equal = false;
  [[nodiscard]] double p() const noexcept { return 0.5 * (p_low + p_high); }
};

/// liminf / limsup of χ_f(t) as t -> 0+. f's domain must have infimum 0.
/// Throws Diverged when the tail runs away.
QaHomogenization qa_local_homogenization(const ScalarFunction& f, const LimitOptions& options = {});

/// φ(x) = lim_{t -> 0+} (f(tx) - f(t)) / (f(2t) - f(t)) for x > 0.
/// Throws Diverged, or DegenerateDenominator when f(2t) - f(t) vanishes
/// before the tail settles.
LimitEstimate phi_limit(const ScalarFunction& f, double x, const LimitOptions& options = {});

/// Strict monotonicity of x -> φ(x) on `grid_size` log-spaced points of
/// [1/4, 4], the heuristic admission check for a φ-based characterization.
/// Continuity of φ is not decidable from samples; `detail` says so.
/// Witness: the adjacent pair (x_k, x_{k+1}) where the order breaks.
ComparisonVerdict phi_monotonicity(const ScalarFunction& f, std::size_t grid_size = 16,
                                   const LimitOptions& options = {});

/// Largest power of 1/2 (at most 1) with t * reach inside `domain`, keeping
/// the open-endpoint margin. Throws EmptyAdmissibleSet when none exists.
double initial_scale(const IntervalDomain& domain, double reach);

}  // namespace wmeans
