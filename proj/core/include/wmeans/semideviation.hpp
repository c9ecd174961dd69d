#pragma once

#include <array>
#include <cstddef>

#include "wmeans/classic_means.hpp"
#include "wmeans/domain.hpp"
#include "wmeans/functions.hpp"

namespace wmeans {

struct SemidevMeanConfig {
  std::size_t grid_size = 1024;
  /// Bisection stops once the bracket is below refine_tol * max(|lo|, |hi|).
  double refine_tol = 1e-12;
  /// |e(y)| <= zero_band counts as e(y) = 0.
  double zero_band = 0.0;
  int max_bisect = 200;

  /// Throws InvalidArgument on grid_size < 2 or negative tolerances.
  void validate() const;
};

/// e(y) = Σ λ_i E(x_i, y) over positively weighted coordinates. Kernel
/// failures are rethrown as KernelEvaluationError naming (x_i, y).
RealFn build_e(const Kernel2& E, const WeightedSample& s);

/// One of the four means, located on a grid over the support hull and refined
/// by bisection on the defining predicate. Inf-kinds bisect the first cell
/// whose right end satisfies the predicate, sup-kinds the last cell whose left
/// end does. An empty defining set inside the hull clamps to the hull end.
/// Throws AmbiguousClassification when the grid shows isolated one-cell sign
/// flips (e oscillates faster than the grid resolves).
double semidev_mean(const Kernel2& E, const WeightedSample& s, MeanKind kind,
                    const SemidevMeanConfig& cfg = {});

/// All four means from a single grid pass, indexed like kAllMeanKinds.
std::array<double, 4> semidev_means(const Kernel2& E, const WeightedSample& s,
                                    const SemidevMeanConfig& cfg = {});

/// E*(x, y) = E(x, y) / (-∂₂E(y, y)). E must be continuous in y and have a
/// diagonal slope below -1e-12 on a 16-point probe of its y-domain
/// (NotNormalizable names the probe point otherwise).
Kernel2 normalize(const Kernel2& E);

/// sign E(x, y) = sign(x - y) on all pairs of a `grid`-point probe of
/// `domain`, the diagonal included.
ComparisonVerdict check_semideviation(const Kernel2& E, const IntervalDomain& domain, std::size_t grid);

/// Semideviation check, then for probe pairs x < y: t -> E(y, t) / E(x, t)
/// strictly increasing on 16 interior points of (x, y), and no jumps of
/// y -> E(x, y) under a 1e-7 relative nudge. Grid heuristic, not a proof.
ComparisonVerdict check_quasideviation(const Kernel2& E, const IntervalDomain& domain, std::size_t grid);

/// The root of e on the support hull, by bisection. NoSignChange when
/// e(min x) < 0 or e(max x) > 0.
double deviation_mean(const Kernel2& E, const WeightedSample& s, const SemidevMeanConfig& cfg = {});

}  // namespace wmeans
