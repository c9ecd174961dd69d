#pragma once

#include <functional>
#include <memory>
#include <string>

#include "wmeans/classic_means.hpp"
#include "wmeans/domain.hpp"
#include "wmeans/functions.hpp"
#include "wmeans/limit.hpp"
#include "wmeans/semideviation.hpp"

namespace wmeans {

/// A fixed mean M as a callable on samples, with the interval it lives on.
struct MeanHandle {
  std::string name;
  IntervalDomain domain = IntervalDomain::positive();
  std::function<double(const WeightedSample&)> evaluate;

  double operator()(const WeightedSample& s) const { return evaluate(s); }
};

MeanHandle power_handle(Exponent p);
MeanHandle qa_handle(const ScalarFunction& f);
MeanHandle semidev_handle(const Kernel2& E, MeanKind kind, const SemidevMeanConfig& cfg = {});
MeanHandle deviation_handle(const Kernel2& E, const SemidevMeanConfig& cfg = {});
/// M(x, λ) = P_q(x + c, λ) - c on (0, inf); Jensen concave for q <= 1, c > 0.
/// Evaluated as the quasiarithmetic mean of (x + c)^q so that it stays
/// accurate when x is tiny.
MeanHandle shifted_power_handle(double q, double c);

enum class EnvelopeSide { Lower, Upper };

struct EnvelopeResult {
  double value = 0.0;
  double t = 1.0;     // scale attaining the value
  double t_lo = 0.0;  // searched scale range
  double t_hi = 0.0;
  std::size_t failed_evaluations = 0;
};

/// Admissible scales {t > 0 : t x_i in I for all i}, shrunk by the endpoint
/// margin and clipped to [1e-9, 1e9] on unbounded sides.
std::pair<double, double> admissible_scales(const WeightedSample& s, const IntervalDomain& domain);

/// inf (Lower) or sup (Upper) of M(t x, λ) / t over admissible t: 256
/// log-uniform scales (t = 1 included), then golden-section in log t around
/// the best one to relative 1e-8. Assumes the profile is unimodal near the
/// optimum; the coarse grid guards against missed basins.
EnvelopeResult envelope(const MeanHandle& M, const WeightedSample& s, EnvelopeSide side);

/// lim_{t -> 0+} M(t x, λ) / t. tail_min estimates M_#, tail_max M^#.
/// The domain must have infimum 0 and the entries must be positive.
LimitEstimate local_homogenization(const MeanHandle& M, const WeightedSample& s,
                                   const LimitOptions& options = {});

/// lim_{t -> 0+} E*(x t, t) / t for x > 0; tail_min estimates the lower and
/// tail_max the upper kernel homogenization. Points where E*(x t, t) is 0 for
/// x != 1 are dropped (cancellation in E).
LimitEstimate kernel_homogenization(const Kernel2& E, double x, const LimitOptions& options = {});
/// Same, for a kernel that is already normalized.
LimitEstimate normalized_kernel_homogenization(const Kernel2& normalized, double x,
                                               const LimitOptions& options = {});

/// h_E as a memoized function. Lookups are keyed on u rounded to 12
/// significant digits and the limit is computed at the rounded key, so a key
/// always maps to the same value whichever thread asks first.
class HomogenizedKernel {
 public:
  enum class Side { Lower, Upper, Mid };

  /// Normalizes E and probes sign h(u) = sign(u - 1) at u in
  /// {1/8, 1/4, 1/2, 0.9, 1.1, 2, 4, 8} (SignPropertyViolated).
  explicit HomogenizedKernel(const Kernel2& E, Side side = Side::Mid, LimitOptions options = {});

  /// h(u) for u > 0. Side::Mid needs a converged limit (NotConverged);
  /// Lower / Upper only need a finite one.
  double operator()(double u) const;
  [[nodiscard]] LimitEstimate estimate(double u) const;

  /// F(x, y) = h(x / y) on (0, inf)^2.
  [[nodiscard]] Kernel2 ratio_kernel() const;
  [[nodiscard]] const Kernel2& normalized() const;
  [[nodiscard]] Side side() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Semideviation mean of the ratio kernel h_E(x / y). Homogeneous in x.
double homogeneous_semidev_mean(const HomogenizedKernel& h, const WeightedSample& s, MeanKind kind,
                                const SemidevMeanConfig& cfg = {});
double homogeneous_semidev_mean(const Kernel2& E, const WeightedSample& s, MeanKind kind,
                                const SemidevMeanConfig& cfg = {});

}  // namespace wmeans
