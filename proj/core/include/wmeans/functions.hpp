#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "wmeans/domain.hpp"
#include "wmeans/expr.hpp"

namespace wmeans {

using RealFn = std::function<double(double)>;
using RealFn2 = std::function<double(double, double)>;

/// One-variable function handle: a generator f (or a homogeneous kernel h)
/// with optional analytic first and second derivatives.
///
/// `difference(a, b)` returns f(a) - f(b). Catalog entries supply a
/// cancellation-free formula for it, which keeps means computed at tiny
/// scales (homogenization limits) accurate; otherwise it subtracts.
class ScalarFunction {
 public:
  struct Parts {
    std::string name;
    RealFn value;
    RealFn d1;
    RealFn d2;
    RealFn2 difference;
    IntervalDomain domain = IntervalDomain::real_line();
  };

  /// Throws DerivativeMismatch when a supplied derivative disagrees with
  /// central differences (relative 1e-5) on a 16-point probe grid.
  static ScalarFunction make(Parts parts);

  /// Builds f from an expression in `x`; `params` may bind p, c, etc.
  static ScalarFunction from_expression(std::string_view source, IntervalDomain domain,
                                        const expr::Bindings& params = {},
                                        std::optional<std::string> d1_source = std::nullopt,
                                        std::optional<std::string> d2_source = std::nullopt);

  /// f(x); raises NonFinite when the value is not finite.
  double operator()(double x) const;
  double difference(double a, double b) const;

  [[nodiscard]] bool has_d1() const noexcept { return static_cast<bool>(parts_.d1); }
  [[nodiscard]] bool has_d2() const noexcept { return static_cast<bool>(parts_.d2); }
  /// Analytic derivatives; InvalidArgument when absent.
  double d1(double x) const;
  double d2(double x) const;

  [[nodiscard]] const IntervalDomain& domain() const noexcept { return parts_.domain; }
  [[nodiscard]] const std::string& name() const noexcept { return parts_.name; }

 private:
  explicit ScalarFunction(Parts parts) : parts_(std::move(parts)) {}
  Parts parts_;
};

/// Two-variable function handle: a semideviation E(x, y) or a binary
/// operation f(u, v), with optional analytic partial derivatives.
class Kernel2 {
 public:
  struct Parts {
    std::string name;
    RealFn2 value;
    RealFn2 d1;  // ∂/∂x
    RealFn2 d2;  // ∂/∂y
    IntervalDomain domain_x = IntervalDomain::real_line();
    IntervalDomain domain_y = IntervalDomain::real_line();
    /// Continuity of y -> E(x, y); false for step kernels such as sign.
    bool continuous = true;
  };

  /// Same derivative-consistency check as ScalarFunction::make, on a 6x6
  /// probe grid.
  static Kernel2 make(Parts parts);

  /// Builds E from an expression in `x` and `y`.
  static Kernel2 from_expression(std::string_view source, IntervalDomain domain,
                                 const expr::Bindings& params = {},
                                 std::optional<std::string> d1_source = std::nullopt,
                                 std::optional<std::string> d2_source = std::nullopt);

  /// E(x, y); raises NonFinite when the value is not finite.
  double operator()(double x, double y) const;

  [[nodiscard]] bool has_d1() const noexcept { return static_cast<bool>(parts_.d1); }
  [[nodiscard]] bool has_d2() const noexcept { return static_cast<bool>(parts_.d2); }

  /// Partial derivatives: analytic when available, otherwise a central
  /// difference in the respective argument.
  double partial1(double x, double y) const;
  double partial2(double x, double y) const;

  /// ∂₂E(y, y), the slope on the diagonal.
  double diagonal_slope(double y) const;

  [[nodiscard]] const IntervalDomain& domain_x() const noexcept { return parts_.domain_x; }
  [[nodiscard]] const IntervalDomain& domain_y() const noexcept { return parts_.domain_y; }
  [[nodiscard]] bool continuous() const noexcept { return parts_.continuous; }
  [[nodiscard]] const std::string& name() const noexcept { return parts_.name; }
  [[nodiscard]] const Parts& parts() const noexcept { return parts_; }

 private:
  explicit Kernel2(Parts parts) : parts_(std::move(parts)) {}
  Parts parts_;
};

enum class DerivativeOrder { First = 1, Second = 2 };

/// Central-difference step for the given order at x:
/// first order h = cbrt(eps) * max(1, |x|), second order h = eps^(1/4) * max(1, |x|).
double central_difference_step(double x, DerivativeOrder order) noexcept;

/// f'(x) or f''(x): the analytic derivative when the handle has one,
/// otherwise a three-point central difference with the fixed step above.
/// Throws StencilOutsideDomain when x ± h leaves f's domain, NonFinite on
/// overflow.
double derivative(const ScalarFunction& f, double x, DerivativeOrder order);

enum class KernelArgument { First, Second };

/// Partial derivative of a kernel slice: ∂₁E(x, y) or ∂₂E(x, y). Order 1
/// uses the analytic partial when present; order 2 is always numeric.
double derivative(const Kernel2& kernel, KernelArgument which, double x, double y,
                  DerivativeOrder order);

/// Central difference of an arbitrary callable on `domain` (same rules).
double central_difference(const RealFn& f, double x, DerivativeOrder order,
                          const IntervalDomain& domain);

/// Like central_difference, but when the fixed step would leave the domain
/// and x != 0 it falls back to the relative step h = c * |x|. Used where
/// derivatives are needed arbitrarily close to an endpoint at 0 (homogenization
/// limits); the relative stencil has the same truncation/rounding balance in
/// the rescaled variable.
double central_difference_near_endpoint(const RealFn& f, double x, DerivativeOrder order,
                                        const IntervalDomain& domain);

}  // namespace wmeans
