#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wmeans/functions.hpp"

namespace wmeans::catalog {

// Generators. All carry analytic f', f'' and a cancellation-free difference.

/// π_p(x) = x^p for p != 0, π_0 = log, on (0, inf).
ScalarFunction power(double p);
/// exp on the whole line.
ScalarFunction exp();
/// log on (0, inf); same as power(0) but named "log".
ScalarFunction log();
/// cosh on (0, inf), where it is strictly increasing.
ScalarFunction cosh();
/// (x + c)^q (log(x + c) for q = 0) on (0, inf) for c >= 0, on (-c, inf) otherwise.
ScalarFunction shifted_power(double q, double c);

// Kernels.

/// S(x, y) = sign(x - y) on the real line; not continuous.
Kernel2 sign_dev();
/// A(x, y) = x - y on the real line.
Kernel2 arithmetic();
/// A_f(x, y) = f(x) - f(y) on f's domain. A decreasing f is replaced by -f so
/// the result is a semideviation (both generate the same quasiarithmetic mean).
Kernel2 diff_gen(const ScalarFunction& f);
/// E_f(x, y) = f(x / y) on (0, inf); a semideviation when sign f(u) = sign(u - 1).
Kernel2 ratio_dev(const ScalarFunction& f);

// Binary operations f(u, v) for the Minkowski/Hölder presets.

/// f(u, v) = u + v with ∂₁f = ∂₂f = 1.
Kernel2 sum_operation();
/// f(u, v) = u * v with ∂₁f = v, ∂₂f = u, on (0, inf)^2.
Kernel2 product_operation();

/// Listing for `wmeans catalog`.
struct Entry {
  std::string spec;
  std::string kind;  // "generator" or "kernel" or "operation"
  std::string formula;
  bool analytic_d1;
  bool analytic_d2;
};
std::vector<Entry> entries();

/// Builds a generator from "power:2", "exp", "log", "cosh",
/// "shifted_power:0.5,1" or "expr:<text in x>" (domain used for expr only).
ScalarFunction parse_generator(std::string_view spec,
                               const IntervalDomain& expr_domain = IntervalDomain::positive());

/// Builds a kernel from "sign", "arith", "diff:<generator>", "ratio:<generator>",
/// "expr:<text in x,y>", or a bare generator spec (shorthand for diff:).
Kernel2 parse_kernel(std::string_view spec,
                     const IntervalDomain& expr_domain = IntervalDomain::positive());

/// "sum", "product" or "expr:<text in x,y>".
Kernel2 parse_operation(std::string_view spec,
                        const IntervalDomain& expr_domain = IntervalDomain::positive());

}  // namespace wmeans::catalog
