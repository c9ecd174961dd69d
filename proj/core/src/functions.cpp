#include "wmeans/functions.hpp"

#include <cmath>
#include <limits>

#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// `where` builds the message only on failure; this sits on every kernel call.
template <typename Where>
double require_finite(double value, Where&& where) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFinite, where() + " = " + format_double(value));
  }
  return value;
}

double stencil(const RealFn& f, double x, double h, DerivativeOrder order) {
  if (order == DerivativeOrder::First) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
  }
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

bool derivative_agrees(double analytic, double numeric, double value) {
  const double scale = std::max(std::abs(analytic), std::abs(numeric));
  return std::abs(analytic - numeric) <= 1e-5 * scale + 1e-7 * std::max(1.0, std::abs(value));
}

// Probe supplied derivatives against central differences; points whose
// stencil does not fit, or where evaluation fails, are skipped.
void check_derivative(const std::string& name, const RealFn& f, const RealFn& analytic,
                      DerivativeOrder order, const IntervalDomain& domain,
                      const std::vector<double>& grid) {
  for (double x : grid) {
    double numeric = 0.0;
    double value = 0.0;
    try {
      numeric = central_difference(f, x, order, domain);
      value = f(x);
    } catch (const Error&) {
      continue;
    }
    const double exact = analytic(x);
    if (!derivative_agrees(exact, numeric, value)) {
      throw Error(ErrorCode::DerivativeMismatch,
                  name + ": order " + std::to_string(static_cast<int>(order)) + " derivative at " +
                      format_double(x) + " is " + format_double(exact) +
                      " but central difference gives " + format_double(numeric));
    }
  }
}

}  // namespace

double central_difference_step(double x, DerivativeOrder order) noexcept {
  const double base = order == DerivativeOrder::First ? std::cbrt(kEps) : std::sqrt(std::sqrt(kEps));
  return base * std::max(1.0, std::abs(x));
}

double central_difference(const RealFn& f, double x, DerivativeOrder order,
                          const IntervalDomain& domain) {
  const double h = central_difference_step(x, order);
  if (!domain.contains(x - h) || !domain.contains(x + h)) {
    throw Error(ErrorCode::StencilOutsideDomain,
                "x = " + format_double(x) + " with step " + format_double(h) + " leaves " +
                    domain.to_string());
  }
  return require_finite(stencil(f, x, h, order), [&] { return "central difference at " + format_double(x); });
}

double central_difference_near_endpoint(const RealFn& f, double x, DerivativeOrder order,
                                        const IntervalDomain& domain) {
  double h = central_difference_step(x, order);
  if (!domain.contains(x - h) || !domain.contains(x + h)) {
    h = central_difference_step(1.0, order) * std::abs(x);
    if (x == 0.0 || !domain.contains(x - h) || !domain.contains(x + h)) {
      throw Error(ErrorCode::StencilOutsideDomain,
                  "x = " + format_double(x) + " is too close to the boundary of " + domain.to_string());
    }
  }
  return require_finite(stencil(f, x, h, order), [&] { return "central difference at " + format_double(x); });
}

ScalarFunction ScalarFunction::make(Parts parts) {
  if (!parts.value) throw Error(ErrorCode::InvalidArgument, "function body missing");
  ScalarFunction f(std::move(parts));
  const auto grid = f.domain().interior_grid(16);
  const RealFn value = [&f](double x) { return f(x); };
  if (f.parts_.d1) {
    check_derivative(f.name(), value, f.parts_.d1, DerivativeOrder::First, f.domain(), grid);
  }
  if (f.parts_.d2) {
    check_derivative(f.name(), value, f.parts_.d2, DerivativeOrder::Second, f.domain(), grid);
  }
  return f;
}

ScalarFunction ScalarFunction::from_expression(std::string_view source, IntervalDomain domain,
                                               const expr::Bindings& params,
                                               std::optional<std::string> d1_source,
                                               std::optional<std::string> d2_source) {
  auto compile = [&params](const expr::Expr& e) -> RealFn {
    return [e, params](double x) {
      expr::Bindings b = params;
      b.set_slot(0, x);
      return expr::evaluate(e, b);
    };
  };
  expr::Expr body = expr::parse(source);
  Parts parts;
  parts.name = body.to_string();
  parts.value = compile(body);
  if (d1_source) parts.d1 = compile(expr::parse(*d1_source));
  if (d2_source) parts.d2 = compile(expr::parse(*d2_source));
  parts.domain = domain;
  return make(std::move(parts));
}

double ScalarFunction::operator()(double x) const {
  return require_finite(parts_.value(x), [&] { return parts_.name + "(" + format_double(x) + ")"; });
}

double ScalarFunction::difference(double a, double b) const {
  if (parts_.difference) {
    return require_finite(parts_.difference(a, b), [&] { return parts_.name + " difference"; });
  }
  return (*this)(a) - (*this)(b);
}

double ScalarFunction::d1(double x) const {
  if (!parts_.d1) throw Error(ErrorCode::InvalidArgument, parts_.name + " has no analytic f'");
  return require_finite(parts_.d1(x), [&] { return parts_.name + "'(" + format_double(x) + ")"; });
}

double ScalarFunction::d2(double x) const {
  if (!parts_.d2) throw Error(ErrorCode::InvalidArgument, parts_.name + " has no analytic f''");
  return require_finite(parts_.d2(x), [&] { return parts_.name + "''(" + format_double(x) + ")"; });
}

double derivative(const ScalarFunction& f, double x, DerivativeOrder order) {
  if (order == DerivativeOrder::First && f.has_d1()) return f.d1(x);
  if (order == DerivativeOrder::Second && f.has_d2()) return f.d2(x);
  return central_difference([&f](double u) { return f(u); }, x, order, f.domain());
}

Kernel2 Kernel2::make(Parts parts) {
  if (!parts.value) throw Error(ErrorCode::InvalidArgument, "kernel body missing");
  Kernel2 k(std::move(parts));
  const auto xs = k.domain_x().interior_grid(6);
  const auto ys = k.domain_y().interior_grid(6);
  for (double y : ys) {
    if (k.parts_.d1) {
      check_derivative(
          k.name() + " (d/dx at y=" + format_double(y) + ")", [&k, y](double x) { return k(x, y); },
          [&k, y](double x) { return k.parts_.d1(x, y); }, DerivativeOrder::First, k.domain_x(), xs);
    }
  }
  for (double x : xs) {
    if (k.parts_.d2) {
      check_derivative(
          k.name() + " (d/dy at x=" + format_double(x) + ")", [&k, x](double y) { return k(x, y); },
          [&k, x](double y) { return k.parts_.d2(x, y); }, DerivativeOrder::First, k.domain_y(), ys);
    }
  }
  return k;
}

Kernel2 Kernel2::from_expression(std::string_view source, IntervalDomain domain,
                                 const expr::Bindings& params, std::optional<std::string> d1_source,
                                 std::optional<std::string> d2_source) {
  auto compile = [&params](const expr::Expr& e) -> RealFn2 {
    return [e, params](double x, double y) {
      expr::Bindings b = params;
      b.set_slot(0, x);
      b.set_slot(1, y);
      return expr::evaluate(e, b);
    };
  };
  expr::Expr body = expr::parse(source);
  Parts parts;
  parts.name = body.to_string();
  parts.value = compile(body);
  if (d1_source) parts.d1 = compile(expr::parse(*d1_source));
  if (d2_source) parts.d2 = compile(expr::parse(*d2_source));
  parts.domain_x = domain;
  parts.domain_y = domain;
  // sign/abs/min/max can break continuity in y.
  const std::string text = body.to_string();
  parts.continuous = text.find("sign(") == std::string::npos;
  return make(std::move(parts));
}

double Kernel2::operator()(double x, double y) const {
  return require_finite(parts_.value(x, y),
                        [&] { return parts_.name + "(" + format_double(x) + ", " + format_double(y) + ")"; });
}

double Kernel2::partial1(double x, double y) const {
  if (parts_.d1) return require_finite(parts_.d1(x, y), [&] { return parts_.name + " d/dx"; });
  return central_difference_near_endpoint([this, y](double u) { return (*this)(u, y); }, x,
                                          DerivativeOrder::First, parts_.domain_x);
}

double Kernel2::partial2(double x, double y) const {
  if (parts_.d2) return require_finite(parts_.d2(x, y), [&] { return parts_.name + " d/dy"; });
  return central_difference_near_endpoint([this, x](double v) { return (*this)(x, v); }, y,
                                          DerivativeOrder::First, parts_.domain_y);
}

double Kernel2::diagonal_slope(double y) const { return partial2(y, y); }

double derivative(const Kernel2& kernel, KernelArgument which, double x, double y,
                  DerivativeOrder order) {
  if (order == DerivativeOrder::First) {
    if (which == KernelArgument::First && kernel.has_d1()) return kernel.partial1(x, y);
    if (which == KernelArgument::Second && kernel.has_d2()) return kernel.partial2(x, y);
  }
  if (which == KernelArgument::First) {
    return central_difference([&kernel, y](double u) { return kernel(u, y); }, x, order,
                              kernel.domain_x());
  }
  return central_difference([&kernel, x](double v) { return kernel(x, v); }, y, order,
                            kernel.domain_y());
}

}  // namespace wmeans
