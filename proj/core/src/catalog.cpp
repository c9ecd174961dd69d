#include "wmeans/catalog.hpp"

#include <cmath>

#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans::catalog {

namespace {

// e^a - e^b without cancellation.
double exp_difference(double a, double b) {
  return 2.0 * std::exp(0.5 * (a + b)) * std::sinh(0.5 * (a - b));
}

double cosh_difference(double a, double b) {
  return 2.0 * std::sinh(0.5 * (a + b)) * std::sinh(0.5 * (a - b));
}

std::vector<double> split_params(std::string_view text) {
  if (text.empty()) return {};
  return parse_double_list(text);
}

std::pair<std::string_view, std::string_view> split_spec(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) return {spec, {}};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::string_view strip_quotes(std::string_view text) {
  if (text.size() >= 2 && (text.front() == '"' || text.front() == '\'') && text.back() == text.front()) {
    return text.substr(1, text.size() - 2);
  }
  return text;
}

void expect_params(std::string_view name, const std::vector<double>& params, std::size_t count) {
  if (params.size() != count) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " expects " + std::to_string(count) +
                                                " parameter(s), got " + std::to_string(params.size()));
  }
}

bool is_increasing(const ScalarFunction& f) {
  auto grid = f.domain().interior_grid(2);
  return f.difference(grid[1], grid[0]) > 0.0;
}

}  // namespace

ScalarFunction power(double p) {
  if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "power exponent must be finite");
  ScalarFunction::Parts parts;
  parts.domain = IntervalDomain::positive();
  if (p == 0.0) {
    parts.name = "power:0";
    parts.value = [](double x) { return std::log(x); };
    parts.d1 = [](double x) { return 1.0 / x; };
    parts.d2 = [](double x) { return -1.0 / (x * x); };
    parts.difference = [](double a, double b) { return std::log(a / b); };
  } else {
    parts.name = "power:" + format_double(p);
    parts.value = [p](double x) { return std::pow(x, p); };
    parts.d1 = [p](double x) { return p * std::pow(x, p - 1.0); };
    parts.d2 = [p](double x) { return p * (p - 1.0) * std::pow(x, p - 2.0); };
    // b^p (exp(p log(a/b)) - 1)
    parts.difference = [p](double a, double b) {
      return std::pow(b, p) * std::expm1(p * std::log(a / b));
    };
  }
  return ScalarFunction::make(std::move(parts));
}

ScalarFunction exp() {
  ScalarFunction::Parts parts;
  parts.name = "exp";
  parts.value = [](double x) { return std::exp(x); };
  parts.d1 = parts.value;
  parts.d2 = parts.value;
  parts.difference = exp_difference;
  parts.domain = IntervalDomain::real_line();
  return ScalarFunction::make(std::move(parts));
}

ScalarFunction log() {
  ScalarFunction::Parts parts;
  parts.name = "log";
  parts.value = [](double x) { return std::log(x); };
  parts.d1 = [](double x) { return 1.0 / x; };
  parts.d2 = [](double x) { return -1.0 / (x * x); };
  parts.difference = [](double a, double b) { return std::log(a / b); };
  parts.domain = IntervalDomain::positive();
  return ScalarFunction::make(std::move(parts));
}

ScalarFunction cosh() {
  ScalarFunction::Parts parts;
  parts.name = "cosh";
  parts.value = [](double x) { return std::cosh(x); };
  parts.d1 = [](double x) { return std::sinh(x); };
  parts.d2 = [](double x) { return std::cosh(x); };
  parts.difference = cosh_difference;
  parts.domain = IntervalDomain::positive();
  return ScalarFunction::make(std::move(parts));
}

ScalarFunction shifted_power(double q, double c) {
  if (!std::isfinite(q) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidArgument, "shifted_power parameters must be finite");
  }
  ScalarFunction::Parts parts;
  parts.name = "shifted_power:" + format_double(q) + "," + format_double(c);
  parts.domain = IntervalDomain::open(c >= 0.0 ? 0.0 : -c, kInfinity);
  if (q == 0.0) {
    parts.value = [c](double x) { return std::log(x + c); };
    parts.d1 = [c](double x) { return 1.0 / (x + c); };
    parts.d2 = [c](double x) { return -1.0 / ((x + c) * (x + c)); };
    parts.difference = [c](double a, double b) { return std::log1p((a - b) / (b + c)); };
  } else {
    parts.value = [q, c](double x) { return std::pow(x + c, q); };
    parts.d1 = [q, c](double x) { return q * std::pow(x + c, q - 1.0); };
    parts.d2 = [q, c](double x) { return q * (q - 1.0) * std::pow(x + c, q - 2.0); };
    // (b+c)^q (exp(q log1p((a-b)/(b+c))) - 1)
    parts.difference = [q, c](double a, double b) {
      return std::pow(b + c, q) * std::expm1(q * std::log1p((a - b) / (b + c)));
    };
  }
  return ScalarFunction::make(std::move(parts));
}

Kernel2 sign_dev() {
  Kernel2::Parts parts;
  parts.name = "sign";
  parts.value = [](double x, double y) { return x > y ? 1.0 : (x < y ? -1.0 : 0.0); };
  parts.continuous = false;
  return Kernel2::make(std::move(parts));
}

Kernel2 arithmetic() {
  Kernel2::Parts parts;
  parts.name = "arith";
  parts.value = [](double x, double y) { return x - y; };
  parts.d1 = [](double, double) { return 1.0; };
  parts.d2 = [](double, double) { return -1.0; };
  return Kernel2::make(std::move(parts));
}

Kernel2 diff_gen(const ScalarFunction& f) {
  const double orientation = is_increasing(f) ? 1.0 : -1.0;
  Kernel2::Parts parts;
  parts.name = "diff:" + f.name();
  parts.value = [f, orientation](double x, double y) { return orientation * f.difference(x, y); };
  if (f.has_d1()) {
    parts.d1 = [f, orientation](double x, double) { return orientation * f.d1(x); };
    parts.d2 = [f, orientation](double, double y) { return -orientation * f.d1(y); };
  }
  parts.domain_x = f.domain();
  parts.domain_y = f.domain();
  return Kernel2::make(std::move(parts));
}

Kernel2 ratio_dev(const ScalarFunction& f) {
  Kernel2::Parts parts;
  parts.name = "ratio:" + f.name();
  parts.value = [f](double x, double y) { return f(x / y); };
  if (f.has_d1()) {
    parts.d1 = [f](double x, double y) { return f.d1(x / y) / y; };
    parts.d2 = [f](double x, double y) { return -f.d1(x / y) * x / (y * y); };
  }
  parts.domain_x = IntervalDomain::positive();
  parts.domain_y = IntervalDomain::positive();
  return Kernel2::make(std::move(parts));
}

Kernel2 sum_operation() {
  Kernel2::Parts parts;
  parts.name = "sum";
  parts.value = [](double u, double v) { return u + v; };
  parts.d1 = [](double, double) { return 1.0; };
  parts.d2 = [](double, double) { return 1.0; };
  parts.domain_x = IntervalDomain::positive();
  parts.domain_y = IntervalDomain::positive();
  return Kernel2::make(std::move(parts));
}

Kernel2 product_operation() {
  Kernel2::Parts parts;
  parts.name = "product";
  parts.value = [](double u, double v) { return u * v; };
  parts.d1 = [](double, double v) { return v; };
  parts.d2 = [](double u, double) { return u; };
  parts.domain_x = IntervalDomain::positive();
  parts.domain_y = IntervalDomain::positive();
  return Kernel2::make(std::move(parts));
}

std::vector<Entry> entries() {
  return {
      {"power:<p>", "generator", "pi_p(x) = x^p (p != 0), log x (p = 0) on (0, inf)", true, true},
      {"exp", "generator", "exp(x) on (-inf, inf)", true, true},
      {"log", "generator", "log(x) on (0, inf)", true, true},
      {"cosh", "generator", "cosh(x) on (0, inf)", true, true},
      {"shifted_power:<q>,<c>", "generator", "(x + c)^q (log(x + c) for q = 0)", true, true},
      {"expr:<f(x)>", "generator", "user expression in x", false, false},
      {"sign", "kernel", "S(x, y) = sign(x - y)", false, false},
      {"arith", "kernel", "A(x, y) = x - y", true, true},
      {"diff:<generator>", "kernel", "A_f(x, y) = f(x) - f(y)", true, true},
      {"ratio:<generator>", "kernel", "E_f(x, y) = f(x / y)", true, true},
      {"expr:<E(x,y)>", "kernel", "user expression in x, y", false, false},
      {"sum", "operation", "f(u, v) = u + v", true, true},
      {"product", "operation", "f(u, v) = u * v", true, true},
  };
}

ScalarFunction parse_generator(std::string_view spec, const IntervalDomain& expr_domain) {
  auto [name, rest] = split_spec(spec);
  if (name == "expr") return ScalarFunction::from_expression(strip_quotes(rest), expr_domain);
  const auto params = split_params(rest);
  if (name == "power") {
    expect_params(name, params, 1);
    return power(params[0]);
  }
  if (name == "shifted_power") {
    expect_params(name, params, 2);
    return shifted_power(params[0], params[1]);
  }
  if (name == "exp") {
    expect_params(name, params, 0);
    return exp();
  }
  if (name == "log") {
    expect_params(name, params, 0);
    return log();
  }
  if (name == "cosh") {
    expect_params(name, params, 0);
    return cosh();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator '" + std::string(spec) + "'");
}

Kernel2 parse_kernel(std::string_view spec, const IntervalDomain& expr_domain) {
  auto [name, rest] = split_spec(spec);
  if (name == "sign" && rest.empty()) return sign_dev();
  if (name == "arith" && rest.empty()) return arithmetic();
  if (name == "diff") return diff_gen(parse_generator(rest, expr_domain));
  if (name == "ratio") return ratio_dev(parse_generator(rest, expr_domain));
  if (name == "expr") return Kernel2::from_expression(strip_quotes(rest), expr_domain);
  return diff_gen(parse_generator(spec, expr_domain));
}

Kernel2 parse_operation(std::string_view spec, const IntervalDomain& expr_domain) {
  auto [name, rest] = split_spec(spec);
  if (name == "sum") return sum_operation();
  if (name == "product") return product_operation();
  if (name == "expr") return Kernel2::from_expression(strip_quotes(rest), expr_domain);
  throw Error(ErrorCode::InvalidArgument, "unknown operation '" + std::string(spec) + "'");
}

}  // namespace wmeans::catalog
