#pragma once

// Independent reference computations for the tests. Deliberately naive: no
// shared code with the library beyond the sample type.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

namespace wmeans::testing {

/// (Σ λ x^p / Σ λ)^(1/p) in long double, geometric mean at p = 0.
inline double power_mean_oracle(const std::vector<double>& x, const std::vector<double>& w, double p) {
  long double num = 0.0L;
  long double den = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    den += w[i];
    num += p == 0.0 ? w[i] * std::log(static_cast<long double>(x[i]))
                    : w[i] * std::pow(static_cast<long double>(x[i]), static_cast<long double>(p));
  }
  if (p == 0.0) return static_cast<double>(std::exp(num / den));
  return static_cast<double>(std::pow(num / den, 1.0L / p));
}

/// QA_cosh through the closed-form inverse arcosh(z) = log(z + sqrt(z² - 1)).
inline double qa_cosh_oracle(const std::vector<double>& x, const std::vector<double>& w) {
  long double num = 0.0L;
  long double den = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += w[i] * std::cosh(static_cast<long double>(x[i]));
    den += w[i];
  }
  const long double z = num / den;
  return static_cast<double>(std::log(z + std::sqrt(z * z - 1.0L)));
}

/// QA_exp = log(Σ λ e^x / Σ λ).
inline double qa_exp_oracle(const std::vector<double>& x, const std::vector<double>& w) {
  long double num = 0.0L;
  long double den = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += w[i] * std::exp(static_cast<long double>(x[i]));
    den += w[i];
  }
  return static_cast<double>(std::log(num / den));
}

/// The four sign-kernel means by enumerating the plateaus of the step
/// function e(y) = Σ λ sign(x_i - y). Entries are the only breakpoints, so e
/// is constant between them; sets like {e <= 0} are unions of closed or open
/// pieces whose inf/sup are breakpoints. Order: LW, LS, US, UW.
inline std::vector<double> sign_means_oracle(std::vector<double> x, const std::vector<double>& w) {
  auto e = [&](double y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (w[i] > 0.0) s += w[i] * (x[i] > y ? 1.0 : (x[i] < y ? -1.0 : 0.0));
    }
    return s;
  };
  std::vector<double> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (w[i] > 0.0) pts.push_back(x[i]);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // Candidate y values: each breakpoint and each open gap midpoint, with the
  // value of e there. inf/sup of a set is a breakpoint touching a member.
  auto inf_of = [&](auto pred) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (pred(e(pts[k]))) return pts[k];
      if (k + 1 < pts.size() && pred(e(0.5 * (pts[k] + pts[k + 1])))) return pts[k];
    }
    return pts.back();
  };
  auto sup_of = [&](auto pred) {
    for (std::size_t k = pts.size(); k-- > 0;) {
      if (pred(e(pts[k]))) return pts[k];
      if (k > 0 && pred(e(0.5 * (pts[k] + pts[k - 1])))) return pts[k];
    }
    return pts.front();
  };
  return {inf_of([](double v) { return v <= 0.0; }), inf_of([](double v) { return v < 0.0; }),
          sup_of([](double v) { return v > 0.0; }), sup_of([](double v) { return v >= 0.0; })};
}

/// E*(x, y) for the cosh difference kernel: (cosh x - cosh y) / sinh y.
inline double cosh_normalized_oracle(double x, double y) { return (std::cosh(x) - std::cosh(y)) / std::sinh(y); }

}  // namespace wmeans::testing
