#include "wmeans/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "wmeans/catalog.hpp"
#include "wmeans/error.hpp"
#include "wmeans/format.hpp"

namespace wmeans {

namespace {

// Quadruple streams draw from sample indices past the plan's own samples.
constexpr std::size_t kQuadrupleOffset = 1u << 30;
constexpr std::array<double, 4> kLimitProbes = {0.25, 0.5, 2.0, 4.0};

Witness point(std::string name, std::vector<double> values, std::string note = {}) {
  Witness w;
  w.fields.emplace_back(std::move(name), std::move(values));
  w.note = std::move(note);
  return w;
}

Witness pair_witness(std::size_t index, const WeightedSample& s, const std::vector<double>& y,
                     std::string note = {}) {
  Witness w = sample_witness(index, s, std::move(note));
  w.fields.emplace_back("y", y);
  return w;
}

IntervalDomain window(std::pair<double, double> range, const IntervalDomain& fallback) {
  if (range.first < range.second) return IntervalDomain::open(range.first, range.second);
  return fallback;
}

// n points with both ends included.
std::vector<double> lattice(double lo, double hi, std::size_t n) {
  if (n <= 1 || lo == hi) return {lo};
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return out;
}

double kernel_tolerance(double v) { return kKernelTolerance * std::max(1.0, std::abs(v)); }

void standard_tolerances(Report& r) {
  r.tolerances.emplace_back("mean_relative", 1e-7);
  r.tolerances.emplace_back("kernel_absolute", kKernelTolerance);
}

std::vector<double> entries_of(const WeightedSample& s) { return {s.entries().begin(), s.entries().end()}; }
std::vector<double> weights_of(const WeightedSample& s) { return {s.weights().begin(), s.weights().end()}; }

void record_error(Report& r, const Witness& w, const Error& e) {
  Witness copy = w;
  copy.note = e.what();
  r.condition("evaluation").fail(copy);
}

std::optional<Kernel2> normalized_or_inconclusive(Report& r, const Kernel2& E, const std::string& label) {
  try {
    return normalize(E);
  } catch (const Error& e) {
    r.condition("hypothesis:" + label + "-normalizable").fail(point("kernel", {}, e.what()));
    r.inconclusive_reason = label + " kernel is not normalizable: " + e.what();
    return std::nullopt;
  }
}

std::string kind_name(std::size_t k) { return std::string(mean_kind_name(kAllMeanKinds[k])); }

// Midpoint concavity of a kernel over random quadruples (x, y, u, v).
void midpoint_concavity(Report& r, const std::string& name, const Kernel2& K, const SamplePlan& plan,
                        std::size_t count) {
  Condition& c = r.condition(name);
  for (std::size_t q = 0; q < count; ++q) {
    SampleRng rng(plan.seed, kQuadrupleOffset + q);
    const double x = rng.uniform(plan.entry_range);
    const double y = rng.uniform(plan.entry_range);
    const double u = rng.uniform(plan.entry_range);
    const double v = rng.uniform(plan.entry_range);
    const Witness w = point("point", {x, y, u, v}, "K((x+u)/2, (y+v)/2) >= (K(x, y) + K(u, v))/2");
    try {
      const double lhs = K(0.5 * (x + u), 0.5 * (y + v));
      const double rhs = 0.5 * (K(x, y) + K(u, v));
      c.observe(rhs, lhs, kernel_tolerance(lhs), w);
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }
}

bool concave_on_lattice(const Kernel2& K, const std::vector<double>& L) {
  for (double x : L) {
    for (double y : L) {
      for (double u : L) {
        for (double v : L) {
          const double lhs = K(0.5 * (x + u), 0.5 * (y + v));
          const double rhs = 0.5 * (K(x, y) + K(u, v));
          if (rhs - lhs > kernel_tolerance(lhs)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

Report verify_sandwich(const Kernel2& E, const SamplePlan& plan, const SemidevMeanConfig& cfg) {
  plan.validate();
  Report r;
  r.theorem_id = "sandwich";
  r.subject.emplace_back("kernel", E.name());
  standard_tolerances(r);
  const ComparisonVerdict adm = check_semideviation(E, window(plan.entry_range, plan.domain), 24);
  Condition& admission = r.condition("admission:semideviation");
  admission.checked = adm.checked_points;
  if (!adm.holds) {
    admission.fail(point("point", adm.witness.value_or(std::vector<double>{}), adm.detail));
    r.inconclusive_reason = "kernel is not a semideviation: " + adm.detail;
    r.finalize();
    return r;
  }
  for (std::size_t k = 0; k < plan.n_samples; ++k) {
    SampleRng rng(plan.seed, k);
    const WeightedSample s = draw_sample(plan, rng);
    const auto perm = random_permutation(rng, s.size());
    Witness w = sample_witness(k, s);
    w.fields.emplace_back("perm", std::vector<double>(perm.begin(), perm.end()));
    try {
      const auto m = semidev_means(E, s, cfg);
      const auto mp = semidev_means(E, s.permuted(perm), cfg);
      const double lw = m[0], ls = m[1], us = m[2], uw = m[3];
      r.condition("hull-lower").observe(s.min_entry(), lw, mean_tolerance(lw), w);
      r.condition("weak-order").observe(lw, uw, mean_tolerance(uw), w);
      r.condition("hull-upper").observe(uw, s.max_entry(), mean_tolerance(uw), w);
      Condition& inside = r.condition("strict-inside-weak");
      inside.observe(lw, ls, mean_tolerance(ls), w);
      inside.observe(ls, uw, mean_tolerance(uw), w);
      inside.observe(lw, us, mean_tolerance(us), w);
      inside.observe(us, uw, mean_tolerance(uw), w);
      Condition& sym = r.condition("symmetry");
      for (std::size_t i = 0; i < 4; ++i) sym.observe(std::abs(m[i] - mp[i]), 0.0, mean_tolerance(m[i]), w);
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }
  r.samples = plan.n_samples;
  r.finalize();
  return r;
}

Report verify_lemma_lim(const Kernel2& E, double x, double y, std::vector<double> n_list,
                        const SemidevMeanConfig& cfg) {
  Report r;
  r.theorem_id = "lemma-lim";
  r.subject.emplace_back("kernel", E.name());
  r.subject.emplace_back("x", format_double(x));
  r.subject.emplace_back("y", format_double(y));
  if (n_list.empty()) n_list = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  SemidevMeanConfig tight = cfg;
  tight.refine_tol = std::min(cfg.refine_tol, 1e-15);
  r.tolerances.emplace_back("refine_tol", tight.refine_tol);
  const auto Es = normalized_or_inconclusive(r, E, "E");
  if (!Es) {
    r.finalize();
    return r;
  }
  const double target = (*Es)(x, y);
  const double final_tol = 1e-3 * std::max(1.0, std::abs(target));
  r.tolerances.emplace_back("final_error", final_tol);
  r.notes.push_back("E*(x, y) = " + format_double(target));
  for (MeanKind kind : {MeanKind::LowerWeak, MeanKind::UpperWeak}) {
    const std::string name(mean_kind_name(kind));
    Condition& mono = r.condition(name + ":error-nonincreasing");
    Condition& fin = r.condition(name + ":final-error");
    double prev = kInfinity;
    double err = 0.0;
    for (double n : n_list) {
      const Witness w = point("n,g", {n}, name);
      try {
        const auto s = WeightedSample::make({x, y}, {1.0, n}, E.domain_y());
        const double g = n * (semidev_mean(E, s, kind, tight) - y);
        err = std::abs(g - target);
        r.notes.push_back(name + " n=" + format_double(n) + " g=" + format_double(g) +
                          " error=" + format_double(err));
        Witness wg = point("n,g", {n, g}, name);
        if (std::isfinite(prev)) mono.observe(err, prev, 1e-12 * std::max(1.0, std::abs(target)), wg);
        prev = err;
      } catch (const Error& e) {
        record_error(r, w, e);
      }
    }
    fin.observe(err, final_tol, 0.0, point("n,error", {n_list.back(), err}, name));
  }
  r.finalize();
  return r;
}

Report verify_comparison(const Kernel2& E, const Kernel2& F, const SamplePlan& plan, std::size_t grid,
                         const SemidevMeanConfig& cfg) {
  plan.validate();
  Report r;
  r.theorem_id = "comparison";
  r.subject.emplace_back("E", E.name());
  r.subject.emplace_back("F", F.name());
  standard_tolerances(r);
  const auto Es = normalized_or_inconclusive(r, E, "E");
  const auto Fs = Es ? normalized_or_inconclusive(r, F, "F") : std::nullopt;
  if (!Es || !Fs) {
    r.finalize();
    return r;
  }
  auto pointwise_ok = [&](double x, double y) {
    const double f = (*Fs)(x, y);
    return (*Es)(x, y) - f <= kernel_tolerance(f);
  };
  Condition& pw = r.condition("pointwise:E*<=F*");
  const auto pts = window(plan.entry_range, plan.domain).interior_grid(grid);
  for (double x : pts) {
    for (double y : pts) {
      if (x == y) continue;
      const Witness w = point("point", {x, y});
      try {
        const double f = (*Fs)(x, y);
        pw.observe((*Es)(x, y), f, kernel_tolerance(f), w);
      } catch (const Error& e) {
        record_error(r, w, e);
      }
    }
  }
  for (std::size_t k = 0; k < plan.n_samples; ++k) {
    SampleRng rng(plan.seed, k);
    const WeightedSample s = draw_sample(plan, rng);
    const Witness w = sample_witness(k, s);
    try {
      const auto mE = semidev_means(E, s, cfg);
      const auto mF = semidev_means(F, s, cfg);
      bool mean_failed = false;
      for (std::size_t i = 0; i < 4; ++i) {
        r.condition("mean-order:" + kind_name(i)).observe(mE[i], mF[i], mean_tolerance(mF[i]), w);
        mean_failed = mean_failed || mE[i] - mF[i] > mean_tolerance(mF[i]);
      }
      r.condition("weakest-link:LW_E<=UW_F").observe(mE[0], mF[3], mean_tolerance(mF[3]), w);
      mean_failed = mean_failed || mE[0] - mF[3] > mean_tolerance(mF[3]);
      bool hull_ok = true;
      const auto L = lattice(s.min_entry(), s.max_entry(), 5);
      for (double a : L) {
        for (double b : L) hull_ok = hull_ok && (a == b || pointwise_ok(a, b));
      }
      r.condition("coupling").observe(!(hull_ok && mean_failed),
                                      sample_witness(k, s, "E* <= F* on the hull but a mean inequality fails"));
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }
  r.samples = plan.n_samples;
  r.notes.push_back("coupling failures indicate solver defects, not counterexamples");
  r.finalize();
  return r;
}

Report verify_jensen(const Kernel2& E, const SamplePlan& plan, std::size_t grid, const SemidevMeanConfig& cfg) {
  plan.validate();
  Report r;
  r.theorem_id = "jensen";
  r.subject.emplace_back("kernel", E.name());
  standard_tolerances(r);
  const auto Es = normalized_or_inconclusive(r, E, "E");
  if (!Es) {
    r.finalize();
    return r;
  }
  const std::string face3 = "iii:normalized-midpoint-concave";
  const std::string face2 = "ii:mixed-midpoint";
  const std::string face4 = "iv:quasideviation-and-deviation-concave";
  midpoint_concavity(r, face3, *Es, plan, std::max(grid * grid, 4 * plan.n_samples));
  r.condition(face2);
  for (std::size_t i = 0; i < 4; ++i) r.condition("i-v:concave:" + kind_name(i));
  const ComparisonVerdict quasi = check_quasideviation(*Es, window(plan.entry_range, plan.domain), 8);
  if (!quasi.holds) {
    r.condition(face4).fail(point("point", quasi.witness.value_or(std::vector<double>{}), quasi.detail));
  }
  r.notes.push_back("face iv uses a grid probe for the quasideviation property");

  for (std::size_t k = 0; k < plan.n_samples; ++k) {
    SampleRng rng(plan.seed, k);
    const WeightedSample s = draw_sample(plan, rng);
    const std::vector<double> y = draw_entries(plan, rng, s.size());
    const Witness w = pair_witness(k, s, y);
    try {
      const WeightedSample t = s.with_entries(y);
      std::vector<double> mid(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) mid[i] = 0.5 * (s.entries()[i] + y[i]);
      const WeightedSample m = s.with_entries(mid);
      const auto mx = semidev_means(E, s, cfg);
      const auto my = semidev_means(E, t, cfg);
      const auto mm = semidev_means(E, m, cfg);
      const double lhs2 = 0.5 * (mx[0] + my[0]);
      r.condition(face2).observe(lhs2, mm[3], mean_tolerance(mm[3]), w);
      for (std::size_t i = 0; i < 4; ++i) {
        r.condition("i-v:concave:" + kind_name(i)).observe(0.5 * (mx[i] + my[i]), mm[i], mean_tolerance(mm[i]), w);
      }
      if (quasi.holds) {
        const double dx = deviation_mean(E, s, cfg);
        const double dy = deviation_mean(E, t, cfg);
        const double dm = deviation_mean(E, m, cfg);
        r.condition(face4).observe(0.5 * (dx + dy), dm, mean_tolerance(dm), w);
      }
      const double lo = std::min(s.min_entry(), t.min_entry());
      const double hi = std::max(s.max_entry(), t.max_entry());
      const bool concave_here = concave_on_lattice(*Es, lattice(lo, hi, 4));
      const bool mixed_fails = lhs2 - mm[3] > mean_tolerance(mm[3]);
      r.condition("coupling").observe(!(concave_here && mixed_fails),
                                      pair_witness(k, s, y, "E* concave on the hull but face ii fails"));
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }

  std::vector<std::string> faces = {face3, face2, face4};
  for (std::size_t i = 0; i < 4; ++i) faces.push_back("i-v:concave:" + kind_name(i));
  std::string passing;
  std::string failing;
  for (const auto& f : faces) {
    const Condition* c = r.find(f);
    (c->holds ? passing : failing) += (c->holds ? passing : failing).empty() ? f : ", " + f;
  }
  r.condition("agreement").observe(passing.empty() || failing.empty(),
                                   point("faces", {}, "holding: [" + passing + "] failing: [" + failing + "]"));
  r.samples = plan.n_samples;
  r.finalize();
  return r;
}

Report verify_tei(const Kernel2& E, const SamplePlan& plan, const SemidevMeanConfig& cfg,
                  const LimitOptions& limit) {
  plan.validate();
  Report r;
  r.theorem_id = "tei";
  r.subject.emplace_back("kernel", E.name());
  standard_tolerances(r);
  r.notes.push_back("numerical evidence: liminf/limsup are tail-window proxies");
  std::optional<HomogenizedKernel> lower;
  std::optional<HomogenizedKernel> upper;
  try {
    lower.emplace(E, HomogenizedKernel::Side::Lower, limit);
    upper.emplace(E, HomogenizedKernel::Side::Upper, limit);
  } catch (const Error& e) {
    r.condition("hypothesis:finite-homogenization-with-sign").fail(point("kernel", {}, e.what()));
    r.inconclusive_reason = std::string("kernel homogenization hypothesis fails: ") + e.what();
    r.finalize();
    return r;
  }
  r.condition("hypothesis:finite-homogenization-with-sign").observe(true, Witness{});
  MeanHandle us = semidev_handle(E, MeanKind::UpperStrict, cfg);
  MeanHandle ls = semidev_handle(E, MeanKind::LowerStrict, cfg);
  for (std::size_t k = 0; k < plan.n_samples; ++k) {
    SampleRng rng(plan.seed, k);
    const WeightedSample s = draw_sample(plan, rng);
    const Witness w = sample_witness(k, s);
    try {
      const double l1 = homogeneous_semidev_mean(*lower, s, MeanKind::LowerWeak, cfg);
      const double r1 = local_homogenization(us, s, limit).tail_min;
      r.condition("EI:LW[h_lower]<=(US)_#").observe(l1, r1, mean_tolerance(r1), w);
      const double l2 = local_homogenization(ls, s, limit).tail_max;
      const double r2 = homogeneous_semidev_mean(*upper, s, MeanKind::UpperWeak, cfg);
      r.condition("EI:(LS)^#<=UW[h_upper]").observe(l2, r2, mean_tolerance(r2), w);
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }
  r.samples = plan.n_samples;
  r.finalize();
  return r;
}

Report verify_cei(const Kernel2& E, const SamplePlan& plan, const SemidevMeanConfig& cfg,
                  const LimitOptions& limit) {
  plan.validate();
  Report r;
  r.theorem_id = "cei";
  r.subject.emplace_back("kernel", E.name());
  standard_tolerances(r);
  r.notes.push_back("numerical evidence: limits are tail-window proxies");
  const auto Es = normalized_or_inconclusive(r, E, "E");
  if (!Es) {
    r.finalize();
    return r;
  }
  const std::string hyp_concave = "hypothesis:normalized-midpoint-concave";
  const std::string hyp_limit = "hypothesis:E*(xt,t)->0";
  midpoint_concavity(r, hyp_concave, *Es, plan, std::max<std::size_t>(400, 4 * plan.n_samples));
  {
    Condition& c = r.condition(hyp_limit);
    for (double u : kLimitProbes) {
      const Witness w = point("x", {u});
      try {
        const auto est = limit_at_zero([&](double t) { return (*Es)(u * t, t); },
                                       initial_scale(Es->domain_y(), std::max(u, 1.0)), limit);
        c.observe(std::abs(est.value()), 0.0, 1e-6, w);
      } catch (const Error& e) {
        record_error(r, w, e);
        c.fail(w);
      }
    }
  }
  std::vector<std::string> failed;
  for (const auto& name : {hyp_concave, hyp_limit}) {
    if (!r.find(name)->holds) failed.push_back(name);
  }
  if (!failed.empty()) {
    std::string reason = "hypotheses fail:";
    for (const auto& f : failed) reason += " " + f;
    r.inconclusive_reason = reason;
  }

  std::optional<HomogenizedKernel> h;
  try {
    h.emplace(E, HomogenizedKernel::Side::Mid, limit);
  } catch (const Error& e) {
    const std::string name = e.code() == ErrorCode::SignPropertyViolated ? "h:sign" : "h:limit-exists";
    r.condition(name).fail(point("kernel", {}, e.what()));
    r.finalize();
    return r;
  }

  std::vector<double> us(33);
  for (std::size_t k = 0; k < us.size(); ++k) us[k] = std::exp2(-4.0 + 8.0 * static_cast<double>(k) / 32.0);
  us[16] = 1.0;
  std::vector<double> hs(us.size());
  try {
    for (std::size_t k = 0; k < us.size(); ++k) hs[k] = (*h)(us[k]);
  } catch (const Error& e) {
    r.condition("h:limit-exists").fail(point("kernel", {}, e.what()));
    r.finalize();
    return r;
  }
  Condition& concave = r.condition("h:concave");
  for (std::size_t k = 0; k + 2 < us.size(); ++k) {
    const double a = us[k];
    const double b = us[k + 2];
    const double hm = (*h)(0.5 * (a + b));
    concave.observe(0.5 * (hs[k] + hs[k + 2]), hm, mean_tolerance(hm), point("u", {a, b}));
  }
  Condition& nondec = r.condition("h:nondecreasing");
  Condition& strict = r.condition("h:strictly-increasing-below-1");
  Condition& sign = r.condition("h:sign");
  for (std::size_t k = 0; k < us.size(); ++k) {
    const int expected = us[k] > 1.0 ? 1 : (us[k] < 1.0 ? -1 : 0);
    const int got = hs[k] > 0.0 ? 1 : (hs[k] < 0.0 ? -1 : 0);
    sign.observe(expected == got, point("u,h", {us[k], hs[k]}));
    if (k == 0) continue;
    nondec.observe(hs[k - 1], hs[k], mean_tolerance(hs[k]), point("u", {us[k - 1], us[k]}));
    if (us[k] <= 1.0) strict.observe(hs[k] > hs[k - 1], point("u", {us[k - 1], us[k]}));
  }

  MeanHandle D = deviation_handle(E, cfg);
  for (std::size_t k = 0; k < plan.n_samples; ++k) {
    SampleRng rng(plan.seed, k);
    const WeightedSample s = draw_sample(plan, rng);
    const Witness w = sample_witness(k, s);
    try {
      const double eh = homogeneous_semidev_mean(*h, s, MeanKind::LowerWeak, cfg);
      const LimitEstimate est = local_homogenization(D, s, limit);
      r.condition("EI+:E_h=(D)_#").observe(std::abs(eh - est.tail_min), 0.0, mean_tolerance(eh), w);
      r.condition("EI+:E_h=(D)^#").observe(std::abs(eh - est.tail_max), 0.0, mean_tolerance(eh), w);
      const std::size_t i = rng.integer(0, s.size() - 1);
      std::vector<double> bumped = entries_of(s);
      bumped[i] *= 1.0 + rng.uniform(0.0, 0.5);
      if (s.domain().contains(bumped[i])) {
        const double d0 = D(s);
        const double d1 = D(s.with_entries(bumped));
        r.condition("D:monotone").observe(d0, d1, mean_tolerance(d1), pair_witness(k, s, bumped));
      }
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }
  r.samples = plan.n_samples;
  r.finalize();
  return r;
}

Report verify_homi(const Kernel2& E, const Kernel2& F, const Kernel2& G, const Kernel2& op,
                   const SamplePlan& plan, const HomiOptions& options, const SemidevMeanConfig& cfg) {
  plan.validate();
  Report r;
  r.theorem_id = "homi";
  r.subject.emplace_back("E", E.name());
  r.subject.emplace_back("F", F.name());
  r.subject.emplace_back("G", G.name());
  r.subject.emplace_back("operation", op.name());
  standard_tolerances(r);
  const auto Es = normalized_or_inconclusive(r, E, "E");
  const auto Fs = Es ? normalized_or_inconclusive(r, F, "F") : std::nullopt;
  const auto Gs = Fs ? normalized_or_inconclusive(r, G, "G") : std::nullopt;
  if (!Gs) {
    r.finalize();
    return r;
  }
  const auto jr = plan.entry_range;
  const auto kr = plan.y_entry_range.value_or(plan.entry_range);
  const auto P = lattice(jr.first, jr.second, options.grid);
  const auto Q = lattice(kr.first, kr.second, options.grid);

  if (options.monotone_mode) {
    Condition& c = r.condition("hypothesis:monotone-operation");
    for (double u : P) {
      for (double v : Q) {
        const double d1 = op.partial1(u, v);
        const double d2 = op.partial2(u, v);
        c.observe(d1 >= 0.0 && d2 >= 0.0 && d1 + d2 > 0.0, point("u,v", {u, v}));
      }
    }
    if (!c.holds) r.inconclusive_reason = "operation is not increasing in each variable";
  }

  auto add1_gap = [&](double p, double q, double u, double v) {
    const double lhs = (*Es)(op(p, q), op(u, v));
    const double rhs = op.partial1(u, v) * (*Fs)(p, u) + op.partial2(u, v) * (*Gs)(q, v);
    return std::pair{lhs, rhs};
  };
  Condition& add1 = r.condition("add1");
  for (double p : P) {
    for (double u : P) {
      for (double q : Q) {
        for (double v : Q) {
          const Witness w = point("p,q,u,v", {p, q, u, v});
          try {
            auto [lhs, rhs] = add1_gap(p, q, u, v);
            add1.observe(lhs, rhs, kernel_tolerance(rhs), w);
          } catch (const Error& e) {
            record_error(r, w, e);
          }
        }
      }
    }
  }

  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) r.condition("add0:" + kind_name(a) + "/" + kind_name(b));
  }
  for (std::size_t k = 0; k < plan.n_samples; ++k) {
    SampleRng rng(plan.seed, k);
    const WeightedSample s = draw_sample(plan, rng);
    const std::vector<double> y = draw_entries(plan, rng, s.size(), true);
    const Witness w = pair_witness(k, s, y);
    try {
      const auto ys = WeightedSample::make(y, weights_of(s), G.domain_y());
      std::vector<double> fxy(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) fxy[i] = op(s.entries()[i], y[i]);
      const auto fs = WeightedSample::make(fxy, weights_of(s), E.domain_y());
      const auto xs = WeightedSample::make(entries_of(s), weights_of(s), F.domain_y());
      const auto mF = semidev_means(F, xs, cfg);
      const auto mG = semidev_means(G, ys, cfg);
      const auto mE = semidev_means(E, fs, cfg);
      bool mean_failed = false;
      auto check = [&](const std::string& name, double lhs, double rhs) {
        r.condition(name).observe(lhs, rhs, mean_tolerance(rhs), w);
        mean_failed = mean_failed || lhs - rhs > mean_tolerance(rhs);
      };
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
          check("add0:" + kind_name(a) + "/" + kind_name(b), mE[0], op(mF[a], mG[b]));
        }
      }
      if (options.monotone_mode) {
        check("homi:ii:lower-strict", mE[1], op(mF[1], mG[1]));
        check("homi:iii:upper-strict", mE[2], op(mF[2], mG[2]));
        check("homi:iv:upper-weak", mE[3], op(mF[3], mG[3]));
      }
      bool hull_ok = true;
      const auto LP = lattice(s.min_entry(), s.max_entry(), 4);
      const auto LQ = lattice(ys.min_entry(), ys.max_entry(), 4);
      for (double p : LP) {
        for (double u : LP) {
          for (double q : LQ) {
            for (double v : LQ) {
              auto [lhs, rhs] = add1_gap(p, q, u, v);
              hull_ok = hull_ok && lhs - rhs <= kernel_tolerance(rhs);
            }
          }
        }
      }
      r.condition("coupling").observe(!(hull_ok && mean_failed),
                                      pair_witness(k, s, y, "add1 holds on the hulls but a mean inequality fails"));
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }
  r.samples = plan.n_samples;
  r.finalize();
  return r;
}

Report verify_minkowski(const Kernel2& E, const SamplePlan& plan, const HomiOptions& options,
                        const SemidevMeanConfig& cfg) {
  Report r = verify_homi(E, E, E, catalog::sum_operation(), plan, options, cfg);
  r.theorem_id = "minkowski";
  return r;
}

Report verify_hoelder(const Kernel2& E, const SamplePlan& plan, const HomiOptions& options,
                      const SemidevMeanConfig& cfg) {
  Report r = verify_homi(E, E, E, catalog::product_operation(), plan, options, cfg);
  r.theorem_id = "hoelder";
  return r;
}

Report verify_axioms(const MeanHandle& M, const SamplePlan& plan) {
  plan.validate();
  Report r;
  r.theorem_id = "axioms";
  r.subject.emplace_back("mean", M.name);
  standard_tolerances(r);
  for (const char* name : {"mean-value", "nullhomogeneity", "reduction", "elimination", "symmetry"}) {
    r.condition(name);
  }
  for (std::size_t k = 0; k < plan.n_samples; ++k) {
    SampleRng rng(plan.seed, k);
    const WeightedSample s = draw_sample(plan, rng);
    const Witness w = sample_witness(k, s);
    try {
      const double v = M(s);
      const double tol = mean_tolerance(v);
      Condition& mv = r.condition("mean-value");
      mv.observe(s.min_entry(), v, tol, w);
      mv.observe(v, s.max_entry(), tol, w);

      const double t = rng.uniform(0.1, 10.0);
      r.condition("nullhomogeneity").observe(std::abs(M(s.scaled_weights(t)) - v), 0.0, tol, w);

      std::vector<double> mu(s.size());
      for (double& m : mu) m = rng.uniform(plan.weight_range);
      std::vector<double> sum = weights_of(s);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += mu[i];
      const auto combined = WeightedSample::make(entries_of(s), sum, s.domain());
      const auto merged = shuffle_merge(s, WeightedSample::make(entries_of(s), mu, s.domain()));
      const double vc = M(combined);
      r.condition("reduction").observe(std::abs(vc - M(merged)), 0.0, mean_tolerance(vc), w);

      std::vector<double> xs = entries_of(s);
      std::vector<double> ws = weights_of(s);
      const std::size_t extra = rng.integer(1, 2);
      for (std::size_t i = 0; i < extra; ++i) {
        xs.push_back(rng.uniform(plan.entry_range));
        ws.push_back(0.0);
      }
      const auto padded = WeightedSample::make(xs, ws, s.domain());
      const auto perm = random_permutation(rng, padded.size());
      const auto shuffled = padded.permuted(perm);
      Condition& el = r.condition("elimination");
      el.observe(std::abs(M(shuffled) - v), 0.0, tol, w);
      el.observe(std::abs(M(eliminate_zero_weights(shuffled)) - v), 0.0, tol, w);

      const auto p2 = random_permutation(rng, s.size());
      r.condition("symmetry").observe(std::abs(M(s.permuted(p2)) - v), 0.0, tol, w);
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }
  r.samples = plan.n_samples;
  r.finalize();
  return r;
}

Report verify_homogenization_chain(const MeanHandle& M, const SamplePlan& plan, double tol) {
  plan.validate();
  Report r;
  r.theorem_id = "homogenization-chain";
  r.subject.emplace_back("mean", M.name);
  r.tolerances.emplace_back("absolute", tol);
  for (std::size_t k = 0; k < plan.n_samples; ++k) {
    SampleRng rng(plan.seed, k);
    const WeightedSample s = draw_sample(plan, rng);
    const Witness w = sample_witness(k, s);
    try {
      const double lower = envelope(M, s, EnvelopeSide::Lower).value;
      const double upper = envelope(M, s, EnvelopeSide::Upper).value;
      const LimitEstimate est = local_homogenization(M, s);
      const double v = M(s);
      r.condition("lower-envelope<=lower-local").observe(lower, est.tail_min, tol, w);
      r.condition("lower-local<=upper-local").observe(est.tail_min, est.tail_max, tol, w);
      r.condition("upper-local<=upper-envelope").observe(est.tail_max, upper, tol, w);
      Condition& br = r.condition("envelopes-bracket-mean");
      br.observe(lower, v, tol, w);
      br.observe(v, upper, tol, w);
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }
  r.samples = plan.n_samples;
  r.finalize();
  return r;
}

Report verify_concave_limit(const MeanHandle& M, const SamplePlan& plan, double tol) {
  plan.validate();
  Report r;
  r.theorem_id = "concave-limit";
  r.subject.emplace_back("mean", M.name);
  r.tolerances.emplace_back("absolute", tol);
  r.tolerances.emplace_back("ratio_step", kKernelTolerance);
  for (std::size_t k = 0; k < plan.n_samples; ++k) {
    SampleRng rng(plan.seed, k);
    const WeightedSample s = draw_sample(plan, rng);
    const Witness w = sample_witness(k, s);
    try {
      const LimitEstimate est = local_homogenization(M, s);
      Condition& mono = r.condition("ratio-nonincreasing-in-t");
      for (std::size_t i = 1; i < est.values.size(); ++i) {
        // t decreases along values, so the ratio may only grow.
        const double prev = est.values[i - 1].second;
        const double cur = est.values[i].second;
        Witness wt = w;
        wt.fields.emplace_back("t", std::vector<double>{est.values[i - 1].first, est.values[i].first});
        mono.observe(prev, cur, kKernelTolerance * (1.0 + std::abs(cur)), wt);
      }
      r.condition("lower-local=upper-local").observe(est.spread(), 0.0, tol, w);
      r.condition("mean<=lower-local").observe(M(s), est.tail_min, tol, w);
    } catch (const Error& e) {
      record_error(r, w, e);
    }
  }
  r.samples = plan.n_samples;
  r.finalize();
  return r;
}

}  // namespace wmeans
