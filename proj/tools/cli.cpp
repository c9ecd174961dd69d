#include "cli.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wmeans/catalog.hpp"
#include "wmeans/classic_means.hpp"
#include "wmeans/error.hpp"
#include "wmeans/format.hpp"
#include "wmeans/homogenize.hpp"
#include "wmeans/verify.hpp"

namespace wmeans::cli {

namespace {

using Json = nlohmann::ordered_json;

// Everything the parser fills in. Validated in full before any computation.
struct RunConfig {
  std::string format = "human";
  std::string domain = "(0,inf)";
  SemidevMeanConfig semidev;
  LimitOptions limit;

  // compute mean / homogenize --target mean
  std::string kind = "power";
  std::string p = "1";
  std::string generator = "cosh";
  std::string kernel = "power:2";
  std::string semidev_kind = "all";
  std::string x;
  std::string w;

  // homogenize
  std::string target = "mean";
  std::string mode = "local";
  double u = 2.0;
  bool csv = false;

  // verify
  std::string suite;
  std::string kernel_f;
  std::string kernel_g;
  std::string operation = "sum";
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::size_t n_max = 6;
  std::size_t grid = 0;
  std::string entry_range = "0.1,5";
  std::string y_range;
  std::string weight_range = "0.1,2";
  std::string at = "1,2";
  std::string n_list;
  bool no_monotone = false;
};

bool structured(const RunConfig& rc) { return rc.format == "structured"; }

double parse_number(const std::string& text, const char* what) {
  const auto v = parse_double(text);
  if (!v) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not a number: '" + text + "'");
  return *v;
}

std::pair<double, double> parse_range(const std::string& text, const char* what) {
  const auto v = parse_double_list(text);
  if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs two numbers lo,hi");
  return {v[0], v[1]};
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

WeightedSample sample_from(const RunConfig& rc) {
  if (rc.x.empty()) throw Error(ErrorCode::InvalidArgument, "--x is required");
  std::vector<double> xs = parse_double_list(rc.x);
  std::vector<double> ws = rc.w.empty() ? std::vector<double>(xs.size(), 1.0) : parse_double_list(rc.w);
  return WeightedSample::make(std::move(xs), std::move(ws), IntervalDomain::parse(rc.domain));
}

void validate_limit(const LimitOptions& o) {
  if (!(o.ratio > 0.0 && o.ratio < 1.0)) throw Error(ErrorCode::InvalidArgument, "limit ratio must lie in (0, 1)");
  if (o.max_steps == 0 || o.window == 0) throw Error(ErrorCode::InvalidArgument, "limit steps and window must be positive");
  if (!(o.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "limit tolerance must be positive");
}

MeanHandle handle_from(const RunConfig& rc) {
  const IntervalDomain dom = IntervalDomain::parse(rc.domain);
  if (rc.kind == "power") return power_handle(Exponent(parse_number(rc.p, "--p")));
  if (rc.kind == "qa") return qa_handle(catalog::parse_generator(rc.generator, dom));
  if (rc.kind == "semidev") {
    const MeanKind k = parse_mean_kind(rc.semidev_kind == "all" ? "lower-weak" : rc.semidev_kind);
    return semidev_handle(catalog::parse_kernel(rc.kernel, dom), k, rc.semidev);
  }
  if (rc.kind == "deviation") return deviation_handle(catalog::parse_kernel(rc.kernel, dom), rc.semidev);
  throw Error(ErrorCode::InvalidArgument, "unknown mean kind '" + rc.kind + "'");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

// compute mean

int compute_mean(const RunConfig& rc, std::ostream& out) {
  const WeightedSample s = sample_from(rc);
  const IntervalDomain dom = IntervalDomain::parse(rc.domain);
  Json j;
  j["command"] = "compute mean";
  j["kind"] = rc.kind;
  j["x"] = parse_double_list(rc.x);
  j["w"] = std::vector<double>(s.weights().begin(), s.weights().end());

  if (rc.kind == "semidev") {
    const Kernel2 E = catalog::parse_kernel(rc.kernel, dom);
    j["kernel"] = E.name();
    std::vector<MeanKind> kinds;
    if (rc.semidev_kind == "all") {
      kinds.assign(kAllMeanKinds.begin(), kAllMeanKinds.end());
    } else {
      kinds.push_back(parse_mean_kind(rc.semidev_kind));
    }
    const auto all = semidev_means(E, s, rc.semidev);
    Json values = Json::object();
    for (MeanKind k : kinds) {
      const double v = all[static_cast<std::size_t>(k)];
      values[std::string(mean_kind_name(k))] = number(v);
      if (!structured(rc)) {
        out << mean_kind_name(k) << ' ' << format_double(v) << "  # " << mean_kind_formula(k)
            << ", e(y) = sum w_i E(x_i, y)\n";
      }
    }
    j["values"] = values;
    if (structured(rc)) out << j.dump(2) << '\n';
    return kPass;
  }

  double v = 0.0;
  std::string formula;
  if (rc.kind == "power") {
    const double p = parse_number(rc.p, "--p");
    j["p"] = number(p);
    v = power_mean(s, Exponent(p));
    formula = "P_p = (sum w_i x_i^p / sum w_i)^(1/p), p = " + format_double(p);
  } else if (rc.kind == "qa") {
    const ScalarFunction f = catalog::parse_generator(rc.generator, dom);
    j["generator"] = f.name();
    v = quasiarithmetic_mean(s, f);
    formula = "QA_f = f^-1(sum w_i f(x_i) / sum w_i), f = " + f.name();
  } else if (rc.kind == "deviation") {
    const Kernel2 E = catalog::parse_kernel(rc.kernel, dom);
    j["kernel"] = E.name();
    v = deviation_mean(E, s, rc.semidev);
    formula = "D_E = root of e(y) = sum w_i E(x_i, y), E = " + E.name();
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown mean kind '" + rc.kind + "'");
  }
  j["value"] = number(v);
  if (structured(rc)) {
    out << j.dump(2) << '\n';
  } else {
    out << format_double(v) << '\n' << "# " << formula << '\n';
  }
  return kPass;
}

// homogenize

Json estimate_json(const LimitEstimate& e) {
  Json j;
  j["value"] = number(e.value());
  j["tail_min"] = number(e.tail_min);
  j["tail_max"] = number(e.tail_max);
  j["converged"] = e.converged;
  j["diverged"] = e.diverged;
  j["window"] = e.window;
  j["failed_evaluations"] = e.failed_evaluations;
  j["caveat"] = e.caveat;
  Json table = Json::array();
  for (const auto& [t, v] : e.values) table.push_back(Json::array({number(t), number(v)}));
  j["table"] = table;
  return j;
}

void print_table(const LimitEstimate& e, std::ostream& out, bool csv) {
  out << (csv ? "t,value\n" : "t value\n");
  for (const auto& [t, v] : e.values) out << format_double(t) << (csv ? ',' : ' ') << format_double(v) << '\n';
}

void emit_estimate(const RunConfig& rc, Json j, const std::string& what, const LimitEstimate& e,
                   std::ostream& out) {
  if (rc.csv) {
    print_table(e, out, true);
  } else if (structured(rc)) {
    j["estimate"] = estimate_json(e);
    out << j.dump(2) << '\n';
  } else {
    out << what << '\n';
    out << "estimate " << format_double(e.value()) << '\n';
    out << "tail [" << format_double(e.tail_min) << ", " << format_double(e.tail_max) << "] converged "
        << (e.converged ? "yes" : "no") << (e.diverged ? " diverged" : "") << '\n';
    out << "caveat " << e.caveat << '\n';
    print_table(e, out, false);
  }
}

int homogenize(const RunConfig& rc, std::ostream& out) {
  const IntervalDomain dom = IntervalDomain::parse(rc.domain);
  Json j;
  j["command"] = "homogenize";
  j["target"] = rc.target;
  if (rc.target == "qa") {
    const ScalarFunction f = catalog::parse_generator(rc.generator, dom);
    const QaHomogenization h = qa_local_homogenization(f, rc.limit);
    j["generator"] = f.name();
    j["p_low"] = number(h.p_low);
    j["p_high"] = number(h.p_high);
    j["equal"] = h.equal;
    std::string what = "chi_f(t) as t -> 0+, f = " + f.name() + "; QA_f local homogenizations are P_p for p in [" +
                       format_double(h.p_low) + ", " + format_double(h.p_high) + "]";
    if (h.equal) what += "; both equal P_" + format_double(h.p());
    emit_estimate(rc, j, what, h.chi_limit, out);
    return kPass;
  }
  if (rc.target == "phi") {
    const ScalarFunction f = catalog::parse_generator(rc.generator, dom);
    j["generator"] = f.name();
    j["u"] = number(rc.u);
    emit_estimate(rc, j, "phi(u) = lim (f(t u) - f(t)) / (f(2t) - f(t)), u = " + format_double(rc.u),
                  phi_limit(f, rc.u, rc.limit), out);
    return kPass;
  }
  if (rc.target == "kernel") {
    const Kernel2 E = catalog::parse_kernel(rc.kernel, dom);
    j["kernel"] = E.name();
    j["u"] = number(rc.u);
    emit_estimate(rc, j, "h_E(u) = lim E*(u t, t) / t, u = " + format_double(rc.u),
                  kernel_homogenization(E, rc.u, rc.limit), out);
    return kPass;
  }
  if (rc.target != "mean") throw Error(ErrorCode::InvalidArgument, "unknown target '" + rc.target + "'");

  const MeanHandle M = handle_from(rc);
  const WeightedSample s = sample_from(rc);
  j["mean"] = M.name;
  j["mode"] = rc.mode;
  if (rc.mode == "local") {
    emit_estimate(rc, j, "M(t x, w) / t as t -> 0+, M = " + M.name, local_homogenization(M, s, rc.limit), out);
    return kPass;
  }
  if (rc.mode != "envelope") throw Error(ErrorCode::InvalidArgument, "unknown mode '" + rc.mode + "'");
  const EnvelopeResult lo = envelope(M, s, EnvelopeSide::Lower);
  const EnvelopeResult hi = envelope(M, s, EnvelopeSide::Upper);
  if (rc.csv) {
    out << "side,t,value\n";
    out << "lower," << format_double(lo.t) << ',' << format_double(lo.value) << '\n';
    out << "upper," << format_double(hi.t) << ',' << format_double(hi.value) << '\n';
  } else if (structured(rc)) {
    for (const auto& [name, r] : {std::pair{"lower", lo}, std::pair{"upper", hi}}) {
      j[name] = {{"value", number(r.value)},
                 {"t", number(r.t)},
                 {"t_range", Json::array({number(r.t_lo), number(r.t_hi)})},
                 {"failed_evaluations", r.failed_evaluations}};
    }
    out << j.dump(2) << '\n';
  } else {
    out << "inf / sup over t of M(t x, w) / t, M = " << M.name << '\n';
    out << "lower " << format_double(lo.value) << " at t = " << format_double(lo.t) << '\n';
    out << "upper " << format_double(hi.value) << " at t = " << format_double(hi.t) << '\n';
    out << "t range [" << format_double(lo.t_lo) << ", " << format_double(lo.t_hi) << "]\n";
  }
  return kPass;
}

// verify

void print_witness(const Witness& w, std::ostream& out) {
  out << "         witness";
  if (w.sample_index) out << " sample " << *w.sample_index;
  for (const auto& [name, values] : w.fields) out << ' ' << name << '=' << join(values);
  if (!w.note.empty()) out << " (" << w.note << ')';
  out << '\n';
}

void print_report(const Report& r, std::ostream& out) {
  out << "suite " << r.theorem_id << ": " << overall_name(r.overall) << '\n';
  for (const auto& [k, v] : r.subject) out << "  " << k << " = " << v << '\n';
  if (r.inconclusive_reason) out << "  inconclusive: " << *r.inconclusive_reason << '\n';
  for (const auto& c : r.conditions) {
    out << (c.holds ? "  [ok]   " : "  [FAIL] ") << c.name << "  checked " << c.checked;
    if (std::isfinite(c.max_violation)) out << "  max violation " << format_double(c.max_violation);
    out << '\n';
    if (!c.holds && c.witness) print_witness(*c.witness, out);
  }
  for (const auto& n : r.notes) out << "  note: " << n << '\n';
}

Report run_suite(const RunConfig& rc) {
  const IntervalDomain dom = IntervalDomain::parse(rc.domain);
  SamplePlan plan;
  plan.seed = rc.seed;
  plan.n_samples = rc.samples;
  plan.n_max = rc.n_max;
  plan.entry_range = parse_range(rc.entry_range, "--entry-range");
  if (!rc.y_range.empty()) plan.y_entry_range = parse_range(rc.y_range, "--y-range");
  plan.weight_range = parse_range(rc.weight_range, "--weight-range");
  plan.domain = dom;
  plan.validate();
  auto kernel = [&](const std::string& spec, const char* flag) {
    if (spec.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is required for this suite");
    return catalog::parse_kernel(spec, dom);
  };
  const Kernel2 E = kernel(rc.kernel, "--kernel");
  const auto& s = rc.suite;
  if (s == "sandwich") return verify_sandwich(E, plan, rc.semidev);
  if (s == "lemma-lim") {
    const auto xy = parse_range(rc.at, "--at");
    const auto ns = rc.n_list.empty() ? std::vector<double>{} : parse_double_list(rc.n_list);
    return verify_lemma_lim(E, xy.first, xy.second, ns, rc.semidev);
  }
  if (s == "comparison") return verify_comparison(E, kernel(rc.kernel_f, "--kernel-f"), plan, rc.grid ? rc.grid : 24, rc.semidev);
  if (s == "jensen") return verify_jensen(E, plan, rc.grid ? rc.grid : 12, rc.semidev);
  if (s == "tei") return verify_tei(E, plan, rc.semidev, rc.limit);
  if (s == "cei") return verify_cei(E, plan, rc.semidev, rc.limit);
  HomiOptions ho;
  if (rc.grid) ho.grid = rc.grid;
  ho.monotone_mode = !rc.no_monotone;
  if (s == "minkowski") return verify_minkowski(E, plan, ho, rc.semidev);
  if (s == "hoelder") return verify_hoelder(E, plan, ho, rc.semidev);
  if (s == "homi") {
    return verify_homi(E, kernel(rc.kernel_f, "--kernel-f"), kernel(rc.kernel_g, "--kernel-g"),
                       catalog::parse_operation(rc.operation, dom), plan, ho, rc.semidev);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + s + "'");
}

int verify(const RunConfig& rc, std::ostream& out) {
  const Report r = run_suite(rc);
  if (structured(rc)) {
    out << to_structured(r);
  } else {
    print_report(r, out);
  }
  return r.passed() ? kPass : kFail;
}

// catalog

int list_catalog(const RunConfig& rc, std::ostream& out) {
  const auto entries = catalog::entries();
  if (structured(rc)) {
    Json arr = Json::array();
    for (const auto& e : entries) {
      arr.push_back({{"spec", e.spec},
                     {"kind", e.kind},
                     {"formula", e.formula},
                     {"analytic_d1", e.analytic_d1},
                     {"analytic_d2", e.analytic_d2}});
    }
    out << Json{{"command", "catalog"}, {"entries", arr}}.dump(2) << '\n';
    return kPass;
  }
  for (const auto& e : entries) {
    out << e.kind << ' ' << e.spec << "  " << e.formula << "  d1:" << (e.analytic_d1 ? "analytic" : "numeric")
        << " d2:" << (e.analytic_d2 ? "analytic" : "numeric") << '\n';
  }
  return kPass;
}

bool is_usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NegativeWeight:
    case ErrorCode::AllWeightsZero:
    case ErrorCode::EntryOutOfDomain:
    case ErrorCode::LengthMismatch:
    case ErrorCode::MismatchedEntries:
    case ErrorCode::InvalidDomain:
    case ErrorCode::InvalidArgument:
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownFunction:
    case ErrorCode::UnboundVariable:
    case ErrorCode::DerivativeMismatch:
    case ErrorCode::NonPositiveEntry:
    case ErrorCode::GeneratorNotMonotone:
      return true;
    default:
      return false;
  }
}

void add_solver_options(CLI::App& app, RunConfig& rc) {
  app.add_option("--grid-size", rc.semidev.grid_size, "semideviation mean grid points")->capture_default_str();
  app.add_option("--refine-tol", rc.semidev.refine_tol, "relative bisection tolerance")->capture_default_str();
  app.add_option("--zero-band", rc.semidev.zero_band, "|e(y)| treated as zero")->capture_default_str();
  app.add_option("--max-bisect", rc.semidev.max_bisect, "bisection step limit")->capture_default_str();
  app.add_option("--limit-tol", rc.limit.tol, "limit convergence tolerance")->capture_default_str();
  app.add_option("--limit-steps", rc.limit.max_steps, "limit sequence length")->capture_default_str();
  app.add_option("--limit-window", rc.limit.window, "limit tail window")->capture_default_str();
}

void add_mean_options(CLI::App& app, RunConfig& rc) {
  app.add_option("--p", rc.p, "power mean exponent (inf, -inf allowed)")->capture_default_str();
  app.add_option("--generator", rc.generator, "generator spec, e.g. cosh, power:2, expr:x^3")->capture_default_str();
  app.add_option("--kernel", rc.kernel, "kernel spec, e.g. sign, diff:cosh, expr:x-y")->capture_default_str();
  app.add_option("--semidev-kind", rc.semidev_kind, "lower-weak|lower-strict|upper-strict|upper-weak|all")
      ->capture_default_str();
  app.add_option("--x", rc.x, "entries, comma separated");
  app.add_option("--w", rc.w, "weights, comma separated (default all 1)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Weighted means: compute, homogenize, verify inequalities", "wmeans"};
  app.set_config("--config", "", "INI/TOML file mirroring the flags; sections name subcommands");
  app.allow_config_extras(false);
  app.require_subcommand(1);
  app.add_option("--format", rc.format, "human|structured")
      ->check(CLI::IsMember({"human", "structured"}))
      ->capture_default_str();
  app.add_option("--domain", rc.domain, "interval for entries and expression functions")->capture_default_str();
  add_solver_options(app, rc);

  CLI::App* compute = app.add_subcommand("compute", "compute a mean")->require_subcommand(1)->fallthrough();
  compute->configurable();
  CLI::App* mean = compute->add_subcommand("mean", "one mean of a weighted sample")->fallthrough();
  mean->configurable();
  mean->add_option("--kind", rc.kind, "power|qa|semidev|deviation")
      ->check(CLI::IsMember({"power", "qa", "semidev", "deviation"}))
      ->capture_default_str();
  add_mean_options(*mean, rc);

  CLI::App* hom = app.add_subcommand("homogenize", "local homogenizations and envelopes")->fallthrough();
  hom->configurable();
  hom->add_option("--target", rc.target, "qa|mean|kernel|phi")
      ->check(CLI::IsMember({"qa", "mean", "kernel", "phi"}))
      ->capture_default_str();
  hom->add_option("--mode", rc.mode, "local|envelope (target mean)")
      ->check(CLI::IsMember({"local", "envelope"}))
      ->capture_default_str();
  hom->add_option("--mean", rc.kind, "power|qa|semidev|deviation (target mean)")
      ->check(CLI::IsMember({"power", "qa", "semidev", "deviation"}))
      ->capture_default_str();
  hom->add_option("--u", rc.u, "evaluation point (targets kernel, phi)")->capture_default_str();
  hom->add_flag("--csv", rc.csv, "emit the limit table as CSV");
  add_mean_options(*hom, rc);

  CLI::App* ver = app.add_subcommand("verify", "run a verification suite")->fallthrough();
  ver->configurable();
  ver->add_option("--suite", rc.suite, "verification suite")
      ->required()
      ->check(CLI::IsMember(
          {"sandwich", "lemma-lim", "comparison", "jensen", "tei", "cei", "minkowski", "hoelder", "homi"}));
  ver->add_option("--kernel", rc.kernel, "kernel E")->capture_default_str();
  ver->add_option("--kernel-f", rc.kernel_f, "kernel F (comparison, homi)");
  ver->add_option("--kernel-g", rc.kernel_g, "kernel G (homi)");
  ver->add_option("--operation", rc.operation, "sum|product|expr:... (homi)")->capture_default_str();
  ver->add_option("--seed", rc.seed, "sample plan seed")->capture_default_str();
  ver->add_option("--samples", rc.samples, "number of samples")->capture_default_str();
  ver->add_option("--n-max", rc.n_max, "largest sample length")->capture_default_str();
  ver->add_option("--grid", rc.grid, "lattice points per axis (suite default when 0)")->capture_default_str();
  ver->add_option("--entry-range", rc.entry_range, "lo,hi for entries")->capture_default_str();
  ver->add_option("--y-range", rc.y_range, "lo,hi for the second entry vector (homi)");
  ver->add_option("--weight-range", rc.weight_range, "lo,hi for weights")->capture_default_str();
  ver->add_option("--at", rc.at, "x,y for lemma-lim")->capture_default_str();
  ver->add_option("--n-list", rc.n_list, "weights n for lemma-lim (default 1e1..1e6)");
  ver->add_flag("--no-monotone", rc.no_monotone, "homi: only the 16 kind pairs, no monotone hypothesis");

  CLI::App* cat = app.add_subcommand("catalog", "list built-in generators, kernels and operations");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("wmeans");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: UsageError: " << e.what() << '\n';
    return kUsage;
  }

  try {
    rc.semidev.validate();
    validate_limit(rc.limit);
    IntervalDomain::parse(rc.domain);
    if (compute->parsed()) return compute_mean(rc, out);
    if (hom->parsed()) return homogenize(rc, out);
    if (ver->parsed()) return verify(rc, out);
    if (cat->parsed()) return list_catalog(rc, out);
    err << "error: UsageError: no command\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_error(e.code()) ? kUsage : kNumerical;
  } catch (const std::exception& e) {
    err << "error: NumericalFailure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace wmeans::cli
