#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wmeans/domain.hpp"

namespace wmeans {

/// Inputs that reproduce a failure: named vectors such as "x", "w", "point",
/// plus the index of the sample in its plan.
struct Witness {
  std::optional<std::size_t> sample_index;
  std::vector<std::pair<std::string, std::vector<double>>> fields;
  std::string note;

  [[nodiscard]] const std::vector<double>* field(std::string_view name) const;
};

Witness sample_witness(std::size_t index, const WeightedSample& s, std::string note = {});

struct Condition {
  std::string name;
  bool holds = true;
  std::size_t checked = 0;
  /// max(lhs - rhs) over checks of "lhs <= rhs"; -inf when nothing was checked.
  double max_violation = -kInfinity;
  /// max(rhs - lhs), the loosest observed slack.
  double max_slack = -kInfinity;
  std::optional<Witness> witness;
  std::string note;

  /// Records one check of lhs <= rhs + tol. The first failure keeps its witness.
  void observe(double lhs, double rhs, double tol, const Witness& witness_if_failed);
  /// Records one check with a precomputed verdict.
  void observe(bool ok, const Witness& witness_if_failed);
  /// Marks a failure without a numeric margin (evaluation error).
  void fail(const Witness& w);
};

enum class Overall { Pass, Fail, Inconclusive };
std::string_view overall_name(Overall o) noexcept;

struct Report {
  std::string theorem_id;
  std::vector<std::pair<std::string, std::string>> subject;  // e.g. {"kernel", "diff:cosh"}
  /// A deque so that references returned by condition() stay valid.
  std::deque<Condition> conditions;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::string> notes;
  std::size_t samples = 0;
  std::optional<std::string> inconclusive_reason;
  Overall overall = Overall::Pass;

  /// Find-or-create; creation order is the serialization order.
  Condition& condition(const std::string& name);
  [[nodiscard]] const Condition* find(std::string_view name) const;

  /// overall = Inconclusive when a reason is set, else Pass iff every
  /// condition holds.
  void finalize();
  [[nodiscard]] bool passed() const noexcept { return overall == Overall::Pass; }
};

/// Stable-key-order JSON document. Non-finite numbers are written as the
/// strings "inf", "-inf", "nan"; finite ones in shortest round-trip form.
std::string to_structured(const Report& report);

/// Mean-level tolerance 1e-7 * (1 + |v|).
inline double mean_tolerance(double v) noexcept { return 1e-7 * (1.0 + (v < 0 ? -v : v)); }
/// Pointwise kernel tolerance.
inline constexpr double kKernelTolerance = 1e-9;

}  // namespace wmeans
