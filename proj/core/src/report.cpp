#include "wmeans/report.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "wmeans/format.hpp"

namespace wmeans {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

Json numbers(const std::vector<double>& vs) {
  Json arr = Json::array();
  for (double v : vs) arr.push_back(number(v));
  return arr;
}

Json witness_json(const Witness& w) {
  Json j = Json::object();
  if (w.sample_index) j["sample_index"] = *w.sample_index;
  for (const auto& [name, values] : w.fields) j[name] = numbers(values);
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

}  // namespace

const std::vector<double>* Witness::field(std::string_view name) const {
  for (const auto& [key, values] : fields) {
    if (key == name) return &values;
  }
  return nullptr;
}

Witness sample_witness(std::size_t index, const WeightedSample& s, std::string note) {
  Witness w;
  w.sample_index = index;
  w.fields.emplace_back("x", std::vector<double>(s.entries().begin(), s.entries().end()));
  w.fields.emplace_back("w", std::vector<double>(s.weights().begin(), s.weights().end()));
  w.note = std::move(note);
  return w;
}

void Condition::observe(double lhs, double rhs, double tol, const Witness& witness_if_failed) {
  ++checked;
  const double violation = lhs - rhs;
  if (std::isnan(violation)) {
    fail(witness_if_failed);
    return;
  }
  max_violation = std::max(max_violation, violation);
  max_slack = std::max(max_slack, -violation);
  if (violation > tol && holds) {
    holds = false;
    witness = witness_if_failed;
  }
}

void Condition::observe(bool ok, const Witness& witness_if_failed) {
  ++checked;
  if (!ok && holds) {
    holds = false;
    witness = witness_if_failed;
  }
}

void Condition::fail(const Witness& w) {
  if (holds) {
    holds = false;
    witness = w;
  }
}

std::string_view overall_name(Overall o) noexcept {
  switch (o) {
    case Overall::Pass:
      return "pass";
    case Overall::Fail:
      return "fail";
    case Overall::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Condition& Report::condition(const std::string& name) {
  for (auto& c : conditions) {
    if (c.name == name) return c;
  }
  Condition c;
  c.name = name;
  conditions.push_back(std::move(c));
  return conditions.back();
}

const Condition* Report::find(std::string_view name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void Report::finalize() {
  if (inconclusive_reason) {
    overall = Overall::Inconclusive;
    return;
  }
  const bool all = std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.holds; });
  overall = all ? Overall::Pass : Overall::Fail;
}

std::string to_structured(const Report& report) {
  Json j = Json::object();
  j["theorem"] = report.theorem_id;
  Json subject = Json::object();
  for (const auto& [k, v] : report.subject) subject[k] = v;
  j["subject"] = subject;
  j["overall"] = std::string(overall_name(report.overall));
  if (report.inconclusive_reason) j["inconclusive_reason"] = *report.inconclusive_reason;
  j["samples"] = report.samples;
  Json conds = Json::array();
  for (const auto& c : report.conditions) {
    Json cj = Json::object();
    cj["name"] = c.name;
    cj["holds"] = c.holds;
    cj["checked"] = c.checked;
    cj["max_violation"] = number(c.max_violation);
    cj["max_slack"] = number(c.max_slack);
    if (!c.note.empty()) cj["note"] = c.note;
    if (c.witness) cj["witness"] = witness_json(*c.witness);
    conds.push_back(cj);
  }
  j["conditions"] = conds;
  Json tols = Json::object();
  for (const auto& [k, v] : report.tolerances) tols[k] = number(v);
  j["tolerances"] = tols;
  if (!report.notes.empty()) j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

}  // namespace wmeans
