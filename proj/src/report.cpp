#include "ces/report.hpp"

#include <algorithm>
#include <cmath>

namespace ces {

Check Check::below(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, Kind::Below, value < threshold};
}

Check Check::above(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, Kind::Above, value > threshold};
}

Check Check::equal(std::string name, double value, double expected) {
  return {std::move(name), value, expected, Kind::Equal, value == expected};
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (const auto& c : other.checks) {
    Check copy = c;
    copy.name = prefix + c.name;
    checks.push_back(std::move(copy));
  }
}

bool VerificationReport::overall() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

std::vector<const Check*> VerificationReport::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(&c);
  return out;
}

namespace {

const char* kind_name(Check::Kind k) {
  switch (k) {
    case Check::Kind::Below:
      return "<";
    case Check::Kind::Above:
      return ">";
    case Check::Kind::Equal:
      return "==";
  }
  return "?";
}

// JSON has no NaN/Inf; emit null for those so the output stays parseable.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["value"] = number(c.value);
  j["comparison"] = kind_name(c.kind);
  j["threshold"] = number(c.threshold);
  j["pass"] = c.pass;
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["command"] = r.command;
  j["inputs"] = r.inputs;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["overall"] = r.overall();
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

}  // namespace ces
