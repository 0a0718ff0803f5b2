// Structured verification results shared by the library and the CLI.
#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ces {

using Json = nlohmann::ordered_json;

/// One measured quantity compared against a threshold.
struct Check {
  enum class Kind { Below, Above, Equal };

  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Kind kind = Kind::Below;
  bool pass = false;

  /// value < threshold
  static Check below(std::string name, double value, double threshold);
  /// value > threshold
  static Check above(std::string name, double value, double threshold);
  /// value == expected (integers and counts)
  static Check equal(std::string name, double value, double expected);
};

struct VerificationReport {
  std::string command;
  Json inputs = Json::object();
  std::vector<Check> checks;
  /// Free-form measured values that are informative but not gated.
  Json notes = Json::object();
  std::int64_t wall_time_ms = 0;

  void add(Check c) { checks.push_back(std::move(c)); }
  /// Appends every check of `other`, prefixing names.
  void merge(const VerificationReport& other, const std::string& prefix);
  bool overall() const;
  const Check* find(const std::string& name) const;
  std::vector<const Check*> failures() const;
};

Json to_json(const Check& c);
Json to_json(const VerificationReport& r);

}  // namespace ces
