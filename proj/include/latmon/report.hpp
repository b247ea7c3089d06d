#ifndef LATMON_REPORT_HPP
#define LATMON_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "latmon/exec.hpp"

namespace latmon {

/// Outcome of one verification sweep. Counts and witnesses are fully
/// deterministic for a given configuration; millis stays 0 unless the
/// caller explicitly stamps wall time into it.
struct CheckReport {
  std::string name;
  bool pass = true;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::string> witnesses;
  std::int64_t millis = 0;

  static constexpr std::size_t kWitnessCap = 8;

  void add_witness(std::string text) {
    pass = false;
    if (witnesses.size() < kWitnessCap) witnesses.push_back(std::move(text));
  }

  /// Folds a parallel failure log into this report.
  void merge_failures(const FailureLog& log) {
    if (log.empty()) return;
    pass = false;
    counts["failures"] += log.size();
    for (auto& w : log.sorted_texts(kWitnessCap))
      if (witnesses.size() < kWitnessCap) witnesses.push_back(std::move(w));
  }

  nlohmann::ordered_json to_json() const;
};

/// Machine-readable run report: {config, checks:[...], summary}.
struct Report {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<CheckReport> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::int64_t total_millis() const {
    std::int64_t t = 0;
    for (const auto& c : checks) t += c.millis;
    return t;
  }

  nlohmann::ordered_json to_json() const;
  std::string to_string() const;  // indented JSON with trailing newline
};

}  // namespace latmon

#endif
