#include "latmon/report.hpp"

namespace latmon {

nlohmann::ordered_json CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["status"] = pass ? "pass" : "fail";
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : counts) c[k] = v;  // std::map keeps keys sorted
  j["counts"] = std::move(c);
  j["witnesses"] = witnesses;
  j["millis"] = millis;
  return j;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["config"] = config;
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const auto& c : checks) cs.push_back(c.to_json());
  j["checks"] = std::move(cs);
  std::uint64_t passed = 0, failed = 0;
  for (const auto& c : checks) (c.pass ? passed : failed) += 1;
  nlohmann::ordered_json s;
  s["passed"] = passed;
  s["failed"] = failed;
  s["status"] = failed == 0 ? "pass" : "fail";
  s["millis"] = total_millis();
  j["summary"] = std::move(s);
  return j;
}

std::string Report::to_string() const { return to_json().dump(2) + "\n"; }

}  // namespace latmon
