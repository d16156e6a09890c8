#include "fnk/report.hpp"

#include <algorithm>

namespace fnk {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::sampled_pass: return "sampled-pass";
    case Verdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

ordered_json PropertyReport::to_json() const {
  ordered_json j;
  j["property_id"] = property_id;
  j["verdict"] = to_string(verdict);
  j["pairs_tested"] = pairs_tested;
  if (witness) j["witness"] = *witness;
  j["max_error"] = max_error;
  j["grid"] = ordered_json{{"n", grid_n}, {"m", grid_m}};
  if (seed) j["seed"] = *seed;
  if (!note.empty()) j["note"] = note;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

bool SuiteReport::all_passed() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const PropertyReport& r) { return r.passed(); });
}

void SuiteReport::sort_reports() {
  std::sort(reports.begin(), reports.end(),
            [](const PropertyReport& a, const PropertyReport& b) {
              return a.property_id < b.property_id;
            });
}

ordered_json SuiteReport::to_json() const {
  ordered_json j;
  j["schema"] = "report_v1";
  j["suite"] = suite;
  j["config"] = config;
  j["verdict"] = all_passed() ? "pass" : "fail";
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  j["reports"] = std::move(arr);
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

}  // namespace fnk
