#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fnk {

using ordered_json = nlohmann::ordered_json;

enum class Verdict { pass, fail, sampled_pass, undetermined };

std::string to_string(Verdict v);

// Outcome of one property check. "sampled_pass" is only used when the pair
// budget forced subsampling; a plain pass means the full grid was scanned.
struct PropertyReport {
  std::string property_id;
  Verdict verdict = Verdict::pass;
  long long pairs_tested = 0;
  std::optional<ordered_json> witness;  // first counterexample, grid order
  double max_error = 0.0;
  int grid_n = 0;
  int grid_m = 0;
  std::optional<std::uint64_t> seed;
  std::string note;  // e.g. "consistent with strict at resolution m=41"
  double elapsed_ms = 0.0;

  bool passed() const { return verdict == Verdict::pass || verdict == Verdict::sampled_pass; }
  ordered_json to_json() const;
};

// A named collection of property checks plus the configuration that
// produced them. Reports are sorted by property_id before serialization.
struct SuiteReport {
  std::string suite;
  ordered_json config;
  std::vector<PropertyReport> reports;
  double elapsed_ms = 0.0;

  bool all_passed() const;
  void sort_reports();
  ordered_json to_json() const;  // schema field "report_v1"
};

}  // namespace fnk
