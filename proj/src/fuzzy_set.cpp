#include "fnk/fuzzy_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fnk/report.hpp"

namespace fnk {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_double(const std::string& token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

// Strict row validation; file data gets no rounding slack.
const char* row_defect(const std::vector<double>& mu) {
  for (double v : mu)
    if (v < 0.0 || v > 1.0) return "range";
  for (std::size_t i = 1; i < mu.size(); ++i)
    if (mu[i] < mu[i - 1]) return "ordering";
  return nullptr;
}

[[noreturn]] void reject(const std::vector<std::string>& defects) {
  std::string msg = "load_set: rejected ";
  msg += std::to_string(defects.size());
  msg += defects.size() == 1 ? " row: " : " rows: ";
  for (std::size_t i = 0; i < defects.size(); ++i) {
    if (i) msg += ", ";
    msg += defects[i];
  }
  throw ingestion_error(msg);
}

NDFuzzySet load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ingestion_error("load_set: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw ingestion_error("load_set: missing header in " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  auto head = split_csv(line);
  if (head.empty() || head[0] != "element")
    throw ingestion_error("load_set: header must start with \"element\"");
  int dim = static_cast<int>(head.size()) - 1;
  if (dim < 1) throw ingestion_error("load_set: header lists no membership columns");
  for (int i = 1; i <= dim; ++i)
    if (head[static_cast<std::size_t>(i)] != "mu" + std::to_string(i))
      throw ingestion_error("load_set: header column " + std::to_string(i + 1) +
                            " must be mu" + std::to_string(i));

  NDFuzzySet set;
  set.dim = dim;
  std::vector<std::string> defects;
  std::set<std::string> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv(line);
    std::string where = "line " + std::to_string(line_no);
    if (static_cast<int>(fields.size()) != dim + 1) {
      defects.push_back(where + " (field count)");
      continue;
    }
    if (fields[0].empty()) {
      defects.push_back(where + " (empty label)");
      continue;
    }
    if (!seen.insert(fields[0]).second) {
      defects.push_back(where + " (duplicate label)");
      continue;
    }
    std::vector<double> mu(static_cast<std::size_t>(dim));
    bool numeric = true;
    for (int i = 0; i < dim; ++i)
      if (!parse_double(fields[static_cast<std::size_t>(i + 1)], mu[static_cast<std::size_t>(i)]))
        numeric = false;
    if (!numeric) {
      defects.push_back(where + " (bad number)");
      continue;
    }
    if (const char* why = row_defect(mu)) {
      defects.push_back(where + " (" + why + ")");
      continue;
    }
    set.elements.push_back(fields[0]);
    set.memberships.emplace_back(std::move(mu));
  }
  if (!defects.empty()) reject(defects);
  return set;
}

NDFuzzySet load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ingestion_error("load_set: cannot open " + path);

  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw ingestion_error(std::string("load_set: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("elements") ||
      !j["dim"].is_number_integer() || !j["elements"].is_object())
    throw ingestion_error("load_set: expected {\"dim\": n, \"elements\": {...}}");

  int dim = j["dim"].get<int>();
  if (dim < 1) throw ingestion_error("load_set: dim must be positive");

  NDFuzzySet set;
  set.dim = dim;
  std::vector<std::string> defects;
  for (const auto& [label, value] : j["elements"].items()) {
    std::string where = "element \"" + label + "\"";
    if (!value.is_array() || static_cast<int>(value.size()) != dim) {
      defects.push_back(where + " (field count)");
      continue;
    }
    std::vector<double> mu(static_cast<std::size_t>(dim));
    bool numeric = true;
    for (int i = 0; i < dim; ++i) {
      const auto& v = value[static_cast<std::size_t>(i)];
      if (!v.is_number()) {
        numeric = false;
        break;
      }
      mu[static_cast<std::size_t>(i)] = v.get<double>();
      if (!std::isfinite(mu[static_cast<std::size_t>(i)])) numeric = false;
    }
    if (!numeric) {
      defects.push_back(where + " (bad number)");
      continue;
    }
    if (const char* why = row_defect(mu)) {
      defects.push_back(where + " (" + why + ")");
      continue;
    }
    set.elements.push_back(label);
    set.memberships.emplace_back(std::move(mu));
  }
  if (!defects.empty()) reject(defects);
  return set;
}

}  // namespace

NDFuzzySet load_set(const std::string& path, SetFormat format) {
  return format == SetFormat::csv ? load_csv(path) : load_json(path);
}

void save_set(const NDFuzzySet& set, const std::string& path, SetFormat format) {
  if (set.elements.size() != set.memberships.size())
    throw argument_error("save_set: element and membership counts differ");
  for (const auto& m : set.memberships)
    if (m.dim() != set.dim) throw argument_error("save_set: membership dimension mismatch");

  std::ofstream out(path);
  if (!out) throw ingestion_error("save_set: cannot open " + path);

  if (format == SetFormat::csv) {
    for (const auto& label : set.elements)
      if (label.empty() || label.find_first_of(",\r\n") != std::string::npos)
        throw argument_error("save_set: label \"" + label + "\" does not fit the format");
    out << "element";
    for (int i = 1; i <= set.dim; ++i) out << ",mu" << i;
    out << "\n";
    for (std::size_t r = 0; r < set.elements.size(); ++r) {
      out << set.elements[r];
      for (int i = 1; i <= set.dim; ++i) out << "," << num(set.memberships[r].project(i));
      out << "\n";
    }
  } else {
    ordered_json j;
    j["dim"] = set.dim;
    ordered_json elems = ordered_json::object();
    for (std::size_t r = 0; r < set.elements.size(); ++r)
      elems[set.elements[r]] = set.memberships[r].values();
    j["elements"] = std::move(elems);
    out << j.dump(2) << "\n";
  }
  if (!out) throw ingestion_error("save_set: write to " + path + " failed");
}

NDFuzzySet complement(const NDFuzzySet& set, const NDimNegation& neg) {
  if (neg.dim() != set.dim)
    throw argument_error("complement: negation dimension " + std::to_string(neg.dim()) +
                         " does not match set dimension " + std::to_string(set.dim));
  NDFuzzySet out;
  out.dim = set.dim;
  out.elements = set.elements;
  out.memberships.reserve(set.memberships.size());
  for (const auto& m : set.memberships) out.memberships.push_back(neg.eval(m));
  return out;
}

}  // namespace fnk
