#pragma once

#include <string>
#include <vector>

#include "fnk/interval.hpp"
#include "fnk/nd_negation.hpp"

namespace fnk {

enum class SetFormat { csv, json };

// A finite fuzzy set with n-dimensional membership degrees. Element order
// is preserved from the source file.
struct NDFuzzySet {
  int dim = 0;
  std::vector<std::string> elements;
  std::vector<NDInterval> memberships;

  size_t size() const { return elements.size(); }
};

// CSV with header "element,mu1,...,mun", or JSON
// {"dim": n, "elements": {"e1": [..], ...}}. Rows that violate range or
// ordering are rejected together, with their line numbers.
NDFuzzySet load_set(const std::string& path, SetFormat format);
void save_set(const NDFuzzySet& set, const std::string& path, SetFormat format);

// Applies a negation to every membership degree.
NDFuzzySet complement(const NDFuzzySet& set, const NDimNegation& neg);

}  // namespace fnk
