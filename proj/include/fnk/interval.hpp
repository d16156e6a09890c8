#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fnk/common.hpp"

namespace fnk {

// A point of the upper simplex: an n-tuple 0 <= x1 <= ... <= xn <= 1.
// Construction validates range and ordering; values off by at most
// kClampSlack (rounding noise from evaluation chains) are clamped,
// larger violations throw argument_error.
class NDInterval {
 public:
  explicit NDInterval(std::vector<double> values);

  int dim() const { return static_cast<int>(vals_.size()); }

  // 1-based projection, i in [1, dim].
  double project(int i) const;

  const std::vector<double>& values() const { return vals_; }

  bool operator==(const NDInterval& other) const { return vals_ == other.vals_; }
  bool operator!=(const NDInterval& other) const { return vals_ != other.vals_; }

 private:
  std::vector<double> vals_;
};

// The degenerate element /t/ = (t, ..., t).
NDInterval diag(double t, int n);

// True when all components are equal (exactly; inputs are stored values).
bool is_degenerate(const NDInterval& x);

// Componentwise order: x <= y iff every projection of x is <= that of y.
bool leq(const NDInterval& x, const NDInterval& y);

// Componentwise max / min; both stay inside the simplex.
NDInterval join(const NDInterval& x, const NDInterval& y);
NDInterval meet(const NDInterval& x, const NDInterval& y);

// x is an i-subset of y (1 <= i < n):
//   pi_i(y) <= pi_i(x) <= pi_{i+1}(x) <= pi_{i+1}(y).
bool subset_i(const NDInterval& x, const NDInterval& y, int i);

// Sorts an arbitrary tuple from [0,1]^n into the simplex (stable sort).
NDInterval sort_to_simplex(std::vector<double> values);

// The components as a plain tuple again.
std::vector<double> unpack(const NDInterval& x);

// Textual forms: "0.1,0.4,0.9" or the degenerate shorthand "/0.3/:3".
NDInterval parse_interval(const std::string& text);
std::string format_interval(const NDInterval& x);

}  // namespace fnk
