#include "fnk/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fnk {

namespace {

// Pull rounding noise back into [0,1]; anything further out is a real error.
double clamp_unit(double v, const char* what) {
  if (std::isnan(v)) throw argument_error(std::string(what) + ": NaN component");
  if (v < 0.0) {
    if (v < -kClampSlack)
      throw argument_error(std::string(what) + ": component " + std::to_string(v) +
                           " below 0");
    return 0.0;
  }
  if (v > 1.0) {
    if (v > 1.0 + kClampSlack)
      throw argument_error(std::string(what) + ": component " + std::to_string(v) +
                           " above 1");
    return 1.0;
  }
  return v;
}

}  // namespace

NDInterval::NDInterval(std::vector<double> values) : vals_(std::move(values)) {
  if (vals_.empty()) throw argument_error("NDInterval: empty tuple");
  for (double& v : vals_) v = clamp_unit(v, "NDInterval");
  for (size_t i = 1; i < vals_.size(); ++i) {
    if (vals_[i] < vals_[i - 1]) {
      if (vals_[i - 1] - vals_[i] > kClampSlack) {
        std::ostringstream os;
        os << "NDInterval: components not nondecreasing at position " << i + 1 << " ("
           << vals_[i - 1] << " > " << vals_[i] << ")";
        throw argument_error(os.str());
      }
      vals_[i] = vals_[i - 1];  // rounding-level inversion
    }
  }
}

double NDInterval::project(int i) const {
  if (i < 1 || i > dim())
    throw argument_error("NDInterval::project: index " + std::to_string(i) +
                         " outside [1, " + std::to_string(dim()) + "]");
  return vals_[static_cast<size_t>(i - 1)];
}

NDInterval diag(double t, int n) {
  if (n < 1) throw argument_error("diag: dimension must be positive");
  return NDInterval(std::vector<double>(static_cast<size_t>(n), t));
}

bool is_degenerate(const NDInterval& x) {
  return x.values().front() == x.values().back();
}

bool leq(const NDInterval& x, const NDInterval& y) {
  if (x.dim() != y.dim()) throw argument_error("leq: dimension mismatch");
  for (int i = 0; i < x.dim(); ++i)
    if (x.values()[i] > y.values()[i]) return false;
  return true;
}

NDInterval join(const NDInterval& x, const NDInterval& y) {
  if (x.dim() != y.dim()) throw argument_error("join: dimension mismatch");
  std::vector<double> v(x.values());
  for (int i = 0; i < x.dim(); ++i) v[i] = std::max(v[i], y.values()[i]);
  return NDInterval(std::move(v));
}

NDInterval meet(const NDInterval& x, const NDInterval& y) {
  if (x.dim() != y.dim()) throw argument_error("meet: dimension mismatch");
  std::vector<double> v(x.values());
  for (int i = 0; i < x.dim(); ++i) v[i] = std::min(v[i], y.values()[i]);
  return NDInterval(std::move(v));
}

bool subset_i(const NDInterval& x, const NDInterval& y, int i) {
  if (x.dim() != y.dim()) throw argument_error("subset_i: dimension mismatch");
  if (i < 1 || i >= x.dim())
    throw argument_error("subset_i: index " + std::to_string(i) + " outside [1, " +
                         std::to_string(x.dim() - 1) + "]");
  return y.project(i) <= x.project(i) && x.project(i + 1) <= y.project(i + 1);
}

NDInterval sort_to_simplex(std::vector<double> values) {
  std::stable_sort(values.begin(), values.end());
  return NDInterval(std::move(values));
}

std::vector<double> unpack(const NDInterval& x) { return x.values(); }

NDInterval parse_interval(const std::string& text) {
  std::string s = text;
  // Degenerate shorthand: /v/:n
  if (!s.empty() && s.front() == '/') {
    size_t close = s.find('/', 1);
    if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != ':')
      throw parse_error("parse_interval: malformed degenerate shorthand '" + text + "'");
    std::string num = s.substr(1, close - 1);
    std::string cnt = s.substr(close + 2);
    size_t pos = 0;
    double v = 0.0;
    int n = 0;
    try {
      v = std::stod(num, &pos);
      if (pos != num.size()) throw std::invalid_argument("trailing");
      size_t cpos = 0;
      n = std::stoi(cnt, &cpos);
      if (cpos != cnt.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw parse_error("parse_interval: malformed degenerate shorthand '" + text + "'");
    }
    if (n < 1) throw parse_error("parse_interval: dimension must be positive");
    return diag(v, n);
  }
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw parse_error("parse_interval: bad component '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size())
      throw parse_error("parse_interval: bad component '" + item + "'");
    vals.push_back(v);
  }
  if (vals.empty()) throw parse_error("parse_interval: empty tuple");
  return NDInterval(std::move(vals));
}

std::string format_interval(const NDInterval& x) {
  std::string out;
  char buf[64];
  for (int i = 0; i < x.dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", x.values()[static_cast<size_t>(i)]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

}  // namespace fnk
