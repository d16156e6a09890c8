#include "fnk/grid.hpp"

#include <algorithm>

namespace fnk {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: r*(n-k+i) is divisible by i here
  }
  return r;
}

std::vector<double> axis_grid(int m) {
  if (m < 2) throw argument_error("axis_grid: resolution must be at least 2");
  std::vector<double> v(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) v[static_cast<size_t>(k)] = double(k) / double(m - 1);
  return v;
}

SimplexGrid::SimplexGrid(int n, int m) : n_(n), m_(m) {
  if (n < 1) throw argument_error("SimplexGrid: dimension must be positive");
  axis_ = axis_grid(m);
  step_ = 1.0 / double(m - 1);

  long long count = binomial(m + n - 1, n);
  points_.reserve(static_cast<size_t>(count));
  tuples_.reserve(static_cast<size_t>(count));

  std::vector<int> t(static_cast<size_t>(n), 0);
  for (;;) {
    std::vector<double> coords(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) coords[static_cast<size_t>(j)] = axis_[static_cast<size_t>(t[static_cast<size_t>(j)])];
    points_.emplace_back(std::move(coords));
    tuples_.push_back(t);
    // next nondecreasing tuple in lexicographic order
    int j = n - 1;
    while (j >= 0 && t[static_cast<size_t>(j)] == m - 1) --j;
    if (j < 0) break;
    int v = t[static_cast<size_t>(j)] + 1;
    for (int l = j; l < n; ++l) t[static_cast<size_t>(l)] = v;
  }

  // rank(tuple) = sum over positions j of (tuples before it that share the
  // prefix and take a smaller value at j). cum_[j][v] is the count of
  // completions for all values w < v at position j; a prefix sum makes the
  // per-position contribution a difference of two lookups.
  rank_table_.assign(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(m) + 1, 0));
  for (int j = 0; j < n; ++j) {
    auto& cum = rank_table_[static_cast<size_t>(j)];
    for (int v = 0; v < m; ++v) {
      int rest = n - 1 - j;
      long long completions = binomial((m - 1 - v) + rest, rest);
      cum[static_cast<size_t>(v) + 1] = cum[static_cast<size_t>(v)] + completions;
    }
  }
}

long long SimplexGrid::rank(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != n_)
    throw argument_error("SimplexGrid::rank: wrong tuple length");
  long long r = 0;
  int lb = 0;
  for (int j = 0; j < n_; ++j) {
    int v = tuple[static_cast<size_t>(j)];
    if (v < lb || v >= m_) throw argument_error("SimplexGrid::rank: tuple not in grid");
    const auto& cum = rank_table_[static_cast<size_t>(j)];
    r += cum[static_cast<size_t>(v)] - cum[static_cast<size_t>(lb)];
    lb = v;
  }
  return r;
}

std::vector<int> SimplexGrid::join_tuple(long long a, long long b) const {
  const auto& ta = tuples_[static_cast<size_t>(a)];
  const auto& tb = tuples_[static_cast<size_t>(b)];
  std::vector<int> t(static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j)
    t[static_cast<size_t>(j)] = std::max(ta[static_cast<size_t>(j)], tb[static_cast<size_t>(j)]);
  return t;
}

std::vector<int> SimplexGrid::meet_tuple(long long a, long long b) const {
  const auto& ta = tuples_[static_cast<size_t>(a)];
  const auto& tb = tuples_[static_cast<size_t>(b)];
  std::vector<int> t(static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j)
    t[static_cast<size_t>(j)] = std::min(ta[static_cast<size_t>(j)], tb[static_cast<size_t>(j)]);
  return t;
}

}  // namespace fnk
