#pragma once

#include <cstdint>
#include <vector>

#include "fnk/interval.hpp"

namespace fnk {

// Binomial coefficient, exact for the sizes that show up here.
long long binomial(int n, int k);

// The m equispaced axis values k/(m-1), k = 0..m-1. Computed once so the
// same value is always the same double.
std::vector<double> axis_grid(int m);

// All nondecreasing n-tuples over the m-point axis grid, enumerated in
// lexicographic order of their index tuples. Size is C(m+n-1, n).
class SimplexGrid {
 public:
  SimplexGrid(int n, int m);

  int dim() const { return n_; }
  int resolution() const { return m_; }
  double step() const { return step_; }
  long long size() const { return static_cast<long long>(points_.size()); }

  const NDInterval& point(long long idx) const { return points_[static_cast<size_t>(idx)]; }
  const std::vector<NDInterval>& points() const { return points_; }
  const std::vector<double>& axis() const { return axis_; }

  // Index tuple (nondecreasing, 0-based axis indices) of a grid point.
  const std::vector<int>& index_tuple(long long idx) const {
    return tuples_[static_cast<size_t>(idx)];
  }

  // Rank of an index tuple in the enumeration order.
  long long rank(const std::vector<int>& tuple) const;

  // Rank of a grid point's componentwise join/meet with another; both are
  // grid points again, so lattice scans can stay in index space.
  std::vector<int> join_tuple(long long a, long long b) const;
  std::vector<int> meet_tuple(long long a, long long b) const;

 private:
  int n_;
  int m_;
  double step_;
  std::vector<double> axis_;
  std::vector<NDInterval> points_;
  std::vector<std::vector<int>> tuples_;
  // rank(tuple) = sum over positions of precomputed offsets; see grid.cpp.
  std::vector<std::vector<long long>> rank_table_;
};

}  // namespace fnk
