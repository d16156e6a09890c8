#include <doctest.h>

#include "fnk/grid.hpp"
#include "fnk/interval.hpp"

using namespace fnk;

TEST_CASE("binomial matches Pascal's rule") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(23, 3) == 1771);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  for (int n = 1; n <= 20; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("axis grid is the uniform partition") {
  auto a = axis_grid(5);
  REQUIRE(a.size() == 5);
  CHECK(a.front() == 0.0);
  CHECK(a.back() == 1.0);
  CHECK(a[2] == 0.5);
  CHECK_THROWS_AS(axis_grid(1), argument_error);
}

TEST_CASE("grid size counts nondecreasing tuples") {
  CHECK(SimplexGrid(2, 5).size() == 15);
  CHECK(SimplexGrid(3, 4).size() == 20);
  CHECK(SimplexGrid(3, 21).size() == 1771);
  CHECK(SimplexGrid(1, 7).size() == 7);
}

TEST_CASE("points are simplex elements in lexicographic order") {
  SimplexGrid g(3, 5);
  const auto& pts = g.points();
  REQUIRE(static_cast<long long>(pts.size()) == g.size());
  for (const auto& p : pts) {
    for (int i = 1; i < p.dim(); ++i) CHECK(p.project(i) <= p.project(i + 1));
  }
  for (std::size_t i = 1; i < pts.size(); ++i)
    CHECK(g.index_tuple(static_cast<long long>(i - 1)) <
          g.index_tuple(static_cast<long long>(i)));
}

TEST_CASE("rank inverts index_tuple") {
  SimplexGrid g(3, 6);
  for (long long i = 0; i < g.size(); ++i) CHECK(g.rank(g.index_tuple(i)) == i);
  CHECK_THROWS_AS(g.rank({0, 0}), argument_error);
  CHECK_THROWS_AS(g.rank({3, 2, 1}), argument_error);
}

TEST_CASE("join and meet in index space match the lattice on points") {
  SimplexGrid g(2, 6);
  for (long long a = 0; a < g.size(); a += 3)
    for (long long b = 0; b < g.size(); b += 2) {
      NDInterval pj = g.point(g.rank(g.join_tuple(a, b)));
      NDInterval pm = g.point(g.rank(g.meet_tuple(a, b)));
      CHECK(pj == join(g.point(a), g.point(b)));
      CHECK(pm == meet(g.point(a), g.point(b)));
    }
}

TEST_CASE("accessors") {
  SimplexGrid g(3, 11);
  CHECK(g.dim() == 3);
  CHECK(g.resolution() == 11);
  CHECK(g.step() == doctest::Approx(0.1));
  CHECK(g.axis().size() == 11);
  CHECK_THROWS_AS(SimplexGrid(0, 5), argument_error);
  CHECK_THROWS_AS(SimplexGrid(2, 1), argument_error);
}
