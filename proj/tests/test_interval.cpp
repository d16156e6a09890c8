#include <doctest.h>

#include <cmath>
#include <limits>

#include "fnk/interval.hpp"

using namespace fnk;

TEST_CASE("construction accepts nondecreasing tuples and rejects the rest") {
  NDInterval x({0.1, 0.4, 0.9});
  CHECK(x.dim() == 3);
  CHECK(x.project(1) == 0.1);
  CHECK(x.project(3) == 0.9);

  CHECK_THROWS_AS(NDInterval({0.5, 0.3}), argument_error);
  CHECK_THROWS_AS(NDInterval({-0.2, 0.5}), argument_error);
  CHECK_THROWS_AS(NDInterval({0.5, 1.2}), argument_error);
  CHECK_THROWS_AS(NDInterval({}), argument_error);
  CHECK_THROWS_AS(NDInterval({std::numeric_limits<double>::quiet_NaN()}), argument_error);
}

TEST_CASE("rounding-level violations are clamped, not rejected") {
  NDInterval hi({0.5, 1.0 + 1e-13});
  CHECK(hi.project(2) == 1.0);
  NDInterval lo({-1e-13, 0.5});
  CHECK(lo.project(1) == 0.0);
  // order inversion below the slack collapses onto the left value
  NDInterval inv({0.5, 0.5 - 1e-13});
  CHECK(inv.project(2) == inv.project(1));
}

TEST_CASE("projection is 1-based and bounds-checked") {
  NDInterval x({0.2, 0.8});
  CHECK_THROWS_AS(x.project(0), argument_error);
  CHECK_THROWS_AS(x.project(3), argument_error);
}

TEST_CASE("degenerate elements") {
  CHECK(is_degenerate(diag(0.3, 4)));
  CHECK(diag(0.3, 4).dim() == 4);
  CHECK(!is_degenerate(NDInterval({0.3, 0.4})));
  CHECK_THROWS_AS(diag(0.5, 0), argument_error);
}

TEST_CASE("componentwise order, join, and meet") {
  NDInterval a({0.1, 0.5});
  NDInterval b({0.2, 0.4});
  CHECK(!leq(a, b));
  CHECK(!leq(b, a));
  CHECK(leq(a, a));
  CHECK(join(a, b) == NDInterval({0.2, 0.5}));
  CHECK(meet(a, b) == NDInterval({0.1, 0.4}));
  CHECK(leq(meet(a, b), a));
  CHECK(leq(a, join(a, b)));
}

TEST_CASE("subset relation fixes the i-th and (i+1)-th projections") {
  NDInterval x({0.3, 0.6});
  NDInterval y({0.2, 0.7});
  CHECK(subset_i(x, y, 1));   // [0.3,0.6] inside [0.2,0.7]
  CHECK(!subset_i(y, x, 1));
  CHECK(subset_i(x, x, 1));
  CHECK_THROWS_AS(subset_i(x, y, 2), argument_error);

  NDInterval u({0.1, 0.4, 0.9});
  NDInterval v({0.1, 0.3, 0.9});
  CHECK(subset_i(u, v, 2));   // [0.4,0.9] sits inside [0.3,0.9]
  CHECK(!subset_i(v, u, 2));
}

TEST_CASE("sorting arbitrary tuples into the simplex") {
  CHECK(sort_to_simplex({0.9, 0.1, 0.5}) == NDInterval({0.1, 0.5, 0.9}));
  CHECK(unpack(NDInterval({0.2, 0.6})) == std::vector<double>{0.2, 0.6});
}

TEST_CASE("parsing and formatting round trip") {
  CHECK(parse_interval("0.1,0.4,0.9") == NDInterval({0.1, 0.4, 0.9}));
  CHECK(parse_interval("/0.3/:3") == diag(0.3, 3));
  CHECK(format_interval(NDInterval({0.1, 0.4, 0.9})) == "0.1,0.4,0.9");
  CHECK(parse_interval(format_interval(NDInterval({0.125, 0.625}))) ==
        NDInterval({0.125, 0.625}));
}

TEST_CASE("parse errors and domain errors stay distinct") {
  CHECK_THROWS_AS(parse_interval("abc"), parse_error);
  CHECK_THROWS_AS(parse_interval(""), parse_error);
  CHECK_THROWS_AS(parse_interval("0.1,oops"), parse_error);
  CHECK_THROWS_AS(parse_interval("/0.3/"), parse_error);
  CHECK_THROWS_AS(parse_interval("/0.3/:0"), parse_error);
  // well-formed text, invalid point
  CHECK_THROWS_AS(parse_interval("0.5,0.2"), argument_error);
  CHECK_THROWS_AS(parse_interval("1.5"), argument_error);
}
