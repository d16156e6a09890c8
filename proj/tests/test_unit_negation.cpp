#include <doctest.h>

#include <cmath>

#include "fnk/unit_automorphism.hpp"
#include "fnk/unit_negation.hpp"

using namespace fnk;

TEST_CASE("standard negation") {
  auto n = UnitNegation::standard();
  CHECK(n.eval(0.0) == 1.0);
  CHECK(n.eval(1.0) == 0.0);
  CHECK(n.eval(0.3) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(check_n1(n).passed());
  CHECK(check_n2(n, 41).passed());
  CHECK(is_strong(n, 41).passed());
  CHECK(is_strict(n, 41).passed());
}

TEST_CASE("root family is involutive with known equilibria") {
  // closed form (1 - x^r)^(1/r) with r = n - k + 1
  auto n31 = UnitNegation::ck(3, 1);
  CHECK(n31.eval(0.5) == doctest::Approx(std::cbrt(0.875)).epsilon(1e-14));
  CHECK(is_strong(n31, 41).passed());

  auto eq = equilibrium(n31);
  REQUIRE(eq.kind == EquilibriumResult::Kind::point);
  CHECK(std::abs(eq.point - std::pow(0.5, 1.0 / 3.0)) <= 1e-9);
  CHECK(eq.residual <= 1e-9);

  for (auto [n, k] : {std::pair<int, int>{2, 1}, {4, 2}, {5, 1}, {5, 4}}) {
    auto neg = UnitNegation::ck(n, k);
    CHECK(is_strong(neg, 21).passed());
    auto e = equilibrium(neg);
    REQUIRE(e.kind == EquilibriumResult::Kind::point);
    CHECK(std::abs(e.point - std::pow(0.5, 1.0 / double(n - k + 1))) <= 1e-9);
  }

  // r = 1 collapses to the standard negation
  CHECK(UnitNegation::ck(3, 3).eval(0.25) == doctest::Approx(0.75).epsilon(1e-15));

  CHECK_THROWS_AS(UnitNegation::ck(0, 1), argument_error);
  CHECK_THROWS_AS(UnitNegation::ck(3, 0), argument_error);
  CHECK_THROWS_AS(UnitNegation::ck(3, 4), argument_error);
}

TEST_CASE("polynomial family is strict but not strong for k >= 2") {
  auto n = UnitNegation::cup_k(2);
  CHECK(n.eval(0.5) == 0.75);
  CHECK(n.eval(n.eval(0.5)) == doctest::Approx(0.4375).epsilon(1e-15));

  auto strong = is_strong(n, 41);
  CHECK(!strong.passed());
  REQUIRE(strong.witness.has_value());
  CHECK(is_strict(n, 41).passed());
  CHECK(check_n1(n).passed());
  CHECK(check_n2(n, 41).passed());

  auto eq = equilibrium(n);
  REQUIRE(eq.kind == EquilibriumResult::Kind::point);
  CHECK(std::abs(eq.point - (std::sqrt(5.0) - 1.0) / 2.0) <= 1e-9);

  // k = 1 is the standard negation
  auto n1 = UnitNegation::cup_k(1);
  for (double x : {0.0, 0.25, 0.7, 1.0})
    CHECK(n1.eval(x) == UnitNegation::standard().eval(x));

  CHECK_THROWS_AS(UnitNegation::cup_k(0), argument_error);
}

TEST_CASE("extreme negations") {
  auto lo = UnitNegation::bottom();
  auto hi = UnitNegation::top();
  CHECK(lo.eval(0.0) == 1.0);
  CHECK(lo.eval(1e-300) == 0.0);
  CHECK(lo.eval(1.0) == 0.0);
  CHECK(hi.eval(1.0) == 0.0);
  CHECK(hi.eval(1.0 - 1e-12) == 1.0);
  CHECK(hi.eval(0.0) == 1.0);

  CHECK(check_n1(lo).passed());
  CHECK(check_n1(hi).passed());
  CHECK(check_n2(lo, 41).passed());
  CHECK(check_n2(hi, 41).passed());
  CHECK(!is_strict(lo, 41).passed());
  CHECK(!is_strict(hi, 41).passed());
  CHECK(!lo.continuous_hint());

  CHECK(equilibrium(lo).kind == EquilibriumResult::Kind::none);
  CHECK(equilibrium(hi).kind == EquilibriumResult::Kind::none);
}

TEST_CASE("piecewise linear negations validate their knots") {
  auto n = UnitNegation::piecewise_linear({{0.0, 1.0}, {0.5, 0.4}, {1.0, 0.0}});
  CHECK(n.eval(0.25) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(n.eval(0.5) == 0.4);
  CHECK(n.eval(0.75) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(check_n2(n, 41).passed());

  CHECK_THROWS_AS(UnitNegation::piecewise_linear({{0.0, 1.0}}), argument_error);
  CHECK_THROWS_AS(UnitNegation::piecewise_linear({{0.1, 1.0}, {1.0, 0.0}}), argument_error);
  CHECK_THROWS_AS(UnitNegation::piecewise_linear({{0.0, 0.9}, {1.0, 0.0}}), argument_error);
  CHECK_THROWS_AS(UnitNegation::piecewise_linear({{0.0, 1.0}, {0.4, 0.2}, {0.6, 0.7}, {1.0, 0.0}}),
                  argument_error);
}

TEST_CASE("unchecked fixtures exist so the checkers can catch them") {
  auto rising = UnitNegation::piecewise_linear_unchecked(
      {{0.0, 1.0}, {0.4, 0.2}, {0.6, 0.7}, {1.0, 0.0}});
  CHECK(check_n1(rising).passed());
  auto n2 = check_n2(rising, 41);
  CHECK(!n2.passed());
  CHECK(n2.witness.has_value());
  CHECK(n2.max_error > 0.0);

  auto wrong_ends = UnitNegation::piecewise_linear_unchecked({{0.0, 0.3}, {1.0, 0.0}});
  CHECK(!check_n1(wrong_ends).passed());
}

TEST_CASE("conjugation by an automorphism") {
  auto n = UnitNegation::conjugate(UnitNegation::standard(), UnitAutomorphism::power(2.0));
  // rho^-1(1 - rho(x)) = sqrt(1 - x^2)
  CHECK(n.eval(0.6) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(is_strong(n, 41).passed());
  CHECK(check_n1(n).passed());

  auto via_auto = UnitNegation::from_automorphism(UnitAutomorphism::power(2.0));
  for (double x : {0.0, 0.2, 0.5, 0.9, 1.0})
    CHECK(via_auto.eval(x) == doctest::Approx(n.eval(x)).epsilon(1e-12));

  auto eq = equilibrium(via_auto);
  REQUIRE(eq.kind == EquilibriumResult::Kind::point);
  CHECK(std::abs(eq.point - 1.0 / std::sqrt(2.0)) <= 1e-9);
}

TEST_CASE("pointwise order between negations") {
  auto lo = UnitNegation::bottom();
  auto hi = UnitNegation::top();
  auto mid = UnitNegation::standard();
  CHECK(neg_leq(lo, mid, 41).passed());
  CHECK(neg_leq(mid, hi, 41).passed());
  CHECK(neg_leq(lo, hi, 41).passed());
  auto bad = neg_leq(mid, lo, 41);
  CHECK(!bad.passed());
  CHECK(bad.witness.has_value());
  // cup_2 dominates the standard negation
  CHECK(neg_leq(mid, UnitNegation::cup_k(2), 41).passed());
}

TEST_CASE("strictness scan flags jumps") {
  auto r = is_strict(UnitNegation::bottom(), 41);
  CHECK(!r.passed());
  auto ok = is_strict(UnitNegation::ck(3, 1), 41);
  CHECK(ok.passed());
  CHECK(ok.note.find("consistent with strict") != std::string::npos);
}

TEST_CASE("equilibrium solver reports jumps as none") {
  auto r = equilibrium(UnitNegation::bottom());
  CHECK(r.kind == EquilibriumResult::Kind::none);
  CHECK(!r.diagnostics.empty());
}
