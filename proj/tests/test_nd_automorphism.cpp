#include <doctest.h>

#include <cmath>

#include "fnk/generators.hpp"
#include "fnk/grid.hpp"
#include "fnk/nd_automorphism.hpp"
#include "fnk/nd_negation.hpp"

using namespace fnk;

namespace {
double dist_pt(const NDInterval& a, const NDInterval& b) {
  double d = 0.0;
  for (int i = 1; i <= a.dim(); ++i) d = std::max(d, std::abs(a.project(i) - b.project(i)));
  return d;
}
}  // namespace

TEST_CASE("componentwise lift evaluates and inverts") {
  auto phi = NDimAutomorphism::from_unit(UnitAutomorphism::power(2), 2);
  CHECK(phi.dim() == 2);
  CHECK(phi.domain_hi() == 1.0);
  CHECK(dist_pt(phi.eval(NDInterval({0.3, 0.6})), NDInterval({0.09, 0.36})) <= 1e-15);
  CHECK(phi.eval(diag(0.0, 2)) == diag(0.0, 2));
  CHECK(phi.eval(diag(1.0, 2)) == diag(1.0, 2));

  auto inv = phi.inverse();
  SimplexGrid g(2, 17);
  for (long long i = 0; i < g.size(); ++i) {
    CHECK(dist_pt(inv.eval(phi.eval(g.point(i))), g.point(i)) <= 1e-9);
    CHECK(dist_pt(phi.eval(inv.eval(g.point(i))), g.point(i)) <= 1e-9);
  }

  CHECK_THROWS_AS(NDimAutomorphism::from_unit(UnitAutomorphism::identity(), 0),
                  argument_error);
  CHECK_THROWS_AS(phi.eval(diag(0.5, 3)), argument_error);
}

TEST_CASE("lifts are order isomorphisms") {
  auto psi = gen_unit_automorphism(derive_seed(5, 0));
  auto phi = NDimAutomorphism::from_unit(psi, 2);
  SimplexGrid g(2, 11);
  for (long long a = 0; a < g.size(); ++a)
    for (long long b = 0; b < g.size(); ++b) {
      bool before = leq(g.point(a), g.point(b));
      bool after = leq(phi.eval(g.point(a)), phi.eval(g.point(b)));
      CHECK(before == after);
    }
}

TEST_CASE("conjugation round trips through the inverse") {
  auto phi = NDimAutomorphism::from_unit(gen_unit_automorphism(derive_seed(9, 1)), 2);
  auto nd = NDimNegation::standard(2);
  auto there = conjugate_ndneg(nd, phi);
  auto back = conjugate_ndneg(there, phi.inverse());
  SimplexGrid g(2, 13);
  for (long long i = 0; i < g.size(); ++i)
    CHECK(dist_pt(back.eval(g.point(i)), nd.eval(g.point(i))) <= kReconTol);
}

TEST_CASE("conjugating a lift componentwise equals lifting the conjugates") {
  std::vector<UnitNegation> negs{UnitNegation::cup_k(1), UnitNegation::cup_k(2)};
  auto psi = gen_unit_automorphism(derive_seed(3, 2));
  CHECK(representable_conjugation_identity(negs, psi, 11).passed());
  CHECK(representable_conjugation_identity({UnitNegation::standard()},
                                           UnitAutomorphism::power(2), 21)
            .passed());
}

TEST_CASE("strong construction and its classical factorization") {
  auto phi = NDimAutomorphism::from_unit(UnitAutomorphism::power(2), 2);
  auto strong = strong_from_automorphism(phi);
  CHECK(is_strong_nd(strong, 21).passed());
  CHECK(dist_pt(strong.eval(diag(0.6, 2)), diag(0.8, 2)) <= 1e-12);

  CHECK(trillas_roundtrip(strong, 21).passed());
  CHECK(trillas_roundtrip(NDimNegation::standard(3), 11).passed());

  // the factorization only exists for strong expressions
  CHECK_THROWS_AS(
      trillas_roundtrip(NDimNegation::representable(UnitNegation::cup_k(2), 2), 11),
      argument_error);
}

TEST_CASE("strict negations sit strictly below their square conjugates inside") {
  CHECK(strict_conjugation_gap(NDimNegation::standard(2), 21).passed());
  CHECK(strict_conjugation_gap(
            NDimNegation::representable(UnitNegation::cup_k(2), 2), 21)
            .passed());
  CHECK_THROWS_AS(strict_conjugation_gap(NDimNegation::bottom(2), 21), argument_error);
}

TEST_CASE("preservation check and its componentwise characterization") {
  auto nd = NDimNegation::standard(2);
  auto bad = NDimAutomorphism::from_unit(UnitAutomorphism::power(2), 2);
  auto r = is_nd_preserving(bad, nd, 21);
  CHECK(!r.passed());
  CHECK(r.witness.has_value());
  CHECK(r.max_error > 0.1);

  // identity trivially preserves anything
  CHECK(is_nd_preserving(NDimAutomorphism::from_unit(UnitAutomorphism::identity(), 2),
                         nd, 21)
            .passed());

  // both routes agree in the preserving and the non-preserving case
  auto neg = UnitNegation::from_automorphism(UnitAutomorphism::power(2));
  auto eq = equilibrium(neg);
  REQUIRE(eq.kind == EquilibriumResult::Kind::point);
  auto rho = UnitAutomorphism::rescaled(gen_unit_automorphism(derive_seed(21, 0)), eq.point);
  auto psi = UnitAutomorphism::rho_n(rho, neg);
  std::vector<UnitNegation> negs{neg, neg};
  auto agree_pos = preserving_equivalence(psi, negs, 21);
  CHECK(agree_pos.passed());
  CHECK(agree_pos.note == "both routes report preserving");

  auto agree_neg = preserving_equivalence(UnitAutomorphism::power(2),
                                          {UnitNegation::standard(), UnitNegation::standard()},
                                          21);
  CHECK(agree_neg.passed());
  CHECK(agree_neg.note == "both routes report not preserving");
}

TEST_CASE("restricted lift completes to a negation-preserving automorphism") {
  auto psi_e = UnitAutomorphism::rescaled(UnitAutomorphism::power(2), 0.5);
  auto restricted = NDimAutomorphism::from_unit(psi_e, 2);
  auto nd = NDimNegation::standard(2);
  auto phi = NDimAutomorphism::phi_n(restricted, nd);
  CHECK(phi.dim() == 2);
  CHECK(phi.domain_hi() == 1.0);

  // below the equilibrium: the restricted map itself, 2x^2 on [0, 0.5]
  CHECK(dist_pt(phi.eval(NDInterval({0.25, 0.5})), NDInterval({0.125, 0.5})) <= 1e-12);
  // above: reflected through the negation
  CHECK(dist_pt(phi.eval(diag(0.75, 2)), diag(0.875, 2)) <= 1e-12);
  // straddling: one component from each branch
  CHECK(dist_pt(phi.eval(NDInterval({0.25, 0.75})), NDInterval({0.125, 0.875})) <= 1e-12);
  CHECK(dist_pt(phi.eval(NDInterval({0.5, 0.75})), NDInterval({0.5, 0.875})) <= 1e-12);
  // fixed points
  CHECK(dist_pt(phi.eval(diag(0.5, 2)), diag(0.5, 2)) <= 1e-15);
  CHECK(dist_pt(phi.eval(NDInterval({0.0, 1.0})), NDInterval({0.0, 1.0})) <= 1e-15);

  CHECK(is_nd_preserving(phi, nd, 21).passed());
  auto inv = phi.inverse();
  CHECK(is_nd_preserving(inv, nd, 21).passed());
  SimplexGrid g(2, 15);
  for (long long i = 0; i < g.size(); ++i)
    CHECK(dist_pt(inv.eval(phi.eval(g.point(i))), g.point(i)) <= 1e-9);
}

TEST_CASE("the completion rejects mismatched inputs") {
  auto nd = NDimNegation::standard(2);
  auto off = NDimAutomorphism::from_unit(
      UnitAutomorphism::rescaled(UnitAutomorphism::power(2), 0.4), 2);
  CHECK_THROWS_AS(NDimAutomorphism::phi_n(off, nd), argument_error);

  auto full = NDimAutomorphism::from_unit(UnitAutomorphism::power(2), 2);
  CHECK_THROWS_AS(NDimAutomorphism::phi_n(full, nd), argument_error);

  auto not_strong = NDimNegation::representable(UnitNegation::cup_k(2), 2);
  auto half = NDimAutomorphism::from_unit(
      UnitAutomorphism::rescaled(UnitAutomorphism::power(2), 0.5), 2);
  CHECK_THROWS_AS(NDimAutomorphism::phi_n(half, not_strong), argument_error);

  auto completed = NDimAutomorphism::phi_n(half, nd);
  CHECK_THROWS_AS(NDimAutomorphism::phi_n(completed, nd), argument_error);
  CHECK_THROWS_AS(
      NDimAutomorphism::phi_n(
          NDimAutomorphism::from_unit(
              UnitAutomorphism::rescaled(UnitAutomorphism::power(2), 0.5), 3),
          nd),
      argument_error);
}
