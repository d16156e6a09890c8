#include <doctest.h>

#include <algorithm>
#include <set>

#include "fnk/generators.hpp"
#include "fnk/verify.hpp"

using namespace fnk;

namespace {

ordered_json redact(const ordered_json& j) {
  if (j.is_object()) {
    ordered_json out = ordered_json::object();
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "elapsed_ms") out[it.key()] = redact(it.value());
    return out;
  }
  if (j.is_array()) {
    ordered_json out = ordered_json::array();
    for (const auto& v : j) out.push_back(redact(v));
    return out;
  }
  return j;
}

SuiteConfig tiny() {
  SuiteConfig c;
  c.dims = {2};
  c.m_pair = 7;
  c.m_point = 11;
  c.trials = 3;
  c.seed = 1;
  return c;
}

}  // namespace

TEST_CASE("seeded generators produce valid specimens") {
  for (std::uint64_t i = 0; i < 6; ++i) {
    auto psi = gen_unit_automorphism(derive_seed(0, i));
    CHECK(psi.eval(0.0) == 0.0);
    CHECK(psi.eval(1.0) == 1.0);
    double prev = 0.0;
    for (int k = 1; k <= 40; ++k) {
      double v = psi.eval(k / 40.0);
      CHECK(v > prev);
      prev = v;
    }

    auto neg = gen_unit_negation(derive_seed(1, i));
    CHECK(check_n1(neg).passed());
    CHECK(check_n2(neg, 41).passed());
  }

  for (int n : {2, 3}) {
    auto strong = gen_negation(derive_seed(2, 7), NegationKind::strong, n);
    CHECK(is_strong_nd(strong, 11).passed());

    auto rep = gen_negation(derive_seed(2, 8), NegationKind::representable, n);
    CHECK(is_subset_monotone(rep, 9).passed());

    auto non = gen_negation(derive_seed(2, 9), NegationKind::non_representable, n);
    CHECK(!is_subset_monotone(non, 9).passed());

    auto rnd = gen_negation(derive_seed(2, 10), NegationKind::random, n);
    CHECK(check_n1_nd(rnd).passed());
    CHECK(check_n2_nd(rnd, 9).passed());
  }
}

TEST_CASE("derived seeds decorrelate indices") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 100);
  CHECK(derive_seed(42, 0) == derive_seed(42, 0));
  CHECK(derive_seed(42, 0) != derive_seed(43, 0));
}

TEST_CASE("jump heuristic flags the extremes and clears the smooth cases") {
  CHECK(discontinuity_heuristic(NDimNegation::standard(2), 11).passed());
  CHECK(discontinuity_heuristic(
            NDimNegation::representable(UnitNegation::ck(3, 1), 2), 11)
            .passed());

  auto r = discontinuity_heuristic(NDimNegation::bottom(2), 11);
  CHECK(!r.passed());
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->contains("variation"));
  CHECK(!r.note.empty());

  CHECK(discontinuity_heuristic(
            NDimAutomorphism::from_unit(UnitAutomorphism::power(2), 2), 11)
            .passed());

  // the scan needs the whole simplex; restricted lifts are out of scope
  auto half = NDimAutomorphism::from_unit(
      UnitAutomorphism::rescaled(UnitAutomorphism::power(2), 0.5), 2);
  CHECK_THROWS_AS(discontinuity_heuristic(half, 11), argument_error);
}

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  CHECK(names.size() == 8);
  CHECK(std::find(names.begin(), names.end(), "all") != names.end());
  CHECK(std::find(names.begin(), names.end(), "core-lattice") != names.end());

  CHECK_THROWS_AS(run_suite("nosuch", tiny()), argument_error);
  auto bad = tiny();
  bad.dims = {};
  CHECK_THROWS_AS(run_suite("core-lattice", bad), argument_error);
  bad = tiny();
  bad.m_pair = 1;
  CHECK_THROWS_AS(run_suite("core-lattice", bad), argument_error);
  bad = tiny();
  bad.trials = 0;
  CHECK_THROWS_AS(run_suite("core-lattice", bad), argument_error);
}

TEST_CASE("suite reports are deterministic for a fixed seed") {
  auto a = run_suite("representability", tiny());
  auto b = run_suite("representability", tiny());
  CHECK(redact(a.to_json()) == redact(b.to_json()));

  auto c = tiny();
  c.seed = 2;
  auto shifted = run_suite("representability", c);
  CHECK(redact(a.to_json())["config"] != redact(shifted.to_json())["config"]);
}

TEST_CASE("the full run covers every family and stays sorted") {
  auto rep = run_suite("all", tiny());
  CHECK(rep.suite == "all");
  CHECK(rep.reports.size() >= 20);
  CHECK(rep.all_passed());

  std::set<std::string> ids;
  for (const auto& r : rep.reports) ids.insert(r.property_id);
  CHECK(ids.size() == rep.reports.size());
  CHECK(std::is_sorted(rep.reports.begin(), rep.reports.end(),
                       [](const PropertyReport& x, const PropertyReport& y) {
                         return x.property_id < y.property_id;
                       }));

  for (const char* prefix : {"core-lattice/", "unit-negations/", "representability/",
                             "strong/", "equilibrium/", "automorphism/", "phi-n/"}) {
    bool found = false;
    for (const auto& id : ids) found = found || id.rfind(prefix, 0) == 0;
    CHECK_MESSAGE(found, prefix);
  }

  auto j = rep.to_json();
  CHECK(j["schema"] == "report_v1");
  CHECK(j["config"]["m_pair"] == 7);
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["config"]["dims"] == ordered_json::array({2}));
}
