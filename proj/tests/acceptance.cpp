// Acceptance gate: one line per criterion, nonzero exit when any fails.
// argv[1] is the CLI binary, used by the determinism criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fnk/fuzzy_set.hpp"
#include "fnk/generators.hpp"
#include "fnk/grid.hpp"
#include "fnk/nd_automorphism.hpp"
#include "fnk/nd_negation.hpp"
#include "fnk/verify.hpp"

using namespace fnk;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double dist_pt(const NDInterval& a, const NDInterval& b) {
  double d = 0.0;
  for (int i = 1; i <= a.dim(); ++i) d = std::max(d, std::abs(a.project(i) - b.project(i)));
  return d;
}

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

struct Gate {
  int failures = 0;

  void run(int index, double budget_s, const std::string& what,
           const std::function<std::string()>& body) {
    auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = body();
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    if (ok && dt > budget_s) {
      ok = false;
      detail += " [over budget]";
    }
    if (detail.empty()) detail = what;
    std::printf("criterion %d: %s (%s; %.2fs of %.0fs budget)\n", index,
                ok ? "pass" : "FAIL", detail.c_str(), dt, budget_s);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

struct PhiFixture {
  NDimNegation nd;
  NDimAutomorphism phi;
  double e;
};

PhiFixture phi_fixture(std::uint64_t seed, int n) {
  auto nd = gen_negation(derive_seed(seed, 0), NegationKind::strong, n);
  auto eq = nd_equilibrium(nd);
  if (eq.kind != NDEquilibriumResult::Kind::point || !eq.point || !is_degenerate(*eq.point))
    throw argument_error("phi_fixture: no degenerate equilibrium");
  double e = eq.point->project(1);
  auto psi = UnitAutomorphism::rescaled(gen_unit_automorphism(derive_seed(seed, 1)), e);
  return {nd, NDimAutomorphism::phi_n(NDimAutomorphism::from_unit(psi, n), nd), e};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  Gate gate;

  gate.run(1, 1.0, "closed-form equilibria", [] {
    int checked = 0;
    for (int n = 1; n <= 5; ++n)
      for (int k = 1; k <= n; ++k) {
        auto eq = equilibrium(UnitNegation::ck(n, k));
        double want = std::pow(0.5, 1.0 / double(n - k + 1));
        if (eq.kind != EquilibriumResult::Kind::point || std::abs(eq.point - want) > 1e-9)
          throw std::runtime_error("ck(" + std::to_string(n) + "," + std::to_string(k) +
                                   ") equilibrium off");
        ++checked;
      }
    auto eq = equilibrium(UnitNegation::cup_k(2));
    double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    if (eq.kind != EquilibriumResult::Kind::point || std::abs(eq.point - golden) > 1e-9)
      throw std::runtime_error("cup_k(2) equilibrium off");
    return std::to_string(checked) + " root-family members + golden ratio, all within 1e-9";
  });

  gate.run(2, 30.0, "representability iff", [] {
    int agree = 0, total = 0;
    double worst_recon = 0.0;
    for (int n : {2, 3})
      for (int i = 0; i < 25; ++i) {
        auto rep = gen_negation(derive_seed(42, 1000 + std::uint64_t(100 * n + i)),
                                NegationKind::representable, n);
        auto v = decide_representability(rep, 11, kEps, 1e-7);
        worst_recon = std::max(worst_recon, v.max_reconstruction_error);
        if (!(v.representable && v.subset_monotone && v.reconstructs && v.deciders_agree))
          throw std::runtime_error("seeded representable negation rejected");
        ++agree;
        ++total;

        auto col = gen_negation(derive_seed(42, 2000 + std::uint64_t(100 * n + i)),
                                NegationKind::non_representable, n);
        auto w = decide_representability(col, 11, kEps, 1e-7);
        if (w.representable || w.subset_monotone || !w.deciders_agree || !w.witness)
          throw std::runtime_error("collapse fixture not rejected with witness");
        ++agree;
        ++total;
      }
    for (int n : {2, 3})
      for (auto& nd : {NDimNegation::bottom(n), NDimNegation::top(n)}) {
        auto w = decide_representability(nd, 11, kEps, 1e-7);
        if (w.representable || w.subset_monotone || !w.deciders_agree || !w.witness)
          throw std::runtime_error("extreme negation not rejected with witness");
        ++agree;
        ++total;
      }
    std::ostringstream os;
    os << "agreement " << agree << "/" << total << ", max reconstruction error "
       << worst_recon;
    return os.str();
  });

  gate.run(3, 60.0, "strong pipeline", [] {
    double worst = 0.0;
    for (int n : {2, 3})
      for (int i = 0; i < 25; ++i) {
        auto nd = gen_negation(derive_seed(42, 4000 + std::uint64_t(100 * n + i)),
                               NegationKind::strong, n);
        if (!is_strong_nd(nd, 41, 1e-7).passed())
          throw std::runtime_error("involution residual over 1e-7");
        if (!check_dp(nd, 41, 1e-7).passed())
          throw std::runtime_error("degeneracy preservation failed");
        for (int c = 2; c <= n; ++c)
          for (int k = 0; k <= 80; ++k) {
            double t = k / 80.0;
            double gap = std::abs(induced_eval(nd, c, t) - induced_eval(nd, 1, t));
            worst = std::max(worst, gap);
            if (gap > 1e-7) throw std::runtime_error("induced negations differ");
          }
        SimplexGrid g(n, 41);
        for (long long p = 0; p < g.size(); ++p) {
          const NDInterval& x = g.point(p);
          std::vector<double> want;
          for (int c = 1; c <= n; ++c)
            want.push_back(induced_eval(nd, c, x.project(n - c + 1)));
          double gap = dist_pt(NDInterval(want), nd.eval(x));
          worst = std::max(worst, gap);
          if (gap > 1e-7) throw std::runtime_error("reconstruction gap over 1e-7");
        }
        if (!no_degenerate_image(nd, 11).passed())
          throw std::runtime_error("degenerate image of a non-degenerate point");
      }
    std::ostringstream os;
    os << "50 specimens, worst reconstruction/induced gap " << worst;
    return os.str();
  });

  gate.run(4, 10.0, "lattice duality", [] {
    long long pairs = 0;
    for (int i = 0; i < 10; ++i) {
      auto nd = gen_negation(derive_seed(42, 4500 + std::uint64_t(i)),
                             NegationKind::strong, 2);
      auto r = lattice_duality(nd, 9, 1e-7);
      if (!r.passed()) throw std::runtime_error("duality deviation over 1e-7");
      pairs = r.pairs_tested;
    }
    std::ostringstream os;
    os << "10 strong negations, " << pairs << " pair checks each";
    return os.str();
  });

  gate.run(5, 20.0, "conjugation identities", [] {
    for (int n : {2, 3})
      for (int i = 0; i < 10; ++i) {
        std::uint64_t s = derive_seed(42, 5000 + std::uint64_t(100 * n + i));
        auto negs = induced_negations(
            gen_negation(derive_seed(s, 0), NegationKind::representable, n));
        auto psi = gen_unit_automorphism(derive_seed(s, 1));
        if (!representable_conjugation_identity(negs, psi, 11, 1e-7).passed())
          throw std::runtime_error("componentwise conjugation identity failed");

        auto nd = gen_negation(derive_seed(s, 2), NegationKind::random, n);
        auto phi = NDimAutomorphism::from_unit(gen_unit_automorphism(derive_seed(s, 3)), n);
        auto round = conjugate_ndneg(conjugate_ndneg(nd, phi), phi.inverse());
        SimplexGrid g(n, 11);
        for (long long p = 0; p < g.size(); ++p)
          if (dist_pt(round.eval(g.point(p)), nd.eval(g.point(p))) > 1e-7)
            throw std::runtime_error("double conjugation drifted over 1e-7");
      }

    int strict_done = 0;
    std::vector<NDimNegation> strict_specimens{
        NDimNegation::standard(2),
        NDimNegation::standard(3),
        NDimNegation::representable(UnitNegation::cup_k(2), 2),
        NDimNegation::representable(UnitNegation::ck(3, 1), 2),
        NDimNegation::representable(UnitNegation::ck(4, 2), 3),
        NDimNegation::representable({UnitNegation::cup_k(1), UnitNegation::cup_k(2)})};
    for (int i = 0; i < 4; ++i)
      strict_specimens.push_back(gen_negation(derive_seed(42, 5600 + std::uint64_t(i)),
                                              NegationKind::strong, 2 + i % 2));
    for (const auto& nd : strict_specimens) {
      if (!strict_conjugation_gap(nd, 11, 1e-9).passed())
        throw std::runtime_error("conjugation gap margin under 1e-9");
      ++strict_done;
    }
    return "20 conjugation pairs and " + std::to_string(strict_done) +
           " strict negations with interior margin > 1e-9";
  });

  gate.run(6, 30.0, "negation-preserving completion", [] {
    for (int n : {2, 3})
      for (int i = 0; i < 10; ++i) {
        auto fx = phi_fixture(derive_seed(42, 6000 + std::uint64_t(100 * n + i)), n);
        if (!is_nd_preserving(fx.phi, fx.nd, 21, 1e-7).passed())
          throw std::runtime_error("completion does not commute with the negation");
        if (!is_nd_preserving(fx.phi.inverse(), fx.nd, 21, 1e-7).passed())
          throw std::runtime_error("inverse completion does not commute");

        auto lower = [&](double t) { return fx.phi.eval(diag(t, n)).project(1); };
        auto nu = [&](double t) { return induced_eval(fx.nd, 1, t); };
        SimplexGrid g(n, 21);
        for (long long p = 0; p < g.size(); ++p) {
          const NDInterval& x = g.point(p);
          std::vector<double> want;
          for (int c = 1; c <= n; ++c) {
            double v = x.project(c);
            want.push_back(v <= fx.e ? lower(v) : nu(lower(nu(v))));
          }
          if (dist_pt(sort_to_simplex(want), fx.phi.eval(x)) > 1e-7)
            throw std::runtime_error("lower-diagonal values do not rebuild the map");
        }
      }

    auto psi = UnitAutomorphism::rescaled(UnitAutomorphism::power(2.0), 0.5);
    auto phi = NDimAutomorphism::phi_n(NDimAutomorphism::from_unit(psi, 2),
                                       NDimNegation::standard(2));
    if (dist_pt(phi.eval(NDInterval({0.25, 0.75})), NDInterval({0.125, 0.875})) > 1e-12)
      throw std::runtime_error("hand oracle off");
    return std::string("20 completions commute, invert, and rebuild within 1e-7; "
                       "hand oracle within 1e-12");
  });

  gate.run(7, 10.0, "preserving equivalence", [] {
    int agreements = 0;
    for (int n : {2, 3})
      for (int i = 0; i < 10; ++i) {
        std::uint64_t s = derive_seed(42, 7000 + std::uint64_t(100 * n + i));
        PropertyReport r;
        if (i % 2 == 0) {
          auto neg = UnitNegation::from_automorphism(gen_unit_automorphism(derive_seed(s, 0)));
          auto eq = equilibrium(neg);
          if (eq.kind != EquilibriumResult::Kind::point)
            throw std::runtime_error("strong specimen without equilibrium");
          auto rho =
              UnitAutomorphism::rescaled(gen_unit_automorphism(derive_seed(s, 1)), eq.point);
          auto psi = UnitAutomorphism::rho_n(rho, neg);
          r = preserving_equivalence(psi, std::vector<UnitNegation>(size_t(n), neg), 21);
          if (r.note != "both routes report preserving")
            throw std::runtime_error("constructed preserver not recognized");
        } else {
          auto negs = induced_negations(
              gen_negation(derive_seed(s, 0), NegationKind::representable, n));
          auto psi = gen_unit_automorphism(derive_seed(s, 1));
          r = preserving_equivalence(psi, negs, 21);
        }
        if (!r.passed()) throw std::runtime_error("unit and simplex verdicts disagree");
        ++agreements;
      }
    return "verdict agreement " + std::to_string(agreements) + "/20";
  });

  gate.run(8, 5.0, "core lattice axioms", [] {
    SuiteConfig c;
    auto rep = run_suite("core-lattice", c);
    long long pairs = 0;
    for (const auto& r : rep.reports) {
      if (r.verdict != Verdict::pass)
        throw std::runtime_error(r.property_id + " not an exhaustive pass");
      pairs += r.pairs_tested;
    }
    std::ostringstream os;
    os << rep.reports.size() << " exhaustive checks, " << pairs << " cases, zero violations";
    return os.str();
  });

  gate.run(9, 130.0, "determinism of the full suite", [&cli] {
    if (cli.empty()) throw std::runtime_error("no CLI path given");
    auto tmp = std::filesystem::temp_directory_path();
    auto f1 = (tmp / "fnk_accept_run1.json").string();
    auto f2 = (tmp / "fnk_accept_run2.json").string();
    std::string base = "\"" + cli + "\" theorems --suite all --seed 42 --out ";
    auto t0 = Clock::now();
    if (std::system((base + "\"" + f1 + "\" > /dev/null").c_str()) != 0)
      throw std::runtime_error("first run failed");
    double run1 = seconds_since(t0);
    if (std::system((base + "\"" + f2 + "\" > /dev/null").c_str()) != 0)
      throw std::runtime_error("second run failed");

    std::ifstream a(f1), b(f2);
    auto ja = ordered_json::parse(a);
    auto jb = ordered_json::parse(b);
    std::filesystem::remove(f1);
    std::filesystem::remove(f2);
    if (ja["reports"].size() < 20) throw std::runtime_error("fewer than 20 properties");
    if (redact(ja).dump() != redact(jb).dump())
      throw std::runtime_error("reports differ after redaction");
    if (run1 >= 60.0) throw std::runtime_error("suite run exceeded 60s");
    std::ostringstream os;
    os << ja["reports"].size() << " properties byte-identical across runs, suite in "
       << run1 << "s";
    return os.str();
  });

  if (gate.failures) {
    std::printf("acceptance: %d criterion(s) failed\n", gate.failures);
    return 1;
  }
  std::printf("acceptance: all 9 criteria pass\n");
  return 0;
}
