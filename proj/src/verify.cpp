#include "fnk/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fnk/generators.hpp"
#include "fnk/grid.hpp"
#include "fnk/unit_automorphism.hpp"
#include "fnk/unit_negation.hpp"
#include "util.hpp"

namespace fnk {

namespace {

double dist_inf(const NDInterval& a, const NDInterval& b) {
  double d = 0.0;
  for (int i = 1; i <= a.dim(); ++i) d = std::max(d, std::abs(a.project(i) - b.project(i)));
  return d;
}

ordered_json as_json(const NDInterval& x) { return ordered_json(x.values()); }

// Accumulates many specimen-level reports (or raw expectations) into a
// single property report; the first failure becomes the witness.
struct Agg {
  PropertyReport r;

  explicit Agg(std::string id, int grid_n = 0, int grid_m = 0) {
    r.property_id = std::move(id);
    r.grid_n = grid_n;
    r.grid_m = grid_m;
  }

  void add(const PropertyReport& p, ordered_json specimen) {
    r.pairs_tested += p.pairs_tested;
    r.max_error = std::max(r.max_error, p.max_error);
    if (p.verdict == Verdict::sampled_pass && r.verdict == Verdict::pass)
      r.verdict = Verdict::sampled_pass;
    if (!p.passed()) {
      if (!r.witness) {
        ordered_json w;
        w["specimen"] = std::move(specimen);
        if (p.witness) w["witness"] = *p.witness;
        if (!p.note.empty()) w["note"] = p.note;
        r.witness = std::move(w);
      }
      r.verdict = Verdict::fail;
    }
  }

  void expect(bool ok, ordered_json info) {
    ++r.pairs_tested;
    if (!ok) {
      if (!r.witness) r.witness = std::move(info);
      r.verdict = Verdict::fail;
    }
  }

  void observe_error(double e) { r.max_error = std::max(r.max_error, e); }

  PropertyReport done(detail::StopWatch& sw) {
    r.elapsed_ms = sw.ms();
    return r;
  }
};

using Task = std::pair<std::string, std::function<PropertyReport()>>;

int worker_count(std::size_t tasks) {
  long cap = 0;
  if (const char* env = std::getenv("FNK_THREADS")) cap = std::strtol(env, nullptr, 10);
  if (cap <= 0) {
    unsigned hc = std::thread::hardware_concurrency();
    cap = hc == 0 ? 1 : static_cast<long>(hc);
  }
  cap = std::min<long>(cap, 64);
  cap = std::min<long>(cap, static_cast<long>(tasks));
  return static_cast<int>(std::max<long>(cap, 1));
}

PropertyReport run_guarded(const Task& t) {
  try {
    return t.second();
  } catch (const std::exception& e) {
    PropertyReport r;
    r.property_id = t.first;
    r.verdict = Verdict::fail;
    r.note = std::string("unexpected exception: ") + e.what();
    return r;
  }
}

// Runs tasks on up to FNK_THREADS workers. Each task is pure, results land
// in fixed slots, and the final report list is sorted by id, so the worker
// count cannot change the output.
std::vector<PropertyReport> run_tasks(const std::vector<Task>& tasks) {
  std::vector<PropertyReport> out(tasks.size());
  int workers = worker_count(tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = run_guarded(tasks[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        out[i] = run_guarded(tasks[i]);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

// ---------------------------------------------------------------- suites

void add_core_lattice(const SuiteConfig& c, std::vector<Task>& out) {
  (void)c;
  // Exhaustive scans at desk scale; triple loops cap the resolution.
  const std::vector<std::pair<int, int>> cases{{2, 5}, {3, 4}};
  for (auto [n, m] : cases) {
    std::string tag = "-n" + std::to_string(n);

    std::string id1 = "core-lattice/01-order-axioms" + tag;
    out.emplace_back(id1, [id1, n = n, m = m] {
      detail::StopWatch sw;
      Agg agg(id1, n, m);
      SimplexGrid g(n, m);
      const auto& pts = g.points();
      for (std::size_t a = 0; a < pts.size(); ++a) {
        agg.expect(leq(pts[a], pts[a]), ordered_json{{"x", as_json(pts[a])}});
        for (std::size_t b = 0; b < pts.size(); ++b) {
          bool ab = leq(pts[a], pts[b]);
          bool ba = leq(pts[b], pts[a]);
          if (ab && ba)
            agg.expect(pts[a] == pts[b],
                       ordered_json{{"x", as_json(pts[a])}, {"y", as_json(pts[b])}});
          if (!ab) continue;
          for (std::size_t cc = 0; cc < pts.size(); ++cc) {
            if (leq(pts[b], pts[cc]))
              agg.expect(leq(pts[a], pts[cc]),
                         ordered_json{{"x", as_json(pts[a])},
                                      {"y", as_json(pts[b])},
                                      {"z", as_json(pts[cc])}});
          }
        }
      }
      agg.r.note = "reflexive, antisymmetric, transitive; exhaustive";
      return agg.done(sw);
    });

    std::string id2 = "core-lattice/02-bound-universality" + tag;
    out.emplace_back(id2, [id2, n = n, m = m] {
      detail::StopWatch sw;
      Agg agg(id2, n, m);
      SimplexGrid g(n, m);
      const auto& pts = g.points();
      for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a; b < pts.size(); ++b) {
          NDInterval j = join(pts[a], pts[b]);
          NDInterval w = meet(pts[a], pts[b]);
          agg.expect(leq(pts[a], j) && leq(pts[b], j) && leq(w, pts[a]) && leq(w, pts[b]),
                     ordered_json{{"x", as_json(pts[a])}, {"y", as_json(pts[b])}});
          for (std::size_t z = 0; z < pts.size(); ++z) {
            if (leq(pts[a], pts[z]) && leq(pts[b], pts[z]))
              agg.expect(leq(j, pts[z]), ordered_json{{"x", as_json(pts[a])},
                                                      {"y", as_json(pts[b])},
                                                      {"z", as_json(pts[z])}});
            if (leq(pts[z], pts[a]) && leq(pts[z], pts[b]))
              agg.expect(leq(pts[z], w), ordered_json{{"x", as_json(pts[a])},
                                                      {"y", as_json(pts[b])},
                                                      {"z", as_json(pts[z])}});
          }
        }
      }
      agg.r.note = "join is the least upper bound, meet the greatest lower bound";
      return agg.done(sw);
    });

    std::string id3 = "core-lattice/03-degenerate-dichotomy" + tag;
    out.emplace_back(id3, [id3, n = n, m = m] {
      detail::StopWatch sw;
      Agg agg(id3, n, m);
      SimplexGrid g(n, m);
      const auto& pts = g.points();
      for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a; b < pts.size(); ++b) {
          NDInterval j = join(pts[a], pts[b]);
          NDInterval w = meet(pts[a], pts[b]);
          if (is_degenerate(j))
            agg.expect(j == pts[a] || j == pts[b],
                       ordered_json{{"x", as_json(pts[a])}, {"y", as_json(pts[b])}});
          if (is_degenerate(w))
            agg.expect(w == pts[a] || w == pts[b],
                       ordered_json{{"x", as_json(pts[a])}, {"y", as_json(pts[b])}});
        }
      }
      agg.r.note = "a degenerate join or meet already equals one argument";
      return agg.done(sw);
    });
  }
}

struct UnitSpecimen {
  std::string name;
  UnitNegation n;
  // -1 unknown, 0 expected fail, 1 expected pass
  int strong = -1;
  int strict = -1;
};

std::vector<UnitSpecimen> unit_basket(const SuiteConfig& c) {
  std::vector<UnitSpecimen> v;
  v.push_back({"standard", UnitNegation::standard(), 1, 1});
  v.push_back({"ck(2,1)", UnitNegation::ck(2, 1), 1, 1});
  v.push_back({"ck(3,1)", UnitNegation::ck(3, 1), 1, 1});
  v.push_back({"ck(4,2)", UnitNegation::ck(4, 2), 1, 1});
  v.push_back({"ck(5,2)", UnitNegation::ck(5, 2), 1, 1});
  v.push_back({"cup_k(2)", UnitNegation::cup_k(2), 0, 1});
  v.push_back({"cup_k(3)", UnitNegation::cup_k(3), 0, 1});
  v.push_back({"bottom", UnitNegation::bottom(), 0, 0});
  v.push_back({"top", UnitNegation::top(), 0, 0});
  v.push_back({"conjugate(standard,power(2))",
               UnitNegation::conjugate(UnitNegation::standard(), UnitAutomorphism::power(2.0)),
               1, 1});
  int pwl = std::max(3, c.trials / 10);
  for (int i = 0; i < pwl; ++i) {
    std::uint64_t s = derive_seed(c.seed, 100 + static_cast<std::uint64_t>(i));
    v.push_back({"pwl(seed=" + std::to_string(s) + ")", gen_unit_negation(s), -1, 1});
    std::uint64_t t = derive_seed(c.seed, 200 + static_cast<std::uint64_t>(i));
    v.push_back({"from_automorphism(seed=" + std::to_string(t) + ")",
                 UnitNegation::from_automorphism(gen_unit_automorphism(t)), 1, 1});
  }
  return v;
}

void add_unit_negations(const SuiteConfig& c, std::vector<Task>& out) {
  out.emplace_back("unit-negations/01-boundary", [c] {
    detail::StopWatch sw;
    Agg agg("unit-negations/01-boundary", 1, 2);
    for (const auto& s : unit_basket(c)) agg.add(check_n1(s.n), s.name);
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("unit-negations/02-antitone", [c] {
    detail::StopWatch sw;
    Agg agg("unit-negations/02-antitone", 1, c.m_point);
    for (const auto& s : unit_basket(c)) agg.add(check_n2(s.n, c.m_point, c.eps), s.name);
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("unit-negations/03-involution-family", [c] {
    detail::StopWatch sw;
    Agg agg("unit-negations/03-involution-family", 1, c.m_point);
    for (const auto& s : unit_basket(c)) {
      if (s.strong < 0) continue;
      PropertyReport p = is_strong(s.n, c.m_point, c.eps);
      agg.r.pairs_tested += p.pairs_tested;
      agg.expect(p.passed() == (s.strong == 1),
                 ordered_json{{"specimen", s.name}, {"verdict", to_string(p.verdict)}});
      if (s.strong == 1) agg.observe_error(p.max_error);
    }
    agg.r.seed = c.seed;
    agg.r.note = "involutive families pass, the k >= 2 polynomial family and the extremes fail";
    return agg.done(sw);
  });

  out.emplace_back("unit-negations/04-strict-family", [c] {
    detail::StopWatch sw;
    Agg agg("unit-negations/04-strict-family", 1, c.m_point);
    for (const auto& s : unit_basket(c)) {
      if (s.strict < 0) continue;
      PropertyReport p = is_strict(s.n, c.m_point, c.eps);
      agg.r.pairs_tested += p.pairs_tested;
      agg.expect(p.passed() == (s.strict == 1),
                 ordered_json{{"specimen", s.name}, {"verdict", to_string(p.verdict)}});
    }
    agg.r.seed = c.seed;
    agg.r.note = "continuous strictly decreasing families pass, the extremes fail";
    return agg.done(sw);
  });

  out.emplace_back("unit-negations/05-order-bounds", [c] {
    detail::StopWatch sw;
    Agg agg("unit-negations/05-order-bounds", 1, c.m_point);
    UnitNegation lo = UnitNegation::bottom();
    UnitNegation hi = UnitNegation::top();
    for (const auto& s : unit_basket(c)) {
      agg.add(neg_leq(lo, s.n, c.m_point, c.eps), s.name + " above bottom");
      agg.add(neg_leq(s.n, hi, c.m_point, c.eps), s.name + " below top");
    }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });
}

ordered_json specimen_info(std::uint64_t seed, int n, const char* kind) {
  return ordered_json{{"seed", seed}, {"n", n}, {"kind", kind}};
}

void add_representability(const SuiteConfig& c, std::vector<Task>& out) {
  out.emplace_back("representability/01-representable-iff", [c] {
    detail::StopWatch sw;
    Agg agg("representability/01-representable-iff", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        std::uint64_t s = derive_seed(c.seed, 1000 + static_cast<std::uint64_t>(100 * n + i));
        auto nd = gen_negation(s, NegationKind::representable, n);
        auto v = decide_representability(nd, c.m_pair, c.eps, c.recon_tol);
        agg.observe_error(v.max_reconstruction_error);
        agg.expect(v.representable && v.deciders_agree,
                   ordered_json{{"specimen", specimen_info(s, n, "representable")},
                                {"subset_monotone", v.subset_monotone},
                                {"reconstructs", v.reconstructs}});
        agg.r.pairs_tested += 1;
      }
    agg.r.seed = c.seed;
    agg.r.note = "componentwise lifts are containment-monotone and rebuild from their induced negations";
    return agg.done(sw);
  });

  out.emplace_back("representability/02-collapse-rejected", [c] {
    detail::StopWatch sw;
    Agg agg("representability/02-collapse-rejected", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        std::uint64_t s = derive_seed(c.seed, 2000 + static_cast<std::uint64_t>(100 * n + i));
        auto nd = gen_negation(s, NegationKind::non_representable, n);
        auto v = decide_representability(nd, c.m_pair, c.eps, c.recon_tol);
        agg.expect(!v.representable && v.deciders_agree && v.witness.has_value(),
                   ordered_json{{"specimen", specimen_info(s, n, "non_representable")},
                                {"subset_monotone", v.subset_monotone},
                                {"reconstructs", v.reconstructs}});
      }
    agg.r.seed = c.seed;
    agg.r.note = "diagonal collapses fail with an explicit containment witness";
    return agg.done(sw);
  });

  out.emplace_back("representability/03-extremes-rejected", [c] {
    detail::StopWatch sw;
    Agg agg("representability/03-extremes-rejected", 0, c.m_pair);
    for (int n : c.dims) {
      if (n < 2) continue;
      for (const char* kind : {"bottom", "top"}) {
        auto nd = kind[0] == 'b' ? NDimNegation::bottom(n) : NDimNegation::top(n);
        auto v = decide_representability(nd, c.m_pair, c.eps, c.recon_tol);
        agg.expect(!v.representable && v.deciders_agree && v.witness.has_value(),
                   ordered_json{{"specimen", ordered_json{{"kind", kind}, {"n", n}}},
                                {"subset_monotone", v.subset_monotone},
                                {"reconstructs", v.reconstructs}});
      }
    }
    agg.r.note = "the extreme negations are not componentwise lifts";
    return agg.done(sw);
  });

  out.emplace_back("representability/04-monotone-by-part", [c] {
    detail::StopWatch sw;
    Agg agg("representability/04-monotone-by-part", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        std::uint64_t s = derive_seed(c.seed, 1000 + static_cast<std::uint64_t>(100 * n + i));
        auto nd = gen_negation(s, NegationKind::representable, n);
        agg.add(is_monotone_by_part(nd, c.m_pair, c.eps), specimen_info(s, n, "representable"));
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("representability/05-induced-are-negations", [c] {
    detail::StopWatch sw;
    Agg agg("representability/05-induced-are-negations", 0, c.m_point);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        std::uint64_t s = derive_seed(c.seed, 1000 + static_cast<std::uint64_t>(100 * n + i));
        auto nd = gen_negation(s, NegationKind::representable, n);
        auto negs = induced_negations(nd, c.m_point);
        for (std::size_t k = 0; k < negs.size(); ++k) {
          ordered_json info = specimen_info(s, n, "representable");
          info["component"] = k + 1;
          agg.add(check_n1(negs[k]), info);
          agg.add(check_n2(negs[k], c.m_point, c.eps), info);
        }
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("representability/06-equal-lift", [c] {
    detail::StopWatch sw;
    Agg agg("representability/06-equal-lift", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        std::uint64_t s = derive_seed(c.seed, 3000 + static_cast<std::uint64_t>(100 * n + i));
        auto nd = gen_negation(s, NegationKind::random, n);
        auto v = decide_representability(nd, c.m_pair, c.eps, c.recon_tol);
        agg.observe_error(v.max_reconstruction_error);
        agg.expect(v.representable && v.deciders_agree, specimen_info(s, n, "random"));
      }
    agg.r.seed = c.seed;
    agg.r.note = "a lift with equal components is trivially representable";
    return agg.done(sw);
  });
}

void add_strong(const SuiteConfig& c, std::vector<Task>& out) {
  auto strong_at = [c](int n, int i) {
    std::uint64_t s = derive_seed(c.seed, 4000 + static_cast<std::uint64_t>(100 * n + i));
    return std::make_pair(s, gen_negation(s, NegationKind::strong, n));
  };

  out.emplace_back("strong/01-involution", [c, strong_at] {
    detail::StopWatch sw;
    Agg agg("strong/01-involution", 0, c.m_point);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        auto [s, nd] = strong_at(n, i);
        agg.add(is_strong_nd(nd, c.m_point, c.recon_tol), specimen_info(s, n, "strong"));
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("strong/02-degenerate-preservation", [c, strong_at] {
    detail::StopWatch sw;
    Agg agg("strong/02-degenerate-preservation", 0, c.m_point);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        auto [s, nd] = strong_at(n, i);
        agg.add(check_dp(nd, c.m_point, c.recon_tol), specimen_info(s, n, "strong"));
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("strong/03-induced-coincide", [c, strong_at] {
    detail::StopWatch sw;
    Agg agg("strong/03-induced-coincide", 0, c.m_point);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        auto [s, nd] = strong_at(n, i);
        auto negs = induced_negations(nd, c.m_point);
        auto fine = axis_grid(2 * c.m_point - 1);
        for (std::size_t k = 1; k < negs.size(); ++k)
          for (double t : fine) {
            double d = std::abs(negs[k].eval(t) - negs[0].eval(t));
            agg.observe_error(d);
            agg.expect(d <= c.recon_tol,
                       ordered_json{{"specimen", specimen_info(s, n, "strong")},
                                    {"component", k + 1},
                                    {"t", t},
                                    {"gap", d}});
          }
      }
    agg.r.seed = c.seed;
    agg.r.note = "a strong negation induces one unit negation, repeated n times";
    return agg.done(sw);
  });

  out.emplace_back("strong/04-reconstruction", [c, strong_at] {
    detail::StopWatch sw;
    Agg agg("strong/04-reconstruction", 0, c.m_point);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        auto [s, nd] = strong_at(n, i);
        auto rebuilt = NDimNegation::representable(induced_negations(nd, c.m_point));
        SimplexGrid g(n, c.m_point);
        double worst = 0.0;
        for (const auto& x : g.points()) worst = std::max(worst, dist_inf(nd.eval(x), rebuilt.eval(x)));
        agg.observe_error(worst);
        agg.expect(worst <= c.recon_tol,
                   ordered_json{{"specimen", specimen_info(s, n, "strong")}, {"max_gap", worst}});
        agg.r.pairs_tested += static_cast<long long>(g.size());
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("strong/05-strict-consistency", [c, strong_at] {
    detail::StopWatch sw;
    Agg agg("strong/05-strict-consistency", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        auto [s, nd] = strong_at(n, i);
        agg.add(is_strict_nd(nd, c.m_pair, c.eps), specimen_info(s, n, "strong"));
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("strong/06-no-degenerate-image", [c, strong_at] {
    detail::StopWatch sw;
    Agg agg("strong/06-no-degenerate-image", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        auto [s, nd] = strong_at(n, i);
        agg.add(no_degenerate_image(nd, c.m_pair, c.eps), specimen_info(s, n, "strong"));
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });
}

void add_equilibrium(const SuiteConfig& c, std::vector<Task>& out) {
  out.emplace_back("equilibrium/01-closed-forms", [c] {
    detail::StopWatch sw;
    Agg agg("equilibrium/01-closed-forms", 1, 0);
    auto probe = [&](const UnitNegation& n, const std::string& name, double oracle) {
      EquilibriumResult r = equilibrium(n, c.solver_tol);
      double gap = std::abs(r.point - oracle);
      agg.observe_error(gap);
      agg.expect(r.kind == EquilibriumResult::Kind::point && gap <= 1e-9,
                 ordered_json{{"specimen", name}, {"point", r.point}, {"oracle", oracle}});
    };
    probe(UnitNegation::standard(), "standard", 0.5);
    for (auto [n, k] : {std::pair<int, int>{2, 1}, {3, 1}, {3, 2}, {4, 2}, {5, 1}, {5, 4}})
      probe(UnitNegation::ck(n, k), "ck(" + std::to_string(n) + "," + std::to_string(k) + ")",
            std::pow(0.5, 1.0 / double(n - k + 1)));
    probe(UnitNegation::cup_k(2), "cup_k(2)", (std::sqrt(5.0) - 1.0) / 2.0);
    return agg.done(sw);
  });

  out.emplace_back("equilibrium/02-strong-diagonal", [c] {
    detail::StopWatch sw;
    Agg agg("equilibrium/02-strong-diagonal", 0, 0);
    for (int n : c.dims)
      for (int i = 0; i < c.trials; ++i) {
        std::uint64_t s = derive_seed(c.seed, 4000 + static_cast<std::uint64_t>(100 * n + i));
        auto nd = gen_negation(s, NegationKind::strong, n);
        auto r = nd_equilibrium(nd, c.solver_tol);
        agg.observe_error(r.residual);
        agg.expect(r.kind == NDEquilibriumResult::Kind::point && r.point && is_degenerate(*r.point),
                   ordered_json{{"specimen", specimen_info(s, n, "strong")},
                                {"residual", r.residual},
                                {"diagnostics", r.diagnostics}});
      }
    agg.r.seed = c.seed;
    agg.r.note = "every strong specimen fixes one degenerate point";
    return agg.done(sw);
  });

  out.emplace_back("equilibrium/03-lifted-oracle", [c] {
    detail::StopWatch sw;
    Agg agg("equilibrium/03-lifted-oracle", 0, 0);
    auto probe = [&](const NDimNegation& nd, const std::string& name, double oracle) {
      auto r = nd_equilibrium(nd, c.solver_tol);
      bool ok = r.kind == NDEquilibriumResult::Kind::point && r.point && is_degenerate(*r.point);
      double gap = ok ? std::abs(r.point->project(1) - oracle) : 1.0;
      agg.observe_error(ok ? gap : 0.0);
      agg.expect(ok && gap <= 1e-9,
                 ordered_json{{"specimen", name}, {"oracle", oracle}});
    };
    probe(NDimNegation::standard(2), "standard n=2", 0.5);
    probe(NDimNegation::representable(UnitNegation::ck(3, 1), 3), "lift of ck(3,1), n=3",
          std::pow(0.5, 1.0 / 3.0));
    probe(NDimNegation::collapse(UnitNegation::standard(), 2), "collapse of standard, n=2", 0.5);
    return agg.done(sw);
  });

  out.emplace_back("equilibrium/04-extremes-none", [c] {
    detail::StopWatch sw;
    Agg agg("equilibrium/04-extremes-none", 0, 0);
    for (int n : c.dims) {
      agg.expect(nd_equilibrium(NDimNegation::bottom(n), c.solver_tol).kind ==
                     NDEquilibriumResult::Kind::none,
                 ordered_json{{"specimen", "bottom n=" + std::to_string(n)}});
      agg.expect(nd_equilibrium(NDimNegation::top(n), c.solver_tol).kind ==
                     NDEquilibriumResult::Kind::none,
                 ordered_json{{"specimen", "top n=" + std::to_string(n)}});
    }
    agg.expect(equilibrium(UnitNegation::bottom(), c.solver_tol).kind ==
                   EquilibriumResult::Kind::none,
               ordered_json{{"specimen", "unit bottom"}});
    agg.expect(equilibrium(UnitNegation::top(), c.solver_tol).kind == EquilibriumResult::Kind::none,
               ordered_json{{"specimen", "unit top"}});
    agg.r.note = "negations with a jump across the diagonal have no fixed point";
    return agg.done(sw);
  });

  out.emplace_back("equilibrium/05-distinct-components", [c] {
    detail::StopWatch sw;
    Agg agg("equilibrium/05-distinct-components", 2, 0);
    auto nd = NDimNegation::representable({UnitNegation::cup_k(1), UnitNegation::cup_k(2)});
    auto r = nd_equilibrium(nd, c.solver_tol);
    agg.observe_error(r.residual);
    agg.expect(r.kind == NDEquilibriumResult::Kind::undetermined && !r.diagnostics.empty(),
               ordered_json{{"residual", r.residual}, {"diagnostics", r.diagnostics}});
    agg.r.note =
        "with distinct components neither the diagonal candidate nor the tuple of "
        "componentwise fixed points survives the residual check";
    return agg.done(sw);
  });
}

void add_automorphism(const SuiteConfig& c, std::vector<Task>& out) {
  const int pairs = std::max(2, c.trials / 5);
  const int few = std::max(1, c.trials / 10);

  out.emplace_back("automorphism/01-representable-conjugation", [c, pairs] {
    detail::StopWatch sw;
    Agg agg("automorphism/01-representable-conjugation", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < pairs; ++i) {
        std::uint64_t s = derive_seed(c.seed, 5000 + static_cast<std::uint64_t>(100 * n + i));
        auto nd = gen_negation(derive_seed(s, 0), NegationKind::representable, n);
        auto negs = induced_negations(nd);
        auto psi = gen_unit_automorphism(derive_seed(s, 1));
        agg.add(representable_conjugation_identity(negs, psi, c.m_pair, c.eps),
                specimen_info(s, n, "representable + automorphism"));
      }
    agg.r.seed = c.seed;
    agg.r.note = "conjugating a lift equals lifting the componentwise conjugates";
    return agg.done(sw);
  });

  out.emplace_back("automorphism/02-double-conjugation", [c, pairs] {
    detail::StopWatch sw;
    Agg agg("automorphism/02-double-conjugation", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < pairs; ++i) {
        std::uint64_t s = derive_seed(c.seed, 5100 + static_cast<std::uint64_t>(100 * n + i));
        auto kind = i % 2 == 0 ? NegationKind::representable : NegationKind::strong;
        auto nd = gen_negation(derive_seed(s, 0), kind, n);
        auto phi = NDimAutomorphism::from_unit(gen_unit_automorphism(derive_seed(s, 1)), n);
        auto back = conjugate_ndneg(conjugate_ndneg(nd, phi), phi.inverse());
        SimplexGrid g(n, c.m_pair);
        double worst = 0.0;
        for (const auto& x : g.points()) worst = std::max(worst, dist_inf(nd.eval(x), back.eval(x)));
        agg.observe_error(worst);
        agg.expect(worst <= c.recon_tol,
                   ordered_json{{"specimen", specimen_info(s, n, "conjugate round trip")},
                                {"max_gap", worst}});
        agg.r.pairs_tested += static_cast<long long>(g.size());
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("automorphism/03-strict-gap", [c, few] {
    detail::StopWatch sw;
    Agg agg("automorphism/03-strict-gap", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < few; ++i) {
        std::uint64_t s = derive_seed(c.seed, 5200 + static_cast<std::uint64_t>(100 * n + i));
        auto kind = i % 2 == 0 ? NegationKind::random : NegationKind::strong;
        auto nd = gen_negation(s, kind, n);
        agg.add(strict_conjugation_gap(nd, c.m_pair, c.eps), specimen_info(s, n, "strict"));
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("automorphism/04-order-isomorphism", [c, pairs] {
    detail::StopWatch sw;
    Agg agg("automorphism/04-order-isomorphism", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < pairs; ++i) {
        std::uint64_t s = derive_seed(c.seed, 5300 + static_cast<std::uint64_t>(100 * n + i));
        auto phi = NDimAutomorphism::from_unit(gen_unit_automorphism(s), n);
        SimplexGrid g(n, c.m_pair);
        std::vector<NDInterval> img;
        img.reserve(static_cast<std::size_t>(g.size()));
        for (const auto& x : g.points()) img.push_back(phi.eval(x));
        for (std::size_t a = 0; a < img.size(); ++a)
          for (std::size_t b = 0; b < img.size(); ++b) {
            bool ok = leq(g.point(static_cast<long long>(a)), g.point(static_cast<long long>(b))) ==
                      leq(img[a], img[b]);
            if (ok)
              ++agg.r.pairs_tested;
            else
              agg.expect(false, ordered_json{{"specimen", specimen_info(s, n, "lift")},
                                             {"x", as_json(g.point(static_cast<long long>(a)))},
                                             {"y", as_json(g.point(static_cast<long long>(b)))}});
          }
      }
    agg.r.seed = c.seed;
    agg.r.note = "x <= y exactly when phi(x) <= phi(y)";
    return agg.done(sw);
  });

  out.emplace_back("automorphism/05-rho-n-preserving", [c, few] {
    detail::StopWatch sw;
    Agg agg("automorphism/05-rho-n-preserving", 1, c.m_point);
    for (int i = 0; i < 2 * few; ++i) {
      std::uint64_t s = derive_seed(c.seed, 5400 + static_cast<std::uint64_t>(i));
      auto neg = UnitNegation::from_automorphism(gen_unit_automorphism(derive_seed(s, 0)));
      auto eq = equilibrium(neg, c.solver_tol);
      if (eq.kind != EquilibriumResult::Kind::point) {
        agg.expect(false, ordered_json{{"specimen", s}, {"note", "no unit equilibrium"}});
        continue;
      }
      auto rho = UnitAutomorphism::rescaled(gen_unit_automorphism(derive_seed(s, 1)), eq.point);
      auto rho_ext = UnitAutomorphism::rho_n(rho, neg);
      agg.add(is_n_preserving(rho_ext, neg, c.m_point, c.eps),
              ordered_json{{"seed", s}, {"e", eq.point}});
    }
    agg.r.seed = c.seed;
    agg.r.note = "the two-branch extension commutes with the negation it was built from";
    return agg.done(sw);
  });

  out.emplace_back("automorphism/06-trillas", [c, few] {
    detail::StopWatch sw;
    Agg agg("automorphism/06-trillas", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < few; ++i) {
        std::uint64_t s = derive_seed(c.seed, 5500 + static_cast<std::uint64_t>(100 * n + i));
        auto nd = gen_negation(s, NegationKind::strong, n);
        agg.add(trillas_roundtrip(nd, c.m_pair, c.recon_tol), specimen_info(s, n, "strong"));
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("automorphism/07-preserving-equivalence", [c, pairs] {
    detail::StopWatch sw;
    Agg agg("automorphism/07-preserving-equivalence", 0, c.m_pair);
    for (int n : c.dims)
      for (int i = 0; i < pairs; ++i) {
        std::uint64_t s = derive_seed(c.seed, 5600 + static_cast<std::uint64_t>(100 * n + i));
        if (i % 2 == 0) {
          auto neg = UnitNegation::from_automorphism(gen_unit_automorphism(derive_seed(s, 0)));
          auto eq = equilibrium(neg, c.solver_tol);
          if (eq.kind != EquilibriumResult::Kind::point) {
            agg.expect(false, ordered_json{{"specimen", s}, {"note", "no unit equilibrium"}});
            continue;
          }
          auto rho = UnitAutomorphism::rescaled(gen_unit_automorphism(derive_seed(s, 1)), eq.point);
          auto psi = UnitAutomorphism::rho_n(rho, neg);
          std::vector<UnitNegation> negs(static_cast<std::size_t>(n), neg);
          agg.add(preserving_equivalence(psi, negs, c.m_pair, c.eps),
                  specimen_info(s, n, "preserving pair"));
        } else {
          auto nd = gen_negation(derive_seed(s, 0), NegationKind::representable, n);
          auto psi = gen_unit_automorphism(derive_seed(s, 1));
          agg.add(preserving_equivalence(psi, induced_negations(nd), c.m_pair, c.eps),
                  specimen_info(s, n, "generic pair"));
        }
      }
    agg.r.seed = c.seed;
    agg.r.note = "the lifted and componentwise preservation checks agree";
    return agg.done(sw);
  });
}

struct PhiSpecimen {
  NDimNegation nd;
  NDimAutomorphism phi_n;
  double e = 0.0;
};

PhiSpecimen make_phi_specimen(std::uint64_t seed, int n) {
  auto nd = gen_negation(derive_seed(seed, 0), NegationKind::strong, n);
  auto eq = nd_equilibrium(nd);
  if (eq.kind != NDEquilibriumResult::Kind::point || !eq.point || !is_degenerate(*eq.point))
    throw argument_error("make_phi_specimen: specimen has no degenerate equilibrium");
  double e = eq.point->project(1);
  auto psi = UnitAutomorphism::rescaled(gen_unit_automorphism(derive_seed(seed, 1)), e);
  auto phi = NDimAutomorphism::from_unit(psi, n);
  return {nd, NDimAutomorphism::phi_n(phi, nd), e};
}

void add_phi_n(const SuiteConfig& c, std::vector<Task>& out) {
  const int pairs = std::max(2, c.trials / 5);
  const int kM = 21;

  out.emplace_back("phi-n/01-preserving", [c, pairs] {
    detail::StopWatch sw;
    Agg agg("phi-n/01-preserving", 0, kM);
    for (int n : c.dims)
      for (int i = 0; i < pairs; ++i) {
        std::uint64_t s = derive_seed(c.seed, 6000 + static_cast<std::uint64_t>(100 * n + i));
        auto sp = make_phi_specimen(s, n);
        agg.add(is_nd_preserving(sp.phi_n, sp.nd, kM, c.recon_tol), specimen_info(s, n, "phi_n"));
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("phi-n/02-inverse-preserving", [c, pairs] {
    detail::StopWatch sw;
    Agg agg("phi-n/02-inverse-preserving", 0, kM);
    for (int n : c.dims)
      for (int i = 0; i < pairs; ++i) {
        std::uint64_t s = derive_seed(c.seed, 6000 + static_cast<std::uint64_t>(100 * n + i));
        auto sp = make_phi_specimen(s, n);
        agg.add(is_nd_preserving(sp.phi_n.inverse(), sp.nd, kM, c.recon_tol),
                specimen_info(s, n, "phi_n inverse"));
      }
    agg.r.seed = c.seed;
    return agg.done(sw);
  });

  out.emplace_back("phi-n/03-reconstruction", [c, pairs] {
    detail::StopWatch sw;
    Agg agg("phi-n/03-reconstruction", 0, kM);
    for (int n : c.dims)
      for (int i = 0; i < pairs; ++i) {
        std::uint64_t s = derive_seed(c.seed, 6000 + static_cast<std::uint64_t>(100 * n + i));
        auto sp = make_phi_specimen(s, n);
        // The restriction below /e/ determines the whole map: components
        // above e follow through the induced negation.
        auto lower = [&](double t) { return sp.phi_n.eval(diag(t, n)).project(1); };
        auto nu = [&](double t) { return induced_eval(sp.nd, 1, t); };
        SimplexGrid g(n, kM);
        double worst = 0.0;
        for (const auto& x : g.points()) {
          std::vector<double> want(static_cast<std::size_t>(n));
          for (int j = 1; j <= n; ++j) {
            double v = x.project(j);
            want[static_cast<std::size_t>(j - 1)] = v <= sp.e ? lower(v) : nu(lower(nu(v)));
          }
          worst = std::max(worst, dist_inf(sort_to_simplex(want), sp.phi_n.eval(x)));
        }
        agg.observe_error(worst);
        agg.expect(worst <= c.recon_tol,
                   ordered_json{{"specimen", specimen_info(s, n, "phi_n")}, {"max_gap", worst}});
        agg.r.pairs_tested += static_cast<long long>(g.size());
      }
    agg.r.seed = c.seed;
    agg.r.note = "values on the lower diagonal rebuild the automorphism everywhere";
    return agg.done(sw);
  });

  out.emplace_back("phi-n/04-spot-values", [c] {
    detail::StopWatch sw;
    Agg agg("phi-n/04-spot-values", 2, 0);
    auto nd = NDimNegation::standard(2);
    auto psi = UnitAutomorphism::rescaled(UnitAutomorphism::power(2.0), 0.5);
    auto phi = NDimAutomorphism::phi_n(NDimAutomorphism::from_unit(psi, 2), nd);
    auto probe = [&](std::vector<double> in, std::vector<double> want) {
      NDInterval got = phi.eval(NDInterval(std::move(in)));
      double gap = dist_inf(got, NDInterval(want));
      agg.observe_error(gap);
      agg.expect(gap <= 1e-12, ordered_json{{"got", as_json(got)}, {"want", want}});
    };
    probe({0.25, 0.75}, {0.125, 0.875});
    probe({0.25, 0.5}, {0.125, 0.5});
    probe({0.5, 0.75}, {0.5, 0.875});
    probe({0.5, 0.5}, {0.5, 0.5});
    probe({0.0, 1.0}, {0.0, 1.0});
    auto conj = NDimNegation::strong_from_auto(
        NDimAutomorphism::from_unit(UnitAutomorphism::power(2.0), 2));
    double gap = dist_inf(conj.eval(diag(0.6, 2)), diag(0.8, 2));
    agg.observe_error(gap);
    agg.expect(gap <= 1e-12, ordered_json{{"specimen", "conjugate of standard by power(2)"}});
    agg.r.note = "hand-checked values for the square-root construction at e = 0.5";
    return agg.done(sw);
  });

  out.emplace_back("phi-n/05-branch-consistency", [c] {
    detail::StopWatch sw;
    Agg agg("phi-n/05-branch-consistency", 0, 0);
    for (int n : c.dims)
      for (int i = 0; i < 3; ++i) {
        std::uint64_t s = derive_seed(c.seed, 6000 + static_cast<std::uint64_t>(100 * n + i));
        auto sp = make_phi_specimen(s, n);
        auto lower = [&](double t) { return sp.phi_n.eval(diag(t, n)).project(1); };
        auto nu = [&](double t) { return induced_eval(sp.nd, 1, t); };
        // Tuples touching the equilibrium exercise adjacent branch choices.
        const double vals[3] = {0.5 * sp.e, sp.e, sp.e + 0.5 * (1.0 - sp.e)};
        std::vector<int> pick(static_cast<std::size_t>(n), 0);
        for (;;) {
          bool sorted = true, touches = false;
          for (int j = 0; j < n; ++j) {
            if (j > 0 && pick[static_cast<std::size_t>(j)] < pick[static_cast<std::size_t>(j - 1)])
              sorted = false;
            if (pick[static_cast<std::size_t>(j)] == 1) touches = true;
          }
          if (sorted && touches) {
            std::vector<double> in(static_cast<std::size_t>(n));
            std::vector<double> want(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
              double v = vals[pick[static_cast<std::size_t>(j)]];
              in[static_cast<std::size_t>(j)] = v;
              want[static_cast<std::size_t>(j)] = v <= sp.e ? lower(v) : nu(lower(nu(v)));
            }
            double gap = dist_inf(sp.phi_n.eval(NDInterval(in)), sort_to_simplex(want));
            agg.observe_error(gap);
            agg.expect(gap <= c.recon_tol,
                       ordered_json{{"specimen", specimen_info(s, n, "phi_n")}, {"x", in}});
          }
          int j = n - 1;
          while (j >= 0 && pick[static_cast<std::size_t>(j)] == 2) pick[static_cast<std::size_t>(j--)] = 0;
          if (j < 0) break;
          ++pick[static_cast<std::size_t>(j)];
        }
      }
    agg.r.seed = c.seed;
    agg.r.note = "branch formulas agree where a projection equals the equilibrium";
    return agg.done(sw);
  });
}

}  // namespace

ordered_json SuiteConfig::to_json() const {
  ordered_json j;
  j["dims"] = dims;
  j["m_pair"] = m_pair;
  j["m_point"] = m_point;
  j["trials"] = trials;
  j["seed"] = seed;
  j["eps"] = eps;
  j["recon_tol"] = recon_tol;
  j["solver_tol"] = solver_tol;
  return j;
}

namespace {

template <typename F>
PropertyReport jump_scan_cube(int n, int m, int levels, F&& f) {
  if (m < 2) throw argument_error("discontinuity_heuristic: resolution must be at least 2");
  if (levels < 1) throw argument_error("discontinuity_heuristic: need at least one level");

  PropertyReport r;
  r.property_id = "discontinuity";
  r.grid_n = n;
  r.grid_m = m;
  detail::StopWatch sw;

  std::vector<double> variation;
  NDInterval spot = diag(0.0, n);
  int mm = m;
  for (int lvl = 0; lvl < levels; ++lvl) {
    auto axis = axis_grid(mm);
    double best = 0.0;
    std::vector<int> prefix(static_cast<std::size_t>(n - 1), 0);
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    for (;;) {
      for (int j = 0; j + 1 < n; ++j)
        u[static_cast<std::size_t>(j)] = axis[static_cast<std::size_t>(prefix[static_cast<std::size_t>(j)])];
      u[static_cast<std::size_t>(n - 1)] = axis[0];
      NDInterval prev = f(sort_to_simplex(u));
      for (int k = 1; k < mm; ++k) {
        u[static_cast<std::size_t>(n - 1)] = axis[static_cast<std::size_t>(k)];
        NDInterval at = sort_to_simplex(u);
        NDInterval cur = f(at);
        double v = dist_inf(prev, cur);
        if (v > best) {
          best = v;
          spot = at;
        }
        prev = cur;
        ++r.pairs_tested;
      }
      if (n == 1) break;
      int j = n - 2;
      while (j >= 0 && prefix[static_cast<std::size_t>(j)] == mm - 1)
        prefix[static_cast<std::size_t>(j--)] = 0;
      if (j < 0) break;
      ++prefix[static_cast<std::size_t>(j)];
    }
    variation.push_back(best);
    mm = 2 * mm - 1;
  }

  r.max_error = variation.back();
  bool suspected = variation.front() > 0.0;
  for (std::size_t l = 1; l < variation.size(); ++l)
    if (!(variation[l] > 0.9 * variation[l - 1])) suspected = false;
  if (suspected && variation.size() > 1) {
    r.verdict = Verdict::fail;
    r.witness = ordered_json{{"near", as_json(spot)}, {"variation", variation.back()}};
    r.note = "largest local variation does not shrink with the mesh";
  } else {
    r.verdict = Verdict::pass;
    r.note = "no jump detected through resolution m=" + std::to_string((mm + 1) / 2) +
             "; evidence, not proof";
  }
  r.elapsed_ms = sw.ms();
  return r;
}

}  // namespace

PropertyReport discontinuity_heuristic(const NDimNegation& nd, int m, int levels) {
  return jump_scan_cube(nd.dim(), m, levels,
                        [&](const NDInterval& x) { return nd.eval(x); });
}

PropertyReport discontinuity_heuristic(const NDimAutomorphism& phi, int m, int levels) {
  if (std::abs(phi.domain_hi() - 1.0) > kEps)
    throw argument_error("discontinuity_heuristic: automorphism must act on the whole simplex");
  return jump_scan_cube(phi.dim(), m, levels,
                        [&](const NDInterval& x) { return phi.eval(x); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "core-lattice", "unit-negations", "representability", "strong",
      "equilibrium",  "automorphism",   "phi-n",            "all"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw argument_error("run_suite: unknown suite \"" + name + "\"");
  if (config.dims.empty()) throw argument_error("run_suite: dims must be non-empty");
  for (int n : config.dims)
    if (n < 1) throw argument_error("run_suite: dimensions must be positive");
  if (config.m_pair < 2 || config.m_point < 2)
    throw argument_error("run_suite: grid resolutions must be at least 2");
  if (config.trials < 1) throw argument_error("run_suite: trials must be positive");

  detail::StopWatch sw;
  std::vector<Task> tasks;
  bool all = name == "all";
  if (all || name == "core-lattice") add_core_lattice(config, tasks);
  if (all || name == "unit-negations") add_unit_negations(config, tasks);
  if (all || name == "representability") add_representability(config, tasks);
  if (all || name == "strong") add_strong(config, tasks);
  if (all || name == "equilibrium") add_equilibrium(config, tasks);
  if (all || name == "automorphism") add_automorphism(config, tasks);
  if (all || name == "phi-n") add_phi_n(config, tasks);

  SuiteReport sr;
  sr.suite = name;
  sr.config = config.to_json();
  sr.reports = run_tasks(tasks);
  sr.sort_reports();
  sr.elapsed_ms = sw.ms();
  return sr;
}

}  // namespace fnk
