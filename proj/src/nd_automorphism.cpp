#include "fnk/nd_automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <variant>

#include "fnk/grid.hpp"
#include "util.hpp"

namespace fnk {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

struct NDimAutomorphism::Node {
  struct FromUnit {
    UnitAutomorphism psi;
    int n;
  };
  struct PhiN {
    UnitAutomorphism psi_e;  // unit automorphism of [0, e]
    NDimNegation neg;        // strong, with equilibrium /e/
    double e;
  };
  using V = std::variant<FromUnit, PhiN>;

  V v;
  explicit Node(V var) : v(std::move(var)) {}
};

namespace {
using Node = NDimAutomorphism::Node;

double dist_inf(const NDInterval& a, const NDInterval& b) {
  double d = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    d = std::max(d, std::fabs(a.values()[size_t(i)] - b.values()[size_t(i)]));
  return d;
}
}  // namespace

NDimAutomorphism NDimAutomorphism::from_unit(UnitAutomorphism psi, int dim) {
  if (dim < 1) throw argument_error("NDimAutomorphism::from_unit: dim must be >= 1");
  return NDimAutomorphism(
      std::make_shared<const Node>(Node::FromUnit{std::move(psi), dim}));
}

NDimAutomorphism NDimAutomorphism::phi_n(const NDimAutomorphism& phi,
                                         const NDimNegation& strong_neg) {
  const auto* lift = std::get_if<Node::FromUnit>(&phi.node().v);
  if (!lift)
    throw argument_error("NDimAutomorphism::phi_n: phi must be a componentwise lift");
  if (phi.dim() != strong_neg.dim())
    throw argument_error("NDimAutomorphism::phi_n: dimension mismatch");
  if (!is_strong_nd(strong_neg, 21).passed())
    throw argument_error("NDimAutomorphism::phi_n: negation is not strong (sampled)");
  NDEquilibriumResult eq = nd_equilibrium(strong_neg);
  if (eq.kind != NDEquilibriumResult::Kind::point || !eq.point ||
      !is_degenerate(*eq.point))
    throw argument_error(
        "NDimAutomorphism::phi_n: negation has no degenerate equilibrium");
  double e = eq.point->project(1);
  if (std::fabs(lift->psi.domain_hi() - e) > kEps)
    throw argument_error(
        "NDimAutomorphism::phi_n: phi's domain must end at the equilibrium");
  return NDimAutomorphism(
      std::make_shared<const Node>(Node::PhiN{lift->psi, strong_neg, e}));
}

NDimAutomorphism NDimAutomorphism::inverse() const {
  return std::visit(
      overloaded{
          [&](const Node::FromUnit& f) {
            return NDimAutomorphism(
                std::make_shared<const Node>(Node::FromUnit{f.psi.inverse(), f.n}));
          },
          [&](const Node::PhiN& p) {
            return NDimAutomorphism(std::make_shared<const Node>(
                Node::PhiN{p.psi_e.inverse(), p.neg, p.e}));
          },
      },
      node_->v);
}

int NDimAutomorphism::dim() const {
  return std::visit(
      overloaded{
          [](const Node::FromUnit& f) { return f.n; },
          [](const Node::PhiN& p) { return p.neg.dim(); },
      },
      node_->v);
}

double NDimAutomorphism::domain_hi() const {
  return std::visit(
      overloaded{
          [](const Node::FromUnit& f) { return f.psi.domain_hi(); },
          [](const Node::PhiN&) { return 1.0; },
      },
      node_->v);
}

NDInterval NDimAutomorphism::eval(const NDInterval& x) const {
  const int n = dim();
  if (x.dim() != n)
    throw argument_error("NDimAutomorphism::eval: expected dimension " +
                         std::to_string(n) + ", got " + std::to_string(x.dim()));
  return std::visit(
      overloaded{
          [&](const Node::FromUnit& f) {
            std::vector<double> out(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
              out[size_t(i)] = f.psi.eval(x.values()[size_t(i)]);
            return NDInterval(std::move(out));
          },
          [&](const Node::PhiN& p) {
            if (x.project(n) <= p.e) {
              std::vector<double> out(static_cast<std::size_t>(n));
              for (int i = 0; i < n; ++i)
                out[size_t(i)] = p.psi_e.eval(x.values()[size_t(i)]);
              return NDInterval(std::move(out));
            }
            if (x.project(1) >= p.e) {
              NDInterval nx = p.neg.eval(x);
              std::vector<double> lifted(static_cast<std::size_t>(n));
              for (int i = 0; i < n; ++i)
                lifted[size_t(i)] = p.psi_e.eval(nx.values()[size_t(i)]);
              return p.neg.eval(NDInterval(std::move(lifted)));
            }
            // Mixed projections: low components through psi_e directly, high
            // ones through the induced unit negation on both sides of it.
            std::vector<double> out(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
              double v = x.values()[size_t(i)];
              if (v <= p.e) {
                out[size_t(i)] = p.psi_e.eval(v);
              } else {
                double t = induced_eval(p.neg, 1, v);
                out[size_t(i)] = induced_eval(p.neg, 1, p.psi_e.eval(t));
              }
            }
            return NDInterval(std::move(out));
          },
      },
      node_->v);
}

nlohmann::json NDimAutomorphism::to_json() const {
  using nlohmann::json;
  return std::visit(
      overloaded{
          [&](const Node::FromUnit& f) {
            return json{{"kind", "from_unit"}, {"psi", f.psi.to_json()}, {"n", f.n}};
          },
          [&](const Node::PhiN& p) {
            return json{{"kind", "phi_n"},
                        {"psi_e", p.psi_e.to_json()},
                        {"e", p.e},
                        {"neg", p.neg.to_json()}};
          },
      },
      node_->v);
}

NDimAutomorphism NDimAutomorphism::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw parse_error("automorphism expression: missing \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "from_unit") {
      if (!j.contains("psi") || !j.contains("n") || !j["n"].is_number_integer())
        throw parse_error("from_unit: missing \"psi\" or integer \"n\"");
      return from_unit(UnitAutomorphism::from_json(j["psi"]), j["n"].get<int>());
    }
    if (kind == "inverse_n") {
      if (!j.contains("inner")) throw parse_error("inverse_n: missing \"inner\"");
      return from_json(j["inner"]).inverse();
    }
    if (kind == "phi_n") {
      if (!j.contains("psi_e") || !j.contains("e") || !j["e"].is_number() ||
          !j.contains("neg"))
        throw parse_error("phi_n: missing \"psi_e\", numeric \"e\", or \"neg\"");
      UnitAutomorphism psi_e = UnitAutomorphism::from_json(j["psi_e"]);
      double e = j["e"].get<double>();
      if (std::fabs(psi_e.domain_hi() - e) > kEps)
        throw parse_error("phi_n: \"e\" disagrees with psi_e's domain");
      NDimNegation neg = NDimNegation::from_json(j["neg"]);
      return phi_n(from_unit(std::move(psi_e), neg.dim()), neg);
    }
  } catch (const argument_error& e) {
    throw parse_error(std::string("automorphism expression: ") + e.what());
  }
  throw parse_error("automorphism expression: unknown kind \"" + kind + "\"");
}

NDimNegation conjugate_ndneg(const NDimNegation& nd, const NDimAutomorphism& by) {
  return NDimNegation::conjugate(nd, by);
}

NDimNegation strong_from_automorphism(const NDimAutomorphism& phi) {
  return NDimNegation::strong_from_auto(phi);
}

PropertyReport representable_conjugation_identity(const std::vector<UnitNegation>& negs,
                                                  const UnitAutomorphism& psi, int m,
                                                  double eps) {
  detail::StopWatch sw;
  const int n = int(negs.size());
  NDimNegation lifted_then_conjugated = NDimNegation::conjugate(
      NDimNegation::representable(negs), NDimAutomorphism::from_unit(psi, n));
  std::vector<UnitNegation> conjugated;
  conjugated.reserve(negs.size());
  for (const auto& neg : negs) conjugated.push_back(conjugate_unary(neg, psi));
  NDimNegation conjugated_then_lifted = NDimNegation::representable(std::move(conjugated));

  PropertyReport r;
  r.property_id = "representable-conjugation";
  r.grid_n = n;
  r.grid_m = m;
  SimplexGrid g(n, m);
  for (const auto& x : g.points()) {
    ++r.pairs_tested;
    NDInterval lhs = lifted_then_conjugated.eval(x);
    NDInterval rhs = conjugated_then_lifted.eval(x);
    double d = dist_inf(lhs, rhs);
    r.max_error = std::max(r.max_error, d);
    if (d > eps && !r.witness) {
      r.verdict = Verdict::fail;
      r.witness = ordered_json{{"x", x.values()},
                               {"conjugate_of_lift", lhs.values()},
                               {"lift_of_conjugates", rhs.values()}};
    }
  }
  r.elapsed_ms = sw.ms();
  return r;
}

PropertyReport trillas_roundtrip(const NDimNegation& strong_neg, int m, double eps) {
  if (!is_strong_nd(strong_neg, m, kEps).passed())
    throw argument_error("trillas_roundtrip: expression must pass the strong check");
  detail::StopWatch sw;
  const int n = strong_neg.dim();
  auto unit_neg = [&](double t) { return induced_eval(strong_neg, 1, t); };
  auto psi = [&](double x) { return 0.5 * (1.0 + x - unit_neg(x)); };
  auto psi_inv = [&](double y) { return detail::invert_increasing(psi, y, 0.0, 1.0); };

  PropertyReport r;
  r.property_id = "trillas-roundtrip";
  r.grid_n = n;
  r.grid_m = m;
  r.note = "psi(x) = (1 + x - N(x)) / 2";
  SimplexGrid g(n, m);
  for (const auto& x : g.points()) {
    ++r.pairs_tested;
    NDInterval actual = strong_neg.eval(x);
    std::vector<double> expect(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
      expect[size_t(i - 1)] = psi_inv(1.0 - psi(x.project(n - i + 1)));
    NDInterval expected(std::move(expect));
    double d = dist_inf(actual, expected);
    r.max_error = std::max(r.max_error, d);
    if (d > eps && !r.witness) {
      r.verdict = Verdict::fail;
      r.witness = ordered_json{{"x", x.values()},
                               {"N(x)", actual.values()},
                               {"conjugate_form", expected.values()}};
    }
  }
  r.elapsed_ms = sw.ms();
  return r;
}

PropertyReport strict_conjugation_gap(const NDimNegation& nd, int m, double eps) {
  if (!is_strong_nd(nd, m, kEps).passed() && !is_strict_nd(nd, m, kEps).passed())
    throw argument_error("strict_conjugation_gap: expression must pass the strict check");
  detail::StopWatch sw;
  const int n = nd.dim();
  NDimNegation conj = NDimNegation::conjugate(
      nd, NDimAutomorphism::from_unit(UnitAutomorphism::power(2.0), n));

  PropertyReport r;
  r.property_id = "strict-conjugation-gap";
  r.grid_n = n;
  r.grid_m = m;
  double min_margin = 1.0;
  SimplexGrid g(n, m);
  for (const auto& x : g.points()) {
    if (x.project(1) <= 0.0 || x.project(n) >= 1.0) continue;
    ++r.pairs_tested;
    NDInterval below = nd.eval(x);
    NDInterval above = conj.eval(x);
    double margin = 1.0;
    for (int i = 1; i <= n; ++i)
      margin = std::min(margin, above.project(i) - below.project(i));
    min_margin = std::min(min_margin, margin);
    if (margin <= eps && !r.witness) {
      r.verdict = Verdict::fail;
      r.witness = ordered_json{
          {"x", x.values()}, {"N(x)", below.values()}, {"conjugate(x)", above.values()}};
    }
  }
  r.max_error = std::max(0.0, eps - min_margin);
  r.note = r.pairs_tested == 0
               ? "no interior grid points at this resolution"
               : "smallest componentwise margin " + std::to_string(min_margin);
  r.elapsed_ms = sw.ms();
  return r;
}

PropertyReport is_nd_preserving(const NDimAutomorphism& phi, const NDimNegation& nd,
                                int m, double eps) {
  if (phi.dim() != nd.dim())
    throw argument_error("is_nd_preserving: dimension mismatch");
  if (std::fabs(phi.domain_hi() - 1.0) > kEps)
    throw argument_error("is_nd_preserving: automorphism must cover the whole simplex");
  detail::StopWatch sw;
  const int n = nd.dim();
  PropertyReport r;
  r.property_id = "nd-preserving";
  r.grid_n = n;
  r.grid_m = m;
  SimplexGrid g(n, m);
  for (const auto& x : g.points()) {
    ++r.pairs_tested;
    NDInterval lhs = phi.eval(nd.eval(x));
    NDInterval rhs = nd.eval(phi.eval(x));
    double d = dist_inf(lhs, rhs);
    r.max_error = std::max(r.max_error, d);
    if (d > eps && !r.witness) {
      r.verdict = Verdict::fail;
      r.witness = ordered_json{{"x", x.values()},
                               {"phi(N(x))", lhs.values()},
                               {"N(phi(x))", rhs.values()}};
    }
  }
  r.elapsed_ms = sw.ms();
  return r;
}

PropertyReport preserving_equivalence(const UnitAutomorphism& psi,
                                      const std::vector<UnitNegation>& negs, int m,
                                      double eps) {
  detail::StopWatch sw;
  const int n = int(negs.size());
  PropertyReport nd_check = is_nd_preserving(NDimAutomorphism::from_unit(psi, n),
                                             NDimNegation::representable(negs), m, eps);
  bool nd_preserving = nd_check.passed();
  bool unit_preserving = true;
  long long unit_pairs = 0;
  for (const auto& neg : negs) {
    PropertyReport u = is_n_preserving(psi, neg, m, eps);
    unit_preserving = unit_preserving && u.passed();
    unit_pairs += u.pairs_tested;
  }

  PropertyReport r;
  r.property_id = "preserving-equivalence";
  r.grid_n = n;
  r.grid_m = m;
  r.pairs_tested = nd_check.pairs_tested + unit_pairs;
  r.max_error = nd_check.max_error;
  if (nd_preserving != unit_preserving) {
    r.verdict = Verdict::fail;
    r.witness = ordered_json{{"nd_preserving", nd_preserving},
                             {"unit_preserving", unit_preserving}};
  } else {
    r.note = nd_preserving ? "both routes report preserving"
                           : "both routes report not preserving";
  }
  r.elapsed_ms = sw.ms();
  return r;
}

}  // namespace fnk
