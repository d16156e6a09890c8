#include "fnk/unit_automorphism.hpp"

#include <cmath>
#include <utility>
#include <variant>

#include "fnk/grid.hpp"
#include "fnk/unit_negation.hpp"
#include "util.hpp"

namespace fnk {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Points = std::vector<std::array<double, 2>>;

void split_points(const Points& pts, std::vector<double>& xs, std::vector<double>& ys) {
  xs.reserve(pts.size());
  ys.reserve(pts.size());
  for (const auto& p : pts) {
    xs.push_back(p[0]);
    ys.push_back(p[1]);
  }
}
}  // namespace

struct UnitAutomorphism::Node {
  struct Identity {};
  struct Power {
    double p;
  };
  struct Pwl {
    std::vector<double> xs, ys;
  };
  struct Compose {
    UnitAutomorphism outer, inner;
  };
  struct Inverse {
    UnitAutomorphism inner;
  };
  struct Rescaled {
    UnitAutomorphism inner;
    double e;
  };
  struct RhoN {
    UnitAutomorphism rho;
    UnitNegation neg;
    double e;
  };
  using V = std::variant<Identity, Power, Pwl, Compose, Inverse, Rescaled, RhoN>;

  V v;
  double hi;

  Node(V var, double h) : v(std::move(var)), hi(h) {}
};

namespace {
using Node = UnitAutomorphism::Node;
}

UnitAutomorphism UnitAutomorphism::identity() {
  return UnitAutomorphism(std::make_shared<const Node>(Node::Identity{}, 1.0));
}

UnitAutomorphism UnitAutomorphism::power(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw argument_error("UnitAutomorphism::power: exponent must be positive");
  return UnitAutomorphism(std::make_shared<const Node>(Node::Power{p}, 1.0));
}

UnitAutomorphism UnitAutomorphism::piecewise_linear(Points points) {
  if (points.size() < 2)
    throw argument_error("UnitAutomorphism::piecewise_linear: need at least 2 points");
  if (points.front()[0] != 0.0 || points.front()[1] != 0.0 ||
      points.back()[0] != 1.0 || points.back()[1] != 1.0)
    throw argument_error(
        "UnitAutomorphism::piecewise_linear: endpoints must be (0,0) and (1,1)");
  for (size_t i = 1; i < points.size(); ++i) {
    if (!(points[i][0] > points[i - 1][0]) || !(points[i][1] > points[i - 1][1]))
      throw argument_error(
          "UnitAutomorphism::piecewise_linear: knots must be strictly increasing");
  }
  Node::Pwl pw;
  split_points(points, pw.xs, pw.ys);
  return UnitAutomorphism(std::make_shared<const Node>(std::move(pw), 1.0));
}

UnitAutomorphism UnitAutomorphism::compose(UnitAutomorphism outer, UnitAutomorphism inner) {
  if (std::fabs(outer.domain_hi() - inner.domain_hi()) > kEps)
    throw argument_error("UnitAutomorphism::compose: domain mismatch");
  double hi = inner.domain_hi();
  return UnitAutomorphism(
      std::make_shared<const Node>(Node::Compose{std::move(outer), std::move(inner)}, hi));
}

UnitAutomorphism UnitAutomorphism::rescaled(UnitAutomorphism inner, double e) {
  if (inner.domain_hi() != 1.0)
    throw argument_error("UnitAutomorphism::rescaled: inner must live on [0,1]");
  if (!(e > 0.0) || e > 1.0)
    throw argument_error("UnitAutomorphism::rescaled: e must be in (0,1]");
  return UnitAutomorphism(
      std::make_shared<const Node>(Node::Rescaled{std::move(inner), e}, e));
}

UnitAutomorphism UnitAutomorphism::rho_n(UnitAutomorphism rho, const UnitNegation& n) {
  PropertyReport strong = is_strong(n, kDefaultTabulation);
  if (!strong.passed())
    throw argument_error("UnitAutomorphism::rho_n: negation is not strong (sampled)");
  EquilibriumResult eq = equilibrium(n);
  if (eq.kind != EquilibriumResult::Kind::point)
    throw argument_error("UnitAutomorphism::rho_n: negation has no equilibrium point");
  if (std::fabs(rho.domain_hi() - eq.point) > kEps)
    throw argument_error(
        "UnitAutomorphism::rho_n: rho's domain must end at the equilibrium");
  return UnitAutomorphism(
      std::make_shared<const Node>(Node::RhoN{std::move(rho), n, eq.point}, 1.0));
}

UnitAutomorphism UnitAutomorphism::inverse() const {
  if (const auto* inv = std::get_if<Node::Inverse>(&node_->v)) return inv->inner;
  return UnitAutomorphism(std::make_shared<const Node>(Node::Inverse{*this}, node_->hi));
}

double UnitAutomorphism::domain_hi() const { return node_->hi; }

namespace {

double eval_node(const Node& n, double x);

// Inverse evaluation: closed forms where they are exact and cheap,
// bisection for everything else.
double inv_eval(const UnitAutomorphism& a, double y) {
  const Node& n = a.node();
  return std::visit(
      overloaded{
          [&](const Node::Identity&) { return y; },
          [&](const Node::Power& p) { return std::pow(y, 1.0 / p.p); },
          [&](const Node::Pwl& pw) { return detail::pwl_eval(pw.ys, pw.xs, y); },
          [&](const Node::Inverse& inv) { return inv.inner.eval(y); },
          [&](const auto&) {
            return detail::invert_increasing([&](double t) { return eval_node(n, t); }, y,
                                             0.0, n.hi);
          },
      },
      n.v);
}

double eval_node(const Node& n, double x) {
  return std::visit(
      overloaded{
          [&](const Node::Identity&) { return x; },
          [&](const Node::Power& p) { return std::pow(x, p.p); },
          [&](const Node::Pwl& pw) { return detail::pwl_eval(pw.xs, pw.ys, x); },
          [&](const Node::Compose& c) { return c.outer.eval(c.inner.eval(x)); },
          [&](const Node::Inverse& inv) { return inv_eval(inv.inner, x); },
          [&](const Node::Rescaled& r) { return r.e * r.inner.eval(x / r.e); },
          [&](const Node::RhoN& rn) {
            if (x <= rn.e) return rn.rho.eval(std::min(x, rn.rho.domain_hi()));
            double t = rn.neg.eval(x);  // below e for x above it
            return rn.neg.eval(rn.rho.eval(std::min(t, rn.rho.domain_hi())));
          },
      },
      n.v);
}

}  // namespace

double UnitAutomorphism::eval(double x) const {
  double hi = node_->hi;
  if (x < 0.0 || x > hi) {
    double clamped = detail::clamp_value(x, hi);
    if (clamped < 0.0 || clamped > hi)
      throw argument_error("UnitAutomorphism::eval: argument " + std::to_string(x) +
                           " outside [0, " + std::to_string(hi) + "]");
    x = clamped;
  }
  return detail::clamp_value(eval_node(*node_, x), hi);
}

nlohmann::json UnitAutomorphism::to_json() const {
  using nlohmann::json;
  return std::visit(
      overloaded{
          [&](const Node::Identity&) { return json{{"kind", "identity"}}; },
          [&](const Node::Power& p) { return json{{"kind", "power"}, {"p", p.p}}; },
          [&](const Node::Pwl& pw) {
            json pts = json::array();
            for (size_t i = 0; i < pw.xs.size(); ++i)
              pts.push_back(json::array({pw.xs[i], pw.ys[i]}));
            return json{{"kind", "pwl_inc"}, {"points", pts}};
          },
          [&](const Node::Compose& c) {
            return json{{"kind", "compose"},
                        {"outer", c.outer.to_json()},
                        {"inner", c.inner.to_json()}};
          },
          [&](const Node::Inverse& inv) {
            return json{{"kind", "inverse"}, {"inner", inv.inner.to_json()}};
          },
          [&](const Node::Rescaled& r) {
            return json{{"kind", "rescaled"}, {"inner", r.inner.to_json()}, {"e", r.e}};
          },
          [&](const Node::RhoN& rn) {
            return json{{"kind", "rho_n"},
                        {"rho", rn.rho.to_json()},
                        {"neg", rn.neg.to_json()}};
          },
      },
      node_->v);
}

namespace {

Points parse_points(const nlohmann::json& j) {
  if (!j.is_array()) throw parse_error("expression: \"points\" must be an array");
  Points pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw parse_error("expression: each point must be a [x, y] pair");
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return pts;
}

}  // namespace

UnitAutomorphism UnitAutomorphism::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw parse_error("automorphism expression: missing \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "identity") return identity();
    if (kind == "power") {
      if (!j.contains("p") || !j["p"].is_number())
        throw parse_error("power: missing numeric \"p\"");
      return power(j["p"].get<double>());
    }
    if (kind == "pwl_inc") {
      if (!j.contains("points")) throw parse_error("pwl_inc: missing \"points\"");
      return piecewise_linear(parse_points(j["points"]));
    }
    if (kind == "compose") {
      if (!j.contains("outer") || !j.contains("inner"))
        throw parse_error("compose: missing \"outer\" or \"inner\"");
      return compose(from_json(j["outer"]), from_json(j["inner"]));
    }
    if (kind == "inverse") {
      if (!j.contains("inner")) throw parse_error("inverse: missing \"inner\"");
      return from_json(j["inner"]).inverse();
    }
    if (kind == "rescaled") {
      if (!j.contains("inner") || !j.contains("e") || !j["e"].is_number())
        throw parse_error("rescaled: missing \"inner\" or numeric \"e\"");
      return rescaled(from_json(j["inner"]), j["e"].get<double>());
    }
    if (kind == "rho_n") {
      if (!j.contains("rho") || !j.contains("neg"))
        throw parse_error("rho_n: missing \"rho\" or \"neg\"");
      return rho_n(from_json(j["rho"]), UnitNegation::from_json(j["neg"]));
    }
  } catch (const argument_error& e) {
    throw parse_error(std::string("automorphism expression: ") + e.what());
  }
  throw parse_error("automorphism expression: unknown kind \"" + kind + "\"");
}

UnitNegation conjugate_unary(const UnitNegation& n, const UnitAutomorphism& rho) {
  return UnitNegation::conjugate(n, rho);
}

PropertyReport is_n_preserving(const UnitAutomorphism& rho, const UnitNegation& n,
                               int m, double eps) {
  detail::StopWatch sw;
  if (std::fabs(rho.domain_hi() - 1.0) > kEps)
    throw argument_error("is_n_preserving: automorphism must live on [0,1]");
  PropertyReport r;
  r.property_id = "n-preserving";
  r.grid_n = 1;
  r.grid_m = m;
  for (double x : axis_grid(m)) {
    ++r.pairs_tested;
    double lhs = rho.eval(n.eval(x));
    double rhs = n.eval(rho.eval(x));
    double d = std::fabs(lhs - rhs);
    r.max_error = std::max(r.max_error, d);
    if (d > eps && !r.witness) {
      r.verdict = Verdict::fail;
      r.witness = ordered_json{{"x", x}, {"rho(N(x))", lhs}, {"N(rho(x))", rhs}};
    }
  }
  r.elapsed_ms = sw.ms();
  return r;
}

}  // namespace fnk
