#include "fnk/unit_negation.hpp"

#include <cmath>
#include <utility>
#include <variant>

#include "fnk/grid.hpp"
#include "fnk/unit_automorphism.hpp"
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

struct UnitNegation::Node {
  struct Standard {};
  struct Bottom {};
  struct Top {};
  struct Ck {
    int n, k;
    double r;  // n - k + 1
  };
  struct CupK {
    int k;
  };
  struct Pwl {
    std::vector<double> xs, ys;
  };
  struct Conjugate {
    UnitNegation inner;
    UnitAutomorphism by, by_inv;
  };
  struct FromAutomorphism {
    UnitAutomorphism psi, psi_inv;
  };
  using V = std::variant<Standard, Bottom, Top, Ck, CupK, Pwl, Conjugate, FromAutomorphism>;

  V v;
  explicit Node(V var) : v(std::move(var)) {}
};

namespace {
using Node = UnitNegation::Node;
}

UnitNegation UnitNegation::standard() {
  return UnitNegation(std::make_shared<const Node>(Node::Standard{}));
}

UnitNegation UnitNegation::bottom() {
  return UnitNegation(std::make_shared<const Node>(Node::Bottom{}));
}

UnitNegation UnitNegation::top() {
  return UnitNegation(std::make_shared<const Node>(Node::Top{}));
}

UnitNegation UnitNegation::ck(int n, int k) {
  if (n < 1 || k < 1 || k > n)
    throw argument_error("UnitNegation::ck: need 1 <= k <= n");
  return UnitNegation(
      std::make_shared<const Node>(Node::Ck{n, k, double(n - k + 1)}));
}

UnitNegation UnitNegation::cup_k(int k) {
  if (k < 1) throw argument_error("UnitNegation::cup_k: need k >= 1");
  return UnitNegation(std::make_shared<const Node>(Node::CupK{k}));
}

namespace {

Node::Pwl make_pwl(std::vector<std::array<double, 2>> points, bool checked) {
  if (points.size() < 2)
    throw argument_error("UnitNegation::piecewise_linear: need at least 2 points");
  if (points.front()[0] != 0.0 || points.back()[0] != 1.0)
    throw argument_error(
        "UnitNegation::piecewise_linear: x-knots must start at 0 and end at 1");
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i][1] < 0.0 || points[i][1] > 1.0)
      throw argument_error("UnitNegation::piecewise_linear: y-values must be in [0,1]");
    if (i > 0 && !(points[i][0] > points[i - 1][0]))
      throw argument_error(
          "UnitNegation::piecewise_linear: x-knots must be strictly increasing");
  }
  if (checked) {
    if (points.front()[1] != 1.0 || points.back()[1] != 0.0)
      throw argument_error(
          "UnitNegation::piecewise_linear: endpoints must be (0,1) and (1,0)");
    for (size_t i = 1; i < points.size(); ++i)
      if (points[i][1] > points[i - 1][1])
        throw argument_error(
            "UnitNegation::piecewise_linear: y-values must be nonincreasing");
  }
  Node::Pwl pw;
  pw.xs.reserve(points.size());
  pw.ys.reserve(points.size());
  for (const auto& p : points) {
    pw.xs.push_back(p[0]);
    pw.ys.push_back(p[1]);
  }
  return pw;
}

}  // namespace

UnitNegation UnitNegation::piecewise_linear(std::vector<std::array<double, 2>> points) {
  return UnitNegation(
      std::make_shared<const Node>(make_pwl(std::move(points), /*checked=*/true)));
}

UnitNegation UnitNegation::piecewise_linear_unchecked(
    std::vector<std::array<double, 2>> points) {
  return UnitNegation(
      std::make_shared<const Node>(make_pwl(std::move(points), /*checked=*/false)));
}

UnitNegation UnitNegation::conjugate(UnitNegation inner, const UnitAutomorphism& by) {
  if (std::fabs(by.domain_hi() - 1.0) > kEps)
    throw argument_error("UnitNegation::conjugate: automorphism must live on [0,1]");
  return UnitNegation(
      std::make_shared<const Node>(Node::Conjugate{std::move(inner), by, by.inverse()}));
}

UnitNegation UnitNegation::from_automorphism(const UnitAutomorphism& psi) {
  if (std::fabs(psi.domain_hi() - 1.0) > kEps)
    throw argument_error("UnitNegation::from_automorphism: automorphism must live on [0,1]");
  return UnitNegation(
      std::make_shared<const Node>(Node::FromAutomorphism{psi, psi.inverse()}));
}

double UnitNegation::eval(double x) const {
  if (x < 0.0 || x > 1.0) {
    double clamped = detail::clamp_value(x);
    if (clamped < 0.0 || clamped > 1.0)
      throw argument_error("UnitNegation::eval: argument " + std::to_string(x) +
                           " outside [0,1]");
    x = clamped;
  }
  double v = std::visit(
      overloaded{
          [&](const Node::Standard&) { return 1.0 - x; },
          [&](const Node::Bottom&) { return x == 0.0 ? 1.0 : 0.0; },
          [&](const Node::Top&) { return x == 1.0 ? 0.0 : 1.0; },
          [&](const Node::Ck& c) {
            if (c.r == 1.0) return 1.0 - x;
            return std::pow(1.0 - std::pow(x, c.r), 1.0 / c.r);
          },
          [&](const Node::CupK& c) {
            if (c.k == 1) return 1.0 - x;
            return 1.0 - std::pow(x, double(c.k));
          },
          [&](const Node::Pwl& pw) { return detail::pwl_eval(pw.xs, pw.ys, x); },
          [&](const Node::Conjugate& c) {
            return c.by_inv.eval(c.inner.eval(c.by.eval(x)));
          },
          [&](const Node::FromAutomorphism& f) {
            return f.psi_inv.eval(1.0 - f.psi.eval(x));
          },
      },
      node_->v);
  return detail::clamp_value(v);
}

bool UnitNegation::continuous_hint() const {
  return std::visit(
      overloaded{
          [&](const Node::Bottom&) { return false; },
          [&](const Node::Top&) { return false; },
          [&](const Node::Conjugate& c) { return c.inner.continuous_hint(); },
          [&](const auto&) { return true; },
      },
      node_->v);
}

nlohmann::json UnitNegation::to_json() const {
  using nlohmann::json;
  return std::visit(
      overloaded{
          [&](const Node::Standard&) { return json{{"kind", "standard"}}; },
          [&](const Node::Bottom&) { return json{{"kind", "bottom"}}; },
          [&](const Node::Top&) { return json{{"kind", "top"}}; },
          [&](const Node::Ck& c) {
            return json{{"kind", "ck"}, {"n", c.n}, {"k", c.k}};
          },
          [&](const Node::CupK& c) { return json{{"kind", "cupk"}, {"k", c.k}}; },
          [&](const Node::Pwl& pw) {
            json pts = json::array();
            for (size_t i = 0; i < pw.xs.size(); ++i)
              pts.push_back(json::array({pw.xs[i], pw.ys[i]}));
            return json{{"kind", "pwl"}, {"points", pts}};
          },
          [&](const Node::Conjugate& c) {
            return json{{"kind", "conjugate"},
                        {"inner", c.inner.to_json()},
                        {"by", c.by.to_json()}};
          },
          [&](const Node::FromAutomorphism& f) {
            return json{{"kind", "from_automorphism"}, {"psi", f.psi.to_json()}};
          },
      },
      node_->v);
}

UnitNegation UnitNegation::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw parse_error("negation expression: missing \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "standard") return standard();
    if (kind == "bottom") return bottom();
    if (kind == "top") return top();
    if (kind == "ck") {
      if (!j.contains("n") || !j.contains("k") || !j["n"].is_number_integer() ||
          !j["k"].is_number_integer())
        throw parse_error("ck: missing integer \"n\" or \"k\"");
      return ck(j["n"].get<int>(), j["k"].get<int>());
    }
    if (kind == "cupk") {
      if (!j.contains("k") || !j["k"].is_number_integer())
        throw parse_error("cupk: missing integer \"k\"");
      return cup_k(j["k"].get<int>());
    }
    if (kind == "pwl") {
      if (!j.contains("points") || !j["points"].is_array())
        throw parse_error("pwl: missing \"points\"");
      std::vector<std::array<double, 2>> pts;
      for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
          throw parse_error("pwl: each point must be a [x, y] pair");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      return piecewise_linear(std::move(pts));
    }
    if (kind == "conjugate") {
      if (!j.contains("inner") || !j.contains("by"))
        throw parse_error("conjugate: missing \"inner\" or \"by\"");
      return conjugate(from_json(j["inner"]), UnitAutomorphism::from_json(j["by"]));
    }
    if (kind == "from_automorphism") {
      if (!j.contains("psi")) throw parse_error("from_automorphism: missing \"psi\"");
      return from_automorphism(UnitAutomorphism::from_json(j["psi"]));
    }
  } catch (const argument_error& e) {
    throw parse_error(std::string("negation expression: ") + e.what());
  }
  throw parse_error("negation expression: unknown kind \"" + kind + "\"");
}

PropertyReport check_n1(const UnitNegation& n) {
  detail::StopWatch sw;
  PropertyReport r;
  r.property_id = "n1";
  r.grid_n = 1;
  r.grid_m = 2;
  r.pairs_tested = 2;
  double at0 = n.eval(0.0), at1 = n.eval(1.0);
  if (at0 != 1.0 || at1 != 0.0) {
    r.verdict = Verdict::fail;
    r.witness = ordered_json{{"N(0)", at0}, {"N(1)", at1}};
    r.max_error = std::max(std::fabs(at0 - 1.0), std::fabs(at1));
  }
  r.elapsed_ms = sw.ms();
  return r;
}

PropertyReport check_n2(const UnitNegation& n, int m, double eps) {
  detail::StopWatch sw;
  PropertyReport r;
  r.property_id = "n2";
  r.grid_n = 1;
  r.grid_m = m;
  auto axis = axis_grid(m);
  std::vector<double> vals(axis.size());
  for (size_t i = 0; i < axis.size(); ++i) vals[i] = n.eval(axis[i]);
  for (size_t i = 0; i < axis.size(); ++i) {
    for (size_t j = i + 1; j < axis.size(); ++j) {
      ++r.pairs_tested;
      double excess = vals[j] - vals[i];  // antitone: vals[j] <= vals[i]
      r.max_error = std::max(r.max_error, excess);
      if (excess > eps && !r.witness) {
        r.verdict = Verdict::fail;
        r.witness = ordered_json{
            {"x", axis[i]}, {"y", axis[j]}, {"N(x)", vals[i]}, {"N(y)", vals[j]}};
      }
    }
  }
  if (r.max_error < 0.0) r.max_error = 0.0;
  r.elapsed_ms = sw.ms();
  return r;
}

PropertyReport is_strong(const UnitNegation& n, int m, double eps) {
  detail::StopWatch sw;
  PropertyReport r;
  r.property_id = "strong";
  r.grid_n = 1;
  r.grid_m = m;
  for (double x : axis_grid(m)) {
    ++r.pairs_tested;
    double nn = n.eval(n.eval(x));
    double d = std::fabs(nn - x);
    r.max_error = std::max(r.max_error, d);
    if (d > eps && !r.witness) {
      r.verdict = Verdict::fail;
      r.witness = ordered_json{{"x", x}, {"N(N(x))", nn}};
    }
  }
  r.elapsed_ms = sw.ms();
  return r;
}

namespace {

// Shared refinement scan: largest variation across adjacent axis points at
// nested resolutions m, 2m-1, 4m-3, ... A jump keeps the variation from
// shrinking (ratio above 0.9 between every pair of consecutive levels).
struct JumpScan {
  bool suspected = false;
  double where = 0.0;
  double last_variation = 0.0;
};

template <class F>
JumpScan refine_scan(F&& f, int m, int levels) {
  JumpScan out;
  std::vector<double> variations;
  double where = 0.0;
  int mm = m;
  for (int level = 0; level < levels; ++level) {
    auto axis = axis_grid(mm);
    double best = 0.0;
    double best_at = 0.0;
    double prev = f(axis[0]);
    for (size_t i = 1; i < axis.size(); ++i) {
      double cur = f(axis[i]);
      double d = std::fabs(cur - prev);
      if (d > best) {
        best = d;
        best_at = axis[i - 1];
      }
      prev = cur;
    }
    variations.push_back(best);
    where = best_at;
    mm = 2 * mm - 1;
  }
  out.last_variation = variations.back();
  out.where = where;
  if (variations.front() == 0.0) return out;  // constant: continuous
  out.suspected = true;
  for (size_t i = 1; i < variations.size(); ++i) {
    if (variations[i] <= 0.9 * variations[i - 1]) {
      out.suspected = false;
      break;
    }
  }
  return out;
}

}  // namespace

PropertyReport is_strict(const UnitNegation& n, int m, double eps) {
  detail::StopWatch sw;
  PropertyReport r;
  r.property_id = "strict";
  r.grid_n = 1;
  r.grid_m = m;
  auto axis = axis_grid(m);
  double prev = n.eval(axis[0]);
  for (size_t i = 1; i < axis.size(); ++i) {
    ++r.pairs_tested;
    double cur = n.eval(axis[i]);
    if (!(cur < prev) && !r.witness) {
      r.verdict = Verdict::fail;
      r.witness = ordered_json{
          {"x", axis[i - 1]}, {"y", axis[i]}, {"N(x)", prev}, {"N(y)", cur}};
      r.max_error = std::max(r.max_error, cur - prev);
    }
    prev = cur;
  }
  JumpScan scan = refine_scan([&](double x) { return n.eval(x); }, m, 3);
  if (scan.suspected && !r.witness) {
    r.verdict = Verdict::fail;
    r.witness = ordered_json{{"suspected_jump_near", scan.where},
                             {"variation", scan.last_variation}};
  }
  if (r.verdict == Verdict::pass)
    r.note = "consistent with strict at resolution m=" + std::to_string(m);
  (void)eps;
  r.elapsed_ms = sw.ms();
  return r;
}

PropertyReport neg_leq(const UnitNegation& n1, const UnitNegation& n2, int m,
                       double eps) {
  detail::StopWatch sw;
  PropertyReport r;
  r.property_id = "neg-leq";
  r.grid_n = 1;
  r.grid_m = m;
  for (double x : axis_grid(m)) {
    ++r.pairs_tested;
    double a = n1.eval(x), b = n2.eval(x);
    double excess = a - b;
    r.max_error = std::max(r.max_error, excess);
    if (excess > eps && !r.witness) {
      r.verdict = Verdict::fail;
      r.witness = ordered_json{{"x", x}, {"N1(x)", a}, {"N2(x)", b}};
    }
  }
  if (r.max_error < 0.0) r.max_error = 0.0;
  r.elapsed_ms = sw.ms();
  return r;
}

EquilibriumResult equilibrium(const UnitNegation& n, double tol, int max_iter) {
  EquilibriumResult res;
  if (!n.continuous_hint()) {
    res.kind = EquilibriumResult::Kind::none;
    res.diagnostics = "expression has a jump separating N(x)-x's sign change; no fixed point";
    return res;
  }
  double lo = 0.0, hi = 1.0;
  double mid = 0.5;
  int it = 0;
  for (; it < max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double g = n.eval(mid) - mid;
    if (std::fabs(g) <= tol) break;
    if (g > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  res.iterations = it;
  res.point = mid;
  res.residual = std::fabs(n.eval(mid) - mid);
  if (res.residual <= tol) {
    res.kind = EquilibriumResult::Kind::point;
  } else {
    res.kind = EquilibriumResult::Kind::undetermined;
    res.diagnostics = "bisection did not reach the residual tolerance";
  }
  return res;
}

}  // namespace fnk
