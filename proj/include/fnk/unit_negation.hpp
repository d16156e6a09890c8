#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "fnk/common.hpp"
#include "fnk/report.hpp"

namespace fnk {

class UnitAutomorphism;

// Result of a fixed-point search for N(x) = x on [0,1].
struct EquilibriumResult {
  enum class Kind { point, none, undetermined } kind = Kind::undetermined;
  double point = 0.0;     // meaningful when kind == point
  double residual = 0.0;  // |N(point) - point|
  int iterations = 0;
  std::string diagnostics;
};

// A fuzzy negation on [0,1], represented as an immutable expression tree.
// Every constructible expression satisfies the boundary conditions
// N(0) = 1, N(1) = 0 and antitonicity, except trees built through the
// _unchecked fixture hook, which exist so the checkers have something
// to catch.
class UnitNegation {
 public:
  static UnitNegation standard();                  // 1 - x
  static UnitNegation bottom();                    // 1 at 0, else 0
  static UnitNegation top();                       // 0 at 1, else 1
  static UnitNegation ck(int n, int k);            // (1 - x^(n-k+1))^(1/(n-k+1))
  static UnitNegation cup_k(int k);                // 1 - x^k, k >= 1
  static UnitNegation piecewise_linear(std::vector<std::array<double, 2>> points);
  static UnitNegation piecewise_linear_unchecked(std::vector<std::array<double, 2>> points);
  static UnitNegation conjugate(UnitNegation inner, const UnitAutomorphism& by);
  static UnitNegation from_automorphism(const UnitAutomorphism& psi);

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  // False only for expressions with a known jump (bottom/top and their
  // conjugates); used to gate the equilibrium solver.
  bool continuous_hint() const;

  nlohmann::json to_json() const;
  static UnitNegation from_json(const nlohmann::json& j);

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit UnitNegation(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Boundary conditions, checked exactly at the endpoints.
PropertyReport check_n1(const UnitNegation& n);

// Antitonicity over all ordered axis-grid pairs, with eps slack on values.
PropertyReport check_n2(const UnitNegation& n, int m, double eps = kEps);

// Involution N(N(x)) = x sampled on the axis grid.
PropertyReport is_strong(const UnitNegation& n, int m, double eps = kEps);

// Strict decrease between adjacent grid points plus a jump heuristic.
// A pass is "consistent with strict at resolution m", never a proof.
PropertyReport is_strict(const UnitNegation& n, int m, double eps = kEps);

// Pointwise order N1 <= N2 on the axis grid.
PropertyReport neg_leq(const UnitNegation& n1, const UnitNegation& n2, int m,
                       double eps = kEps);

// Bisection on N(x) - x. Continuous expressions converge to the unique
// fixed point; expressions with a jump have none and report that.
EquilibriumResult equilibrium(const UnitNegation& n, double tol = kSolverTol,
                              int max_iter = kMaxBisection);

}  // namespace fnk
