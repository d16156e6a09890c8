#pragma once

#include <array>
#include <memory>
#include <vector>

#include <json.hpp>

#include "fnk/common.hpp"
#include "fnk/report.hpp"

namespace fnk {

class UnitNegation;

// An automorphism of [0, hi]: continuous, strictly increasing, fixing the
// endpoints. hi is 1 unless the expression was rescaled to [0, e].
// Immutable expression tree, like UnitNegation.
class UnitAutomorphism {
 public:
  static UnitAutomorphism identity();
  static UnitAutomorphism power(double p);  // x^p, p > 0
  static UnitAutomorphism piecewise_linear(std::vector<std::array<double, 2>> points);
  static UnitAutomorphism compose(UnitAutomorphism outer, UnitAutomorphism inner);
  // Adapts an automorphism of [0,1] to [0,e]: x -> e * a(x/e).
  static UnitAutomorphism rescaled(UnitAutomorphism inner, double e);
  // The N-preserving automorphism built from rho on [0,e]:
  //   x <= e: rho(x);  x > e: N(rho(N(x))).
  // Requires N strong (sampled) with equilibrium e matching rho's domain.
  static UnitAutomorphism rho_n(UnitAutomorphism rho, const UnitNegation& n);

  // Inverse(Inverse(a)) collapses to a. Evaluation of an inverse node uses
  // closed forms for identity/power/piecewise-linear and bisection otherwise.
  UnitAutomorphism inverse() const;

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  double domain_hi() const;

  nlohmann::json to_json() const;
  static UnitAutomorphism from_json(const nlohmann::json& j);

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit UnitAutomorphism(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// The conjugate negation rho^-1(N(rho(x))).
UnitNegation conjugate_unary(const UnitNegation& n, const UnitAutomorphism& rho);

// Commutation rho(N(x)) = N(rho(x)) sampled on the axis grid.
PropertyReport is_n_preserving(const UnitAutomorphism& rho, const UnitNegation& n,
                               int m, double eps = kEps);

}  // namespace fnk
