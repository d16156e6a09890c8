#pragma once

#include <memory>

#include <json.hpp>

#include "fnk/common.hpp"
#include "fnk/interval.hpp"
#include "fnk/nd_negation.hpp"
#include "fnk/report.hpp"
#include "fnk/unit_automorphism.hpp"

namespace fnk {

// An automorphism of the simplex. Every order isomorphism of the simplex
// is a componentwise lift of a unit automorphism, so the expression kinds
// are the lift itself, its inverse, and the N-preserving construction.
class NDimAutomorphism {
 public:
  static NDimAutomorphism from_unit(UnitAutomorphism psi, int dim);

  // phi restricted to the subsimplex over [0, e] (a from_unit whose unit
  // part has domain [0, e]), completed to an N-preserving automorphism of
  // the whole simplex. Branches:
  //   x <= /e/          : phi(x)
  //   x >  /e/          : N(phi(N(x)))
  //   pi_i(x) <= e < pi_{i+1}(x)
  //                     : first i components from phi(x), the rest from
  //                       N(phi(N(x))) evaluated through the induced
  //                       unit negation
  // Requires strong_neg strong with a degenerate equilibrium /e/ matching
  // phi's domain.
  static NDimAutomorphism phi_n(const NDimAutomorphism& phi,
                                const NDimNegation& strong_neg);

  NDimAutomorphism inverse() const;

  int dim() const;
  double domain_hi() const;  // e for restricted lifts, otherwise 1

  NDInterval eval(const NDInterval& x) const;
  NDInterval operator()(const NDInterval& x) const { return eval(x); }

  nlohmann::json to_json() const;
  static NDimAutomorphism from_json(const nlohmann::json& j);

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit NDimAutomorphism(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// phi^-1 o N o phi as an expression.
NDimNegation conjugate_ndneg(const NDimNegation& nd, const NDimAutomorphism& by);

// Conjugating a representable negation by a lifted automorphism equals the
// representable lift of the componentwise conjugates; checked on the grid.
PropertyReport representable_conjugation_identity(const std::vector<UnitNegation>& negs,
                                                  const UnitAutomorphism& psi, int m,
                                                  double eps = kEps);

// The conjugate of the standard negation by phi; strong by construction.
NDimNegation strong_from_automorphism(const NDimAutomorphism& phi);

// Every strong negation is a conjugate of the standard one. Extracts the
// induced unit negation, builds the classical increasing bijection
// psi(x) = (1 + x - N(x)) / 2, and compares N against the conjugate of
// the standard negation by the lift of psi.
PropertyReport trillas_roundtrip(const NDimNegation& strong_neg, int m,
                                 double eps = kReconTol);

// With phi = lift of x^2, a strict negation sits strictly below its
// conjugate at every grid point whose components all lie in (0,1):
// margin > eps componentwise. Requires strict (or strong) sampling to pass.
PropertyReport strict_conjugation_gap(const NDimNegation& nd, int m,
                                      double eps = kEps);

// Commutation phi(N(x)) = N(phi(x)) on the grid.
PropertyReport is_nd_preserving(const NDimAutomorphism& phi, const NDimNegation& nd,
                                int m, double eps = kEps);

// A lifted automorphism preserves a representable negation exactly when
// the unit automorphism preserves every component. Runs both checks and
// reports whether the booleans agree (they must).
PropertyReport preserving_equivalence(const UnitAutomorphism& psi,
                                      const std::vector<UnitNegation>& negs, int m,
                                      double eps = kEps);

}  // namespace fnk
