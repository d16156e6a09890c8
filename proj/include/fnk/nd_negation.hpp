#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "fnk/common.hpp"
#include "fnk/interval.hpp"
#include "fnk/report.hpp"
#include "fnk/unit_negation.hpp"

namespace fnk {

class NDimAutomorphism;

// Fixed-point search result on the simplex.
struct NDEquilibriumResult {
  enum class Kind { point, none, undetermined } kind = Kind::undetermined;
  std::optional<NDInterval> point;
  double residual = 0.0;
  int iterations = 0;
  std::string diagnostics;
};

// An n-dimensional fuzzy negation: antitone, swapping /0/ and /1/.
// Expression kinds:
//   representable  - componentwise lift (N1,...,Nn), component i applies
//                    N_i to projection n-i+1; requires N1 <= ... <= Nn
//   collapse       - x -> /N(pi_n(x))/, the canonical non-representable shape
//   bottom / top   - the least and greatest negations (both with jumps)
//   conjugate      - phi^-1 o N o phi for an n-dimensional automorphism phi
//   strong_from_auto - the conjugate of the standard negation by phi
class NDimNegation {
 public:
  static NDimNegation representable(std::vector<UnitNegation> negs);
  static NDimNegation representable(const UnitNegation& n, int dim);
  static NDimNegation standard(int dim);  // representable lift of 1-x
  static NDimNegation collapse(const UnitNegation& n, int dim);
  static NDimNegation bottom(int dim);
  static NDimNegation top(int dim);
  static NDimNegation conjugate(NDimNegation inner, const NDimAutomorphism& by);
  static NDimNegation strong_from_auto(const NDimAutomorphism& phi);

  int dim() const;

  NDInterval eval(const NDInterval& x) const;
  NDInterval operator()(const NDInterval& x) const { return eval(x); }

  bool continuous_hint() const;

  nlohmann::json to_json() const;
  static NDimNegation from_json(const nlohmann::json& j);

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit NDimNegation(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct RepresentabilityVerdict {
  bool representable = false;
  bool subset_monotone = false;       // verdict of the order-theoretic scan
  bool reconstructs = false;          // verdict of extract-and-rebuild
  bool deciders_agree = false;        // the two routes must coincide
  std::optional<std::vector<UnitNegation>> extracted;
  double max_reconstruction_error = 0.0;
  std::optional<ordered_json> witness;  // (x, y, i) violating monotonicity
};

// The i-th induced negation evaluated exactly: pi_i(N(/t/)). 1-based i.
double induced_eval(const NDimNegation& nd, int i, double t);

// The induced negations tabulated as piecewise-linear curves.
std::vector<UnitNegation> induced_negations(const NDimNegation& nd,
                                            int resolution = kDefaultTabulation);

// Containment monotonicity for one index i (1 <= i < n): whenever
// x is an (n-i)-subset of y, N(x) must be an i-subset of N(y).
PropertyReport is_subset_monotone_i(const NDimNegation& nd, int i, int m,
                                    double eps = kEps,
                                    std::uint64_t sample_seed = 0);

// All indices at once.
PropertyReport is_subset_monotone(const NDimNegation& nd, int m, double eps = kEps,
                                  std::uint64_t sample_seed = 0);

// Projection monotonicity: pi_i(N(x)) <= pi_i(N(y)) whenever
// pi_{n-i+1}(x) >= pi_{n-i+1}(y).
PropertyReport is_monotone_by_part(const NDimNegation& nd, int m, double eps = kEps,
                                   std::uint64_t sample_seed = 0);

// Decides representability two independent ways and cross-checks them:
// the subset-monotonicity scan, and extraction of the induced negations
// followed by reconstruction on the same grid.
RepresentabilityVerdict decide_representability(const NDimNegation& nd, int m,
                                                double eps = kEps,
                                                double recon_tol = kReconTol);

// Involution on the grid.
PropertyReport is_strong_nd(const NDimNegation& nd, int m, double eps = kEps);

// Strict decrease on comparable grid pairs plus the jump heuristic.
PropertyReport is_strict_nd(const NDimNegation& nd, int m, double eps = kEps);

// Boundary checks N(/0/) = /1/, N(/1/) = /0/ (exact).
PropertyReport check_n1_nd(const NDimNegation& nd);

// Antitonicity over comparable grid pairs.
PropertyReport check_n2_nd(const NDimNegation& nd, int m, double eps = kEps);

// Degeneracy preservation: diagonals map to (numerically) degenerate points.
PropertyReport check_dp(const NDimNegation& nd, int m, double eps = kEps);

// Strong negations keep non-degenerate points non-degenerate. Requires
// is_strong_nd to pass. The output spread must exceed eps whenever the
// input spread exceeds one grid step; the corner points (0..0,1..1) are
// checked explicitly.
PropertyReport no_degenerate_image(const NDimNegation& nd, int m, double eps = kEps);

// De Morgan duality for strong negations: N(x v y) = N(x) ^ N(y) and
// N(x ^ y) = N(x) v N(y), plus N(x) = /1/ iff x = /0/ and dually.
PropertyReport lattice_duality(const NDimNegation& nd, int m, double eps = kEps);

// Pointwise order N1 <= N2 on the grid.
PropertyReport preceq(const NDimNegation& n1, const NDimNegation& n2, int m,
                      double eps = kEps);

// Structured fixed-point search: the diagonal candidate first, then (for
// representable expressions) the tuple of per-component equilibria. Every
// candidate is verified by residual; no general n-dimensional solver.
NDEquilibriumResult nd_equilibrium(const NDimNegation& nd, double tol = kSolverTol,
                                   int max_iter = kMaxBisection);

}  // namespace fnk
