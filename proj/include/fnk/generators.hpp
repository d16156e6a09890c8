#pragma once

#include <cstdint>

#include "fnk/nd_negation.hpp"
#include "fnk/unit_automorphism.hpp"
#include "fnk/unit_negation.hpp"

namespace fnk {

// Deterministic 64-bit generator (splitmix64) so results do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double next_unit();  // uniform in [0, 1)
 private:
  std::uint64_t state_;
};

// Derives an independent stream for item `index` of a seeded batch.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Random piecewise-linear automorphism with `knots` interior knots; knot
// positions keep a minimum gap so slopes stay bounded.
UnitAutomorphism gen_unit_automorphism(std::uint64_t seed, int knots = 5);

// Random piecewise-linear negation, endpoints pinned at (0,1) and (1,0).
UnitNegation gen_unit_negation(std::uint64_t seed, int knots = 5);

enum class NegationKind { random, strong, representable, non_representable };

// Seeded n-dimensional negation specimens:
//   random            - lift of one random piecewise-linear negation
//   strong            - conjugate of the standard negation by a random lift
//   representable     - lift of a random nondecreasing chain N1 <= ... <= Nn
//   non_representable - collapse of a random unit negation
NDimNegation gen_negation(std::uint64_t seed, NegationKind kind, int n);

}  // namespace fnk
