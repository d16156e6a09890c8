#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fnk/nd_automorphism.hpp"
#include "fnk/nd_negation.hpp"
#include "fnk/report.hpp"

namespace fnk {

// Knobs shared by the theorem suites. Pair scans use m_pair, pointwise
// scans m_point; trials counts seeded specimens per dimension.
struct SuiteConfig {
  std::vector<int> dims{2, 3};
  int m_pair = 11;
  int m_point = 41;
  int trials = 50;
  std::uint64_t seed = 0;
  double eps = kEps;
  double recon_tol = kReconTol;
  double solver_tol = kSolverTol;

  ordered_json to_json() const;
};

// Sampling heuristic for jumps: evaluates on nested grids (m, 2m-1, 4m-3,
// ...) and flags a suspected jump when the largest variation across
// adjacent grid points fails to shrink with the mesh (ratio > 0.9 between
// consecutive levels). A pass is evidence, not a proof, of continuity.
PropertyReport discontinuity_heuristic(const NDimNegation& nd, int m, int levels = 3);
PropertyReport discontinuity_heuristic(const NDimAutomorphism& phi, int m, int levels = 3);

// Names accepted by run_suite; "all" runs everything.
const std::vector<std::string>& suite_names();

// Runs one named suite of property checks. Deterministic for a fixed
// (config, seed); the worker cap (FNK_THREADS) never changes results.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

}  // namespace fnk
