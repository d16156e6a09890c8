#pragma once

#include <stdexcept>
#include <string>

namespace fnk {

// Shared numeric policy. Function-value comparisons use eps; root solvers
// use solver_tol; reconstruction comparisons stack two evaluations and get
// the wider recon_tol. Values slightly outside [0,1] produced by rounding
// are clamped within clamp_slack; anything larger is treated as a bug.
inline constexpr double kEps = 1e-9;
inline constexpr double kSolverTol = 1e-12;
inline constexpr double kReconTol = 1e-7;
inline constexpr double kClampSlack = 1e-12;
inline constexpr int kMaxBisection = 200;
inline constexpr int kDefaultTabulation = 101;
inline constexpr long long kPairCap = 2'000'000;

// Raised for arguments outside a function's domain or failed preconditions.
class argument_error : public std::invalid_argument {
 public:
  explicit argument_error(const std::string& what) : std::invalid_argument(what) {}
};

// Raised for malformed textual or JSON input.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an input file's rows fail validation.
class ingestion_error : public std::runtime_error {
 public:
  explicit ingestion_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fnk
