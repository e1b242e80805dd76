#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "plnodal/nodal.hpp"
#include "plnodal/shooting.hpp"

namespace plnodal {

// Exit-code contract shared by all subcommands:
//   0 converged, 1 usage or spec error, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

struct SolveArgs {
  double p = 2.0;
  int dim = 1;
  std::vector<double> q;       // repeatable; one term per entry
  std::vector<double> lambda;  // optional, defaults to 1 per term
  int k = 0;
  double rmax = 40.0;
  int grid = 2000;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::string out;  // empty: $PLNODAL_OUT or ./plnodal_out
  bool leading_minus = false;
  std::optional<std::pair<double, double>> cross_check;  // oracle bracket
};

struct OracleArgs {
  double p = 2.0;
  int dim = 1;
  std::vector<double> q;
  std::vector<double> lambda;
  int k = 0;
  double amin = 0.1;
  double amax = 10.0;
  double rmax = 40.0;
  double tol = 1e-10;
  int sweep = 33;
  std::string out;
};

struct CheckArgs {
  double p = 2.0;
  int dim = 1;
  std::vector<double> q;
  std::vector<double> lambda;
  double rmax = 40.0;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string report_json;  // contents written to report.json (may be empty)
  std::string message;      // human-readable summary
};

ProblemSpec spec_from_args(double p, int dim, double rmax,
                           const std::vector<double>& q,
                           const std::vector<double>& lambda);

// Writes report.json, profile.csv and profile.dat into the output directory;
// every emitted residual, certificate and node count is recomputed from the
// profile at emission time.
RunOutcome run_solve(const SolveArgs& args);

// Amplitude sweep CSV plus the bisection record; a failed bracket exits 2
// with the sweep still written for diagnosis.
RunOutcome run_oracle(const OracleArgs& args);

// Prints the assumption table, including the (AR) exponent.
RunOutcome run_check(const CheckArgs& args);

}  // namespace plnodal
