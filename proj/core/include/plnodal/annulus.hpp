#pragma once

#include <map>
#include <optional>
#include <tuple>

#include "plnodal/config.hpp"
#include "plnodal/nehari.hpp"

namespace plnodal {

// A one-signed Nehari ground state on the annulus [rho, sigma].
struct AnnulusSolution {
  double rho = 0.0, sigma = 1.0;
  Sign sign = Sign::plus;
  RadialFunction profile;
  double energy = 0.0;           // c^{sign}(rho, sigma) estimate
  double norm = 0.0;             // ||profile||_{W^{1,p}}
  double nehari_residual = 0.0;  // |<J'(u),u>| / ||u||^p
  double grad_residual = 0.0;    // sup-norm of the weak-form residual
  int iterations = 0;
  bool converged = false;
  std::vector<double> energy_history;  // filled when config.trace_energy
};

// Sign-constrained, Nehari-projected descent from a seeded bump.  Boundary
// conditions: zero Dirichlet at rho when rho > 0 and always at sigma (the
// truncation radius carries a Dirichlet condition).  On hitting the
// iteration cap the best iterate is returned flagged non-converged.
// Throws DegenerateAnnulusError when sigma - rho is shorter than four
// elements of the global grid.
AnnulusSolution solve_ground_state(const ProblemSpec& spec, double rho,
                                   double sigma, Sign sign,
                                   const SolverConfig& config,
                                   const RadialFunction* warm_start = nullptr,
                                   double grad_tol_override = 0.0);

// Convenience wrapper returning only the energy.
double energy_map(const ProblemSpec& spec, double rho, double sigma, Sign sign,
                  const SolverConfig& config);

// Empirical version of the ground-state lower bound: the Nehari identity
// ratio ||u||^p / int u f(r,u) and the implied delta = ||u||.
struct DeltaBound {
  double delta = 0.0;
  double ratio = 0.0;
};
DeltaBound delta_lower_bound(const ProblemSpec& spec,
                             const AnnulusSolution& solution);

// Memoized annulus solves for one nodal run: cache keyed on rounded radii
// and sign, warm starts keyed on the piece index.  Single-owner use;
// concurrent callers need one cache each.
class AnnulusCache {
 public:
  AnnulusCache(const ProblemSpec& spec, const SolverConfig& config);

  const AnnulusSolution& solve(double rho, double sigma, Sign sign,
                               int piece_index = -1,
                               double grad_tol_override = 0.0);
  double energy(double rho, double sigma, Sign sign, int piece_index = -1);

  std::size_t size() const { return memo_.size(); }

 private:
  using Key = std::tuple<long long, long long, int, int>;
  Key key(double rho, double sigma, Sign sign, double tol) const;

  const ProblemSpec& spec_;
  const SolverConfig& config_;
  std::map<Key, AnnulusSolution> memo_;
  std::map<int, RadialFunction> warm_;
};

}  // namespace plnodal
