#pragma once

#include "plnodal/annulus.hpp"

namespace plnodal {

// Interior node radii 0 < rho_1 < ... < rho_k < r_max; the sentinels 0 and
// r_max are implicit.
struct NodeVector {
  int k = 0;
  std::vector<double> radii;
};

// Throws on ordering or minimum-gap violations (gap >= 4 global elements).
void validate(const NodeVector& nodes, double r_max, double min_gap);

// A k-node glued candidate and its certificates.
struct NodalSolution {
  NodeVector nodes;
  Sign leading = Sign::plus;
  std::vector<AnnulusSolution> pieces;  // k+1, signs leading*(-1)^j
  std::vector<double> alphas;           // per-piece Nehari rescalings
  RadialFunction glued;
  double total_energy = 0.0;  // c_k estimate, sum of rescaled piece energies
  std::vector<double> h_at_one;  // per-piece Nehari pairings of the glue
  int node_count_observed = 0;
  std::vector<double> node_radii;    // observed crossings of the glued profile
  double glued_residual_sup = 0.0;   // weak residual on the full grid
  double glued_norm = 0.0;
  bool tail_ok = true;
  bool converged = false;
  int nm_iterations = 0;
  int polish_sweeps = 0;
};

// Concatenates alpha_j-scaled pieces with exact zeros at the shared nodes.
// Throws SignPatternViolationError when a piece is not (leading*(-1)^j)-signed.
RadialFunction assemble_candidate(const ProblemSpec& spec,
                                  const NodeVector& nodes,
                                  const std::vector<AnnulusSolution>& pieces,
                                  const std::vector<double>& alphas,
                                  Sign leading = Sign::plus);

// E(rho_1..rho_k) = sum_j c^{(-1)^j}(rho_j, rho_{j+1}).
double total_energy(const ProblemSpec& spec, const NodeVector& nodes,
                    const SolverConfig& config, Sign leading = Sign::plus);

// Minimizes E over ordered node vectors: Nelder-Mead in gauge-fixed log-gap
// coordinates from equal spacing, then a flux-matching polish of each node
// (the energy landscape is exponentially flat in the node positions once the
// bumps separate, while flux continuity still pins them).  Throws
// CollapseDetectedError when r_max cannot hold k nodes.
NodalSolution minimize_nodes(const ProblemSpec& spec, int k,
                             const SolverConfig& config,
                             Sign leading = Sign::plus);

// h_j(s) = <J'(glue scaled by s_j on annulus j), same> for j = 0..k.
// s must have k+1 positive components; zero pieces are refused.
std::vector<double> h_certificate(const ProblemSpec& spec,
                                  const NodalSolution& solution,
                                  const std::vector<double>& s);

// Sign changes of the nodal values, skipping entries below 1e-10 * max|u|;
// crossing radii by linear interpolation between the bracketing significant
// nodes.  Throws AllBelowThresholdError for a numerically zero profile.
struct NodeCount {
  int count = 0;
  std::vector<double> radii;
};
NodeCount count_nodes(const RadialFunction& u);

}  // namespace plnodal
