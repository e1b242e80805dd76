#pragma once

#include "plnodal/config.hpp"
#include "plnodal/grid.hpp"

namespace plnodal {

enum class Terminal { decayed, blew_up, oscillating, reached_rmax };
const char* terminal_label(Terminal t);

struct ShotSample {
  double r, u, w;  // w = r^{dim-1} |u'|^{p-2} u' (the flux variable)
};

// One integrated trajectory of the radial equation, as a first-order system
// in (u, w); u(0) = amplitude and w(0) = 0 by radial symmetry.
struct ShotTrajectory {
  double amplitude = 0.0;
  std::vector<ShotSample> samples;
  int node_count = 0;
  std::vector<double> crossings;
  Terminal terminal = Terminal::reached_rmax;
  double terminal_radius = 0.0;
};

// Integrates u' = sgn(w)(|w|/r^{dim-1})^{1/(p-1)},
// w' = r^{dim-1}(|u|^{p-2}u - f(r,u)) with an adaptive embedded 5(4) pair
// from r = h0 = config.shot_start_radius, starting on the flat expansion
// u(h0) = a, w(h0) = h0^dim (|a|^{p-2}a - f(0,a)) / dim.  Terminal events:
// decay (|u| and |u'| below the decay threshold), blow-up (|u| > 1e6), and
// a local minimum of |u| below the crossing barrier (oscillating).
// Throws StepFailureError if the step size underflows.
ShotTrajectory shoot(const ProblemSpec& spec, double a,
                     const SolverConfig& config);

// u' recovered from the flux variable.
double slope_from_flux(const ProblemSpec& spec, double r, double w);

struct OracleResult {
  double amplitude = 0.0;  // u(0) of the returned trajectory
  ShotTrajectory trajectory;
  double energy = 0.0;  // quadrature of the trajectory on its sample grid
  bool arc = false;     // assembled from one quarter arc (flat problems)
  int bisection_iterations = 0;
};

// Finds a profile with exactly k sign changes that decays (or, on the
// truncated domain, meets the Dirichlet condition) before r_max.
//
// dim >= 2 or k = 0: bisects the initial amplitude on the node count over
// [a_lo, a_hi] to relative width 1e-10, then truncates the k-count endpoint
// trajectory at its closest approach to the origin.
//
// dim = 1, k >= 1: no decaying k-node orbit exists (the phase-plane level is
// conserved), and any trajectory threading a near-origin passage of length L
// amplifies integration error by e^L in either direction, so neither forward
// nor backward shooting can reach the truncated-domain solution at useful
// r_max.  The problem is autonomous, though: shooting OUT of a crossing
// (u, u') = (0, s) is stable, the quarter-period tq(s) to the next extreme
// is monotone in s, and the k-node Dirichlet solution is the reflection glue
// of that single arc with (2k+1) tq = r_max.  [a_lo, a_hi] brackets the
// crossing slope s.  Requires weight-free f (autonomy).
//
// Throws BracketInvalidError / NoDecayError.
OracleResult find_k_node_profile(const ProblemSpec& spec, int k, double a_lo,
                                 double a_hi, const SolverConfig& config);

// Energy of the sampled trajectory evaluated with the P1 quadrature.
double trajectory_energy(const ProblemSpec& spec, const ShotTrajectory& t);

}  // namespace plnodal
