#pragma once

#include <cstdint>

namespace plnodal {

// All solver knobs in one place.  A fixed seed makes a run reproducible
// bit-for-bit (modulo the floating-point environment).
struct SolverConfig {
  // Discretization: element count across [0, r_max]; annuli get a
  // proportional share.  stretch is the last/first element width ratio.
  int grid_m = 2000;
  double stretch = 1.0;

  // Annulus descent.
  double grad_tol = 1e-8;    // sup-norm of the residual, relative to ||u||^{p-1}
  double nehari_tol = 1e-10; // |<J'(u),u>| / ||u||^p
  int max_iterations = 20000;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double initial_step = 1.0;

  // Seeded perturbation of the initial bump.
  std::uint64_t seed = 42;
  double init_noise = 1e-3;

  // Node-vector optimization.
  double nm_simplex_scale = 0.2;
  double nm_energy_tol = 1e-6;
  int nm_max_iterations = 200;
  bool flux_polish = true;
  double polish_grad_tol = 1e-12;
  int polish_max_sweeps = 12;
  double certificate_tau = 0.5;

  // Shooting oracle.
  double shot_rtol = 1e-10;
  double shot_atol = 1e-14;
  double shot_max_step = 0.01;
  double shot_start_radius = 1e-6;
  double decay_threshold = 1e-4;  // relative to max(1, |a|)
  double blowup_threshold = 1e6;
  double bisect_rel_width = 1e-10;
  double oracle_accept_threshold = 1e-3;  // closest-approach acceptance
  int sweep_points = 96;

  bool trace_energy = false;
};

}  // namespace plnodal
