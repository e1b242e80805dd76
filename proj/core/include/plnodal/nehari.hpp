#pragma once

#include <utility>
#include <vector>

#include "plnodal/grid.hpp"

namespace plnodal {

// Result of projecting a ray {t u : t > 0} onto the Nehari set.
struct ScalingResult {
  double t_star = 1.0;
  RadialFunction projected;
  double energy_at_t_star = 0.0;
  std::vector<std::pair<double, double>> phi_samples;  // optional diagnostics
};

// phi(t) = <J'(tu), u> = t^{p-1}||u||^p - int f(r, tu) u r^{dim-1} dr.
// Throws ZeroInputError when ||u|| < 1e-14.
double phi(const ProblemSpec& spec, const RadialFunction& u, double t);

// Same quantity evaluated from precomputed ray moments (no reassembly).
double phi_from_moments(const ProblemSpec& spec, const RayMoments& m, double t);

// J(tu) from the same moments.
double energy_from_moments(const ProblemSpec& spec, const RayMoments& m,
                           double t);

// Finds the unique positive root of phi by geometric bracketing from t = 1
// and bisection to relative width 1e-12.  Throws NoSignChangeError if phi
// stays positive up to t = 1e8, ZeroInputError for u = 0.
ScalingResult project(const ProblemSpec& spec, const RadialFunction& u,
                      bool keep_samples = false);

// Sampled uniqueness diagnostics for the ray maximum.
struct UniqueMaxReport {
  int phi_sign_changes = 0;
  bool unimodal = false;
  double t_star = 1.0;
  std::vector<std::pair<double, double>> samples;  // (t, J(tu))

  bool ok() const { return phi_sign_changes == 1 && unimodal; }
};

// Samples phi and J(tu) on a log grid spanning [1e-3 t*, 1e3 t*] and counts
// sign changes / direction changes.  Throws ZeroInputError for u = 0.
UniqueMaxReport verify_unique_max(const ProblemSpec& spec,
                                  const RadialFunction& u, int samples = 129);

}  // namespace plnodal
