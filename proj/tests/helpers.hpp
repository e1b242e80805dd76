#pragma once

#include <cmath>
#include <random>

#include "plnodal/grid.hpp"

namespace testutil {

inline plnodal::RadialFunction sampled(
    std::shared_ptr<const plnodal::RadialGrid> grid,
    const std::function<double(double)>& f) {
  plnodal::RadialFunction u;
  u.values.reserve(grid->nodes.size());
  for (double r : grid->nodes) u.values.push_back(f(r));
  u.grid = std::move(grid);
  if (u.grid->dirichlet_left) u.values.front() = 0.0;
  if (u.grid->dirichlet_right) u.values.back() = 0.0;
  return u;
}

// sqrt(2) sech(r), the flat-problem homoclinic profile.
inline plnodal::RadialFunction soliton(int m, double rmax = 40.0) {
  return sampled(plnodal::make_grid(1, 0.0, rmax, m),
                 [](double r) { return std::sqrt(2.0) / std::cosh(r); });
}

// Smooth random bump combination, respecting the grid boundary conditions.
inline plnodal::RadialFunction random_profile(
    std::shared_ptr<const plnodal::RadialGrid> grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double pi = 3.14159265358979323846;
  const auto& g = *grid;
  double c[5];
  for (double& x : c) x = coef(rng);
  auto f = [&](double r) {
    const double xi = (r - g.rho) / (g.sigma - g.rho);
    double acc = g.dirichlet_left ? 0.0 : 0.8 * c[4] * std::cos(0.5 * pi * xi);
    for (int m = 1; m <= 4; ++m) acc += c[m - 1] / m * std::sin(m * pi * xi);
    return acc;
  };
  auto u = sampled(grid, f);
  double norm = plnodal::norm_w1p(u, 2.0);
  if (norm < 0.2) {  // regenerate deterministically on a degenerate draw
    for (double& v : u.values) v += 0.5;
    if (u.grid->dirichlet_left) u.values.front() = 0.0;
    if (u.grid->dirichlet_right) u.values.back() = 0.0;
  }
  return u;
}

}  // namespace testutil
