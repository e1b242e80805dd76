#pragma once

#include <memory>
#include <string>
#include <vector>

#include "plnodal/problem.hpp"

namespace plnodal {

// One-dimensional P1 mesh of an annulus [rho, sigma] with per-element Gauss
// quadrature carrying the surface factor r^{dim-1}.  Immutable after
// construction and safe to share across workers.
struct RadialGrid {
  int dim = 1;
  double rho = 0.0;
  double sigma = 1.0;
  bool dirichlet_left = false;
  bool dirichlet_right = true;

  std::vector<double> nodes;     // m+1, strictly increasing
  std::vector<double> gauss_xi;  // quadrature positions on (0, 1)
  std::vector<double> qp_r;      // element-major, nq per element
  std::vector<double> qp_w;      // matching weights, including r^{dim-1}

  int element_count() const { return static_cast<int>(nodes.size()) - 1; }
  int points_per_element() const { return static_cast<int>(gauss_xi.size()); }
  double width(int e) const { return nodes[e + 1] - nodes[e]; }
};

// Graded mesh with stretch = ratio of last to first element width.  The
// quadrature order grows with dim so that r^{dim-1} times a linear factor is
// integrated exactly per element.  Dirichlet flags default to the annulus
// convention: constrained at rho when rho > 0, always constrained at sigma.
RadialGrid build_grid(int dim, double rho, double sigma, int m,
                      double stretch = 1.0);
RadialGrid build_grid(int dim, double rho, double sigma, int m, double stretch,
                      bool dirichlet_left, bool dirichlet_right);
std::shared_ptr<const RadialGrid> make_grid(int dim, double rho, double sigma,
                                            int m, double stretch = 1.0);

// Grid over an explicit strictly increasing node list.
RadialGrid grid_from_nodes(int dim, std::vector<double> nodes,
                           bool dirichlet_left, bool dirichlet_right);

// Glue consecutive annulus grids (shared interface nodes) into one grid over
// [pieces.front().rho, pieces.back().sigma].
RadialGrid concat_grids(const std::vector<const RadialGrid*>& pieces);

// Nodal values of a radial profile on a shared grid.
struct RadialFunction {
  std::shared_ptr<const RadialGrid> grid;
  std::vector<double> values;
};

RadialFunction zero_function(std::shared_ptr<const RadialGrid> grid);

// J(u) = int [ (1/p)|u'|^p + (1/p)|u|^p - F(r,u) ] r^{dim-1} dr with u
// piecewise linear.  J(0) = 0 exactly.
double energy(const ProblemSpec& spec, const RadialFunction& u);

// <J'(u), v> = int [ |u'|^{p-2}u'v' + |u|^{p-2}uv - f(r,u)v ] r^{dim-1} dr.
double pairing(const ProblemSpec& spec, const RadialFunction& u,
               const RadialFunction& v);

// Weak-form gradient: pairings against the nodal hat basis, with
// Dirichlet-constrained entries zeroed.
RadialFunction residual(const ProblemSpec& spec, const RadialFunction& u);

// ( int (|u'|^p + |u|^p) r^{dim-1} dr )^{1/p}.
double norm_w1p(const RadialFunction& u, double p);

// Moments of the ray t -> t*u: ||u||^p and the source integrals
// int lambda_i(r) |u|^{q_i} r^{dim-1} dr, one per term.  With these,
// <J'(tu), u> = t^{p-1}||u||^p - sum_i t^{q_i-1} B_i and J(tu) follows in
// closed form.
struct RayMoments {
  double norm_pow_p = 0.0;
  std::vector<double> source;

  double total_source() const;
};
RayMoments ray_moments(const ProblemSpec& spec, const RadialFunction& u);

// True when the profile is negligible on the outer fraction of the grid
// (|u| <= rel * max|u|); a failed check means the truncation radius is
// doing real work.
bool tail_clear(const RadialFunction& u, double fraction = 0.1,
                double rel = 1e-6);

// CSV with header "r,u", one full-precision row per node.
std::string to_csv(const RadialFunction& u);

}  // namespace plnodal
