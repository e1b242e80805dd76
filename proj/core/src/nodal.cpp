#include "plnodal/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "plnodal/nelder_mead.hpp"

namespace plnodal {

namespace {

Sign piece_sign(Sign leading, int j) {
  return (j % 2 == 0) ? leading : opposite(leading);
}

std::vector<double> fences(const NodeVector& nodes, double r_max) {
  std::vector<double> f;
  f.push_back(0.0);
  f.insert(f.end(), nodes.radii.begin(), nodes.radii.end());
  f.push_back(r_max);
  return f;
}

// Gauge-fixed log-gap coordinates: gaps proportional to
// (e^{x_0}, ..., e^{x_{k-1}}, 1), normalized to fill [0, r_max].
NodeVector nodes_from_gauge(const std::vector<double>& x, double r_max) {
  const int k = static_cast<int>(x.size());
  std::vector<double> w(k + 1);
  double total = 1.0;
  for (int i = 0; i < k; ++i) {
    w[i] = std::exp(std::clamp(x[i], -30.0, 30.0));
    total += w[i];
  }
  w[k] = 1.0;
  NodeVector nv;
  nv.k = k;
  double cum = 0.0;
  for (int i = 0; i < k; ++i) {
    cum += w[i];
    nv.radii.push_back(r_max * cum / total);
  }
  return nv;
}

double edge_slope_left(const AnnulusSolution& s) {
  const auto& g = *s.profile.grid;
  return (s.profile.values[1] - s.profile.values[0]) / g.width(0);
}

double edge_slope_right(const AnnulusSolution& s) {
  const auto& g = *s.profile.grid;
  const int m = g.element_count();
  return (s.profile.values[m] - s.profile.values[m - 1]) / g.width(m - 1);
}

}  // namespace

void validate(const NodeVector& nodes, double r_max, double min_gap) {
  if (nodes.k != static_cast<int>(nodes.radii.size()))
    throw std::invalid_argument("NodeVector: k does not match radii length");
  double prev = 0.0;
  for (double r : nodes.radii) {
    if (!(r > prev))
      throw std::invalid_argument("NodeVector: radii must be strictly increasing in (0, r_max)");
    if (r - prev < min_gap)
      throw CollapseDetectedError("NodeVector: gap below four grid elements");
    prev = r;
  }
  if (!(prev < r_max))
    throw std::invalid_argument("NodeVector: radii must stay below r_max");
  if (r_max - prev < min_gap)
    throw CollapseDetectedError("NodeVector: outer gap below four grid elements");
}

NodeCount count_nodes(const RadialFunction& u) {
  double amax = 0.0;
  for (double v : u.values) amax = std::max(amax, std::abs(v));
  if (amax <= 0.0)
    throw AllBelowThresholdError("count_nodes: profile is identically zero");
  const double thr = 1e-10 * amax;

  NodeCount out;
  int last_sign = 0;
  std::size_t last_idx = 0;
  bool any = false;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double v = u.values[i];
    if (std::abs(v) <= thr) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) {
      const double r0 = u.grid->nodes[last_idx], v0 = u.values[last_idx];
      const double r1 = u.grid->nodes[i], v1 = v;
      out.radii.push_back(r0 + v0 * (r1 - r0) / (v0 - v1));
      ++out.count;
    }
    last_sign = s;
    last_idx = i;
    any = true;
  }
  if (!any)
    throw AllBelowThresholdError("count_nodes: all values below threshold");
  return out;
}

RadialFunction assemble_candidate(const ProblemSpec& spec,
                                  const NodeVector& nodes,
                                  const std::vector<AnnulusSolution>& pieces,
                                  const std::vector<double>& alphas,
                                  Sign leading) {
  const int k = nodes.k;
  if (static_cast<int>(pieces.size()) != k + 1 ||
      static_cast<int>(alphas.size()) != k + 1)
    throw std::invalid_argument("assemble_candidate: need k+1 pieces and alphas");
  const auto f = fences(nodes, spec.r_max());
  std::vector<const RadialGrid*> grids;
  for (int j = 0; j <= k; ++j) {
    const AnnulusSolution& pc = pieces[j];
    if (!(alphas[j] > 0.0))
      throw std::invalid_argument("assemble_candidate: alphas must be positive");
    if (std::abs(pc.rho - f[j]) > 1e-9 * spec.r_max() ||
        std::abs(pc.sigma - f[j + 1]) > 1e-9 * spec.r_max())
      throw std::invalid_argument("assemble_candidate: piece radii do not match nodes");
    const double want = sign_value(piece_sign(leading, j));
    double amax = 0.0, worst = 0.0;
    for (double v : pc.profile.values) {
      amax = std::max(amax, std::abs(v));
      worst = std::min(worst, want * v);
    }
    if (worst < -1e-12 * std::max(amax, 1.0)) {
      std::ostringstream os;
      os << "assemble_candidate: piece " << j << " is not "
         << sign_label(piece_sign(leading, j)) << "-signed";
      throw SignPatternViolationError(os.str());
    }
    grids.push_back(pc.profile.grid.get());
  }

  auto glued_grid = std::make_shared<const RadialGrid>(concat_grids(grids));
  RadialFunction glued;
  glued.grid = glued_grid;
  glued.values.reserve(glued_grid->nodes.size());
  for (int j = 0; j <= k; ++j) {
    const auto& vals = pieces[j].profile.values;
    const std::size_t start = (j == 0) ? 0 : 1;
    for (std::size_t i = start; i < vals.size(); ++i)
      glued.values.push_back(alphas[j] * vals[i]);
  }
  // exact zeros at the shared Dirichlet nodes
  std::size_t at = 0;
  for (int j = 0; j < k; ++j) {
    at += pieces[j].profile.values.size() - 1;
    glued.values[at] = 0.0;
  }
  glued.values.back() = 0.0;
  return glued;
}

double total_energy(const ProblemSpec& spec, const NodeVector& nodes,
                    const SolverConfig& config, Sign leading) {
  validate(nodes, spec.r_max(), 4.0 * spec.r_max() / config.grid_m);
  AnnulusCache cache(spec, config);
  const auto f = fences(nodes, spec.r_max());
  double total = 0.0;
  for (int j = 0; j <= nodes.k; ++j)
    total += cache.energy(f[j], f[j + 1], piece_sign(leading, j), j);
  return total;
}

std::vector<double> h_certificate(const ProblemSpec& spec,
                                  const NodalSolution& solution,
                                  const std::vector<double>& s) {
  const int k = solution.nodes.k;
  if (static_cast<int>(s.size()) != k + 1)
    throw std::invalid_argument("h_certificate: need k+1 scalings");
  std::vector<double> h(k + 1);
  for (int j = 0; j <= k; ++j) {
    if (!(s[j] > 0.0))
      throw std::invalid_argument("h_certificate: scalings must be positive");
    const AnnulusSolution& pc = solution.pieces[j];
    if (pc.norm < 1e-14)
      throw ZeroInputError("h_certificate: zero piece");
    RadialFunction v = pc.profile;
    const double c = s[j] * solution.alphas[j];
    for (double& x : v.values) x *= c;
    h[j] = pairing(spec, v, v);
  }
  return h;
}

namespace {

// One flux-matching bisection for node i (separating pieces i-1 and i).
// S(rho) = ln|du/dr at rho-| - ln|du/dr at rho+| is decreasing in rho; its
// root is the position where the glued profile solves the equation across
// the node.  Returns the new radius.
double polish_node(const ProblemSpec& spec, AnnulusCache& cache, Sign leading,
                   std::vector<double>& f, int i, double min_gap, double tol,
                   double width_tol) {
  const double left_fence = f[i - 1], right_fence = f[i + 1];
  auto S = [&](double rho) {
    const AnnulusSolution& left =
        cache.solve(left_fence, rho, piece_sign(leading, i - 1), i - 1, tol);
    const AnnulusSolution& right =
        cache.solve(rho, right_fence, piece_sign(leading, i), i, tol);
    const double sl = std::abs(edge_slope_right(left));
    const double sr = std::abs(edge_slope_left(right));
    return std::log(sl + 1e-300) - std::log(sr + 1e-300);
  };

  double lo = std::max(left_fence + min_gap, f[i] - 0.45 * (f[i] - left_fence));
  double hi =
      std::min(right_fence - min_gap, f[i] + 0.45 * (right_fence - f[i]));
  if (!(lo < hi)) return f[i];
  double slo = S(lo), shi = S(hi);
  if (slo <= 0.0) return std::abs(slo) <= std::abs(shi) ? lo : f[i];
  if (shi >= 0.0) return std::abs(shi) <= std::abs(slo) ? hi : f[i];
  while (hi - lo > width_tol) {
    const double mid = 0.5 * (lo + hi);
    (S(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

NodalSolution minimize_nodes(const ProblemSpec& spec, int k,
                             const SolverConfig& config, Sign leading) {
  if (k < 0) throw std::invalid_argument("minimize_nodes: k >= 0 required");
  const double r_max = spec.r_max();
  const double min_gap = 4.0 * r_max / config.grid_m;
  if ((k + 1) * min_gap >= r_max)
    throw CollapseDetectedError(
        "minimize_nodes: r_max cannot hold k+1 annuli of four elements");

  AnnulusCache cache(spec, config);

  NodalSolution sol;
  sol.leading = leading;
  sol.nodes.k = k;

  if (k > 0) {
    // r_max sufficiency check: the base solve must have a negligible tail,
    // otherwise the truncation is too tight to place any node structure.
    const AnnulusSolution& base = cache.solve(0.0, r_max, leading, -1);
    if (!tail_clear(base.profile))
      throw CollapseDetectedError(
          "minimize_nodes: tail check failed on [0, r_max]; r_max too small "
          "for the requested node count");

    auto objective = [&](const std::vector<double>& x) {
      const NodeVector nv = nodes_from_gauge(x, r_max);
      double prev = 0.0;
      double violation = 0.0;
      for (double r : nv.radii) {
        violation = std::max(violation, min_gap - (r - prev));
        prev = r;
      }
      violation = std::max(violation, min_gap - (r_max - prev));
      if (violation > 0.0) return 1e50 * (1.0 + violation / min_gap);
      const auto f = fences(nv, r_max);
      double total = 0.0;
      for (int j = 0; j <= k; ++j)
        total += cache.energy(f[j], f[j + 1], piece_sign(leading, j), j);
      return total;
    };

    const NelderMeadResult nm =
        nelder_mead(objective, std::vector<double>(k, 0.0),
                    config.nm_simplex_scale, config.nm_energy_tol,
                    config.nm_max_iterations);
    sol.nm_iterations = nm.iterations;
    sol.nodes = nodes_from_gauge(nm.best, r_max);

    {
      double prev = 0.0;
      for (double r : sol.nodes.radii) {
        if (r - prev <= min_gap * 1.01)
          throw CollapseDetectedError(
              "minimize_nodes: a node gap collapsed to the minimum");
        prev = r;
      }
      if (r_max - prev <= min_gap * 1.01)
        throw CollapseDetectedError(
            "minimize_nodes: the outer gap collapsed to the minimum");
    }

    // Flux-matching polish, Gauss-Seidel over the nodes.
    if (config.flux_polish) {
      auto f = fences(sol.nodes, r_max);
      const double width_tol = 2.5e-7 * r_max;
      const double move_tol = 1e-6 * r_max;
      for (int sweep = 0; sweep < config.polish_max_sweeps; ++sweep) {
        double moved = 0.0;
        for (int i = 1; i <= k; ++i) {
          const double next = polish_node(spec, cache, leading, f, i, min_gap,
                                          config.polish_grad_tol, width_tol);
          moved = std::max(moved, std::abs(next - f[i]));
          f[i] = next;
        }
        ++sol.polish_sweeps;
        if (moved < move_tol) break;
      }
      sol.nodes.radii.assign(f.begin() + 1, f.end() - 1);
    }
  }

  // Final solve of every piece at the tight tolerance, per-piece Nehari
  // rescaling, then the glue.
  const auto f = fences(sol.nodes, r_max);
  double running_min_norm = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= k; ++j) {
    AnnulusSolution pc = cache.solve(f[j], f[j + 1], piece_sign(leading, j), j,
                                     k > 0 ? config.polish_grad_tol : 0.0);
    const ScalingResult scal = project(spec, pc.profile);
    sol.alphas.push_back(scal.t_star);
    pc.energy = scal.energy_at_t_star;
    running_min_norm = std::min(running_min_norm, pc.norm);
    sol.pieces.push_back(std::move(pc));
  }
  for (const auto& pc : sol.pieces) {
    if (pc.norm < 0.1 * running_min_norm)
      throw CollapseDetectedError("minimize_nodes: a piece norm collapsed");
  }

  sol.glued = assemble_candidate(spec, sol.nodes, sol.pieces, sol.alphas, leading);
  sol.total_energy = 0.0;
  for (const auto& pc : sol.pieces) sol.total_energy += pc.energy;
  sol.h_at_one = h_certificate(spec, sol, std::vector<double>(k + 1, 1.0));

  const NodeCount nc = count_nodes(sol.glued);
  sol.node_count_observed = nc.count;
  sol.node_radii = nc.radii;
  sol.glued_norm = norm_w1p(sol.glued, spec.p());
  {
    const RadialFunction res = residual(spec, sol.glued);
    double sup = 0.0;
    for (double v : res.values) sup = std::max(sup, std::abs(v));
    sol.glued_residual_sup = sup;
  }
  sol.tail_ok = tail_clear(sol.glued);
  sol.converged = sol.node_count_observed == k;
  for (const auto& pc : sol.pieces) sol.converged = sol.converged && pc.converged;
  return sol;
}

}  // namespace plnodal
