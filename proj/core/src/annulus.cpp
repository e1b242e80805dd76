#include "plnodal/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace plnodal {

namespace {

constexpr double kGradEps = 1e-12;
constexpr double kPi = 3.14159265358979323846;

void clamp_sign(RadialFunction& u, Sign sign) {
  if (sign == Sign::plus) {
    for (double& v : u.values) v = std::max(v, 0.0);
  } else {
    for (double& v : u.values) v = std::min(v, 0.0);
  }
}

void apply_dirichlet(RadialFunction& u) {
  if (u.grid->dirichlet_left) u.values.front() = 0.0;
  if (u.grid->dirichlet_right) u.values.back() = 0.0;
}

// Symmetric positive definite approximation of the second variation:
// lagged p-diffusivity plus the |u|^{p-2} mass term, with the f' part
// dropped to stay definite.  Assembled tridiagonal.
struct Tridiagonal {
  std::vector<double> diag, lower, upper;
};

Tridiagonal assemble_preconditioner(const ProblemSpec& spec,
                                    const RadialFunction& uf) {
  const RadialGrid& g = *uf.grid;
  const double p = spec.p();
  const int n = static_cast<int>(g.nodes.size());
  const int nq = g.points_per_element();
  Tridiagonal K;
  K.diag.assign(n, 0.0);
  K.lower.assign(n, 0.0);
  K.upper.assign(n, 0.0);
  for (int e = 0; e < n - 1; ++e) {
    const double h = g.width(e);
    const double s = (uf.values[e + 1] - uf.values[e]) / h;
    const double kappa =
        (p - 1.0) * std::pow(s * s + kGradEps * kGradEps, 0.5 * (p - 2.0));
    double wsum = 0.0, maa = 0.0, mab = 0.0, mbb = 0.0;
    for (int q = 0; q < nq; ++q) {
      const double W = g.qp_w[e * nq + q];
      const double xi = g.gauss_xi[q];
      const double ug =
          uf.values[e] + xi * (uf.values[e + 1] - uf.values[e]);
      const double mu =
          (p - 1.0) * std::pow(ug * ug + kGradEps * kGradEps, 0.5 * (p - 2.0));
      wsum += W;
      maa += W * mu * (1.0 - xi) * (1.0 - xi);
      mab += W * mu * (1.0 - xi) * xi;
      mbb += W * mu * xi * xi;
    }
    const double kstiff = kappa * wsum / (h * h);
    K.diag[e] += kstiff + maa;
    K.diag[e + 1] += kstiff + mbb;
    K.upper[e] += -kstiff + mab;
    K.lower[e + 1] += -kstiff + mab;
  }
  auto constrain = [&](int i) {
    K.diag[i] = 1.0;
    if (i > 0) K.lower[i] = 0.0, K.upper[i - 1] = 0.0;
    if (i + 1 < n) K.upper[i] = 0.0, K.lower[i + 1] = 0.0;
  };
  if (g.dirichlet_left) constrain(0);
  if (g.dirichlet_right) constrain(n - 1);
  return K;
}

std::vector<double> thomas_solve(Tridiagonal K, std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int i = 1; i < n; ++i) {
    const double w = K.lower[i] / K.diag[i - 1];
    K.diag[i] -= w * K.upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / K.diag[n - 1];
  for (int i = n - 2; i >= 0; --i)
    x[i] = (rhs[i] - K.upper[i] * x[i + 1]) / K.diag[i];
  return x;
}

// Deterministic seeded bump: cosine peaked at the inner edge for the ball
// piece (natural condition at r = 0), sine bump for interior annuli.  The
// perturbation stream does not depend on the sign, so the minus branch is
// the exact negation of the plus branch.
RadialFunction initial_bump(const ProblemSpec& spec,
                            std::shared_ptr<const RadialGrid> grid, Sign sign,
                            const SolverConfig& config) {
  const RadialGrid& g = *grid;
  const double len = g.sigma - g.rho;
  std::seed_seq seq{config.seed, static_cast<std::uint64_t>(g.nodes.size()),
                    static_cast<std::uint64_t>(1e6 * g.rho),
                    static_cast<std::uint64_t>(1e6 * g.sigma)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  RadialFunction u;
  u.grid = std::move(grid);
  u.values.resize(g.nodes.size());
  const bool ball = !g.dirichlet_left;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double xi = (g.nodes[i] - g.rho) / len;
    const double bump =
        ball ? std::cos(0.5 * kPi * xi) : std::sin(kPi * xi);
    u.values[i] = bump + config.init_noise * unif(rng);
  }
  const double n = norm_w1p(u, spec.p());
  const double scale = sign_value(sign) / std::max(n, 1e-30);
  for (double& v : u.values) v *= scale;
  apply_dirichlet(u);
  return u;
}

RadialFunction resample(const RadialFunction& src,
                        std::shared_ptr<const RadialGrid> grid) {
  const RadialGrid& sg = *src.grid;
  const RadialGrid& tg = *grid;
  RadialFunction out;
  out.grid = std::move(grid);
  out.values.resize(tg.nodes.size());
  const double slen = sg.sigma - sg.rho, tlen = tg.sigma - tg.rho;
  std::size_t j = 0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double r = sg.rho + slen * (tg.nodes[i] - tg.rho) / tlen;
    while (j + 2 < sg.nodes.size() && sg.nodes[j + 1] < r) ++j;
    const double r0 = sg.nodes[j], r1 = sg.nodes[j + 1];
    const double th = std::clamp((r - r0) / (r1 - r0), 0.0, 1.0);
    out.values[i] = (1.0 - th) * src.values[j] + th * src.values[j + 1];
  }
  return out;
}

double sup_norm(const RadialFunction& u) {
  double m = 0.0;
  for (double v : u.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

AnnulusSolution solve_ground_state(const ProblemSpec& spec, double rho,
                                   double sigma, Sign sign,
                                   const SolverConfig& config,
                                   const RadialFunction* warm_start,
                                   double grad_tol_override) {
  if (!(rho >= 0.0) || !(rho < sigma) || sigma > spec.r_max() * (1.0 + 1e-12))
    throw std::invalid_argument("solve_ground_state: bad annulus radii");
  const double hbar = spec.r_max() / config.grid_m;
  const int m = std::max<int>(4, std::llround((sigma - rho) / hbar));
  if (sigma - rho < 4.0 * hbar)
    throw DegenerateAnnulusError("annulus shorter than four grid elements");

  auto grid = make_grid(spec.dim(), rho, sigma, m, config.stretch);
  const double p = spec.p();
  const double grad_tol =
      grad_tol_override > 0.0 ? grad_tol_override : config.grad_tol;

  RadialFunction u;
  if (warm_start && warm_start->grid) {
    u = resample(*warm_start, grid);
    apply_dirichlet(u);
    clamp_sign(u, sign);
    if (norm_w1p(u, p) < 1e-10) u = initial_bump(spec, grid, sign, config);
  } else {
    u = initial_bump(spec, grid, sign, config);
  }

  AnnulusSolution sol;
  sol.rho = rho;
  sol.sigma = sigma;
  sol.sign = sign;

  ScalingResult proj = project(spec, u);
  u = std::move(proj.projected);
  double J = proj.energy_at_t_star;
  if (config.trace_energy) sol.energy_history.push_back(J);

  int it = 0;
  bool converged = false;
  double res_sup = 0.0;
  for (; it < config.max_iterations; ++it) {
    const RadialFunction g = residual(spec, u);
    res_sup = sup_norm(g);
    const double unorm = norm_w1p(u, p);
    const double scale = std::pow(unorm, p - 1.0);
    if (res_sup <= grad_tol * scale) {
      converged = true;
      break;
    }

    const Tridiagonal K = assemble_preconditioner(spec, u);
    std::vector<double> d = thomas_solve(K, g.values);
    double slope = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) slope += g.values[i] * d[i];
    if (!(slope > 0.0)) {  // fall back to the raw residual direction
      d = g.values;
      slope = 0.0;
      for (double v : g.values) slope += v * v;
      if (!(slope > 0.0)) break;
    }

    // Sufficient energy decrease on the ray-reduced functional; once energy
    // differences fall below double resolution, accept on residual decrease
    // instead (the quasi-Newton endgame).
    bool accepted = false;
    const double noise = 1e-13 * (1.0 + std::abs(J));
    double alpha = config.initial_step;
    for (; alpha > 1e-12; alpha *= config.armijo_shrink) {
      RadialFunction v = u;
      for (std::size_t i = 0; i < v.values.size(); ++i)
        v.values[i] -= alpha * d[i];
      clamp_sign(v, sign);
      apply_dirichlet(v);
      try {
        ScalingResult cand = project(spec, v);
        bool take = cand.energy_at_t_star <= J - config.armijo_c * alpha * slope;
        if (!take && cand.energy_at_t_star <= J + noise) {
          const double cand_res = sup_norm(residual(spec, cand.projected));
          take = cand_res <= 0.995 * res_sup;
        }
        if (take) {
          u = std::move(cand.projected);
          J = cand.energy_at_t_star;
          accepted = true;
          break;
        }
      } catch (const Error&) {
        // clamped candidate degenerated; shrink the step
      }
    }
    if (config.trace_energy) sol.energy_history.push_back(J);
    if (!accepted) break;  // line search stalled at the current iterate
  }

  sol.profile = std::move(u);
  sol.iterations = it;
  sol.energy = energy(spec, sol.profile);
  sol.norm = norm_w1p(sol.profile, p);
  sol.grad_residual = sup_norm(residual(spec, sol.profile));
  sol.nehari_residual = std::abs(pairing(spec, sol.profile, sol.profile)) /
                        std::pow(sol.norm, p);
  sol.converged =
      converged && sol.nehari_residual <= std::max(config.nehari_tol, 1e-9);
  return sol;
}

double energy_map(const ProblemSpec& spec, double rho, double sigma, Sign sign,
                  const SolverConfig& config) {
  AnnulusCache cache(spec, config);
  return cache.energy(rho, sigma, sign);
}

DeltaBound delta_lower_bound(const ProblemSpec& spec,
                             const AnnulusSolution& solution) {
  if (solution.norm < 1e-14 || solution.profile.values.empty())
    throw ZeroInputError("delta_lower_bound: zero profile");
  const RayMoments m = ray_moments(spec, solution.profile);
  DeltaBound b;
  b.delta = solution.norm;
  b.ratio = m.norm_pow_p / m.total_source();
  return b;
}

AnnulusCache::AnnulusCache(const ProblemSpec& spec, const SolverConfig& config)
    : spec_(spec), config_(config) {}

AnnulusCache::Key AnnulusCache::key(double rho, double sigma, Sign sign,
                                    double tol) const {
  const double scale = 1e10 / spec_.r_max();
  return {std::llround(rho * scale), std::llround(sigma * scale),
          static_cast<int>(sign), tol > 0.0 ? 1 : 0};
}

const AnnulusSolution& AnnulusCache::solve(double rho, double sigma, Sign sign,
                                           int piece_index,
                                           double grad_tol_override) {
  const Key k = key(rho, sigma, sign, grad_tol_override);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;

  const RadialFunction* warm = nullptr;
  auto wit = warm_.find(piece_index);
  if (piece_index >= 0 && wit != warm_.end()) warm = &wit->second;

  AnnulusSolution sol = solve_ground_state(spec_, rho, sigma, sign, config_,
                                           warm, grad_tol_override);
  if (piece_index >= 0) warm_[piece_index] = sol.profile;
  return memo_.emplace(k, std::move(sol)).first->second;
}

double AnnulusCache::energy(double rho, double sigma, Sign sign,
                            int piece_index) {
  return solve(rho, sigma, sign, piece_index).energy;
}

}  // namespace plnodal
