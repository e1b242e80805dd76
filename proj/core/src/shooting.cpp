#include "plnodal/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace plnodal {

namespace {

inline double sgn_pow(double x, double e) {
  if (x == 0.0) return 0.0;
  const double a = std::abs(x);
  const double m = (e == 1.0) ? a : (e == 2.0 ? a * a : std::pow(a, e));
  return x < 0.0 ? -m : m;
}

inline double rpow(double r, int dim) {
  switch (dim) {
    case 1:
      return 1.0;
    case 2:
      return r;
    case 3:
      return r * r;
    default:
      return std::pow(r, dim - 1);
  }
}

struct State {
  double u, w;
};

State rhs(const ProblemSpec& spec, double r, const State& y) {
  const double rm = rpow(r, spec.dim());
  return {sgn_pow(y.w / rm, 1.0 / (spec.p() - 1.0)),
          rm * (sgn_pow(y.u, spec.p() - 1.0) - eval_f(spec, r, y.u))};
}

// Level of the autonomous comparison flow; once negative at a positive
// local minimum of |u| (and with the level nonincreasing in r), the
// trajectory can never reach zero again.
double orbit_level(const ProblemSpec& spec, double r, double u, double du) {
  const double p = spec.p();
  return (p - 1.0) / p * std::pow(std::abs(du), p) -
         std::pow(std::abs(u), p) / p + eval_F(spec, r, u);
}

// Dormand-Prince 5(4).
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB4[7] = {5179.0 / 57600, 0.0,        7571.0 / 16695,
                           393.0 / 640,    -92097.0 / 339200,
                           187.0 / 2100,   1.0 / 40};

// Cubic Hermite value on one step.
double hermite(double th, double h, double f0, double df0, double f1,
               double df1) {
  const double t2 = th * th, t3 = t2 * th;
  return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + th) * h * df0 +
         (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * df1;
}

// Interpolated zero inside an accepted step (endpoint values straddle).
double hermite_zero(double h, double f0, double df0, double f1, double df1) {
  double lo = 0.0, hi = 1.0, flo = f0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = hermite(mid, h, f0, df0, f1, df1);
    if (fm * flo <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

struct Integration {
  ShotTrajectory traj;
  double end_u = 0.0, end_du = 0.0;
  bool hit_terminal = false;
  bool hit_turn = false;
  double turn_r = 0.0, turn_u = 0.0;
};

// Adaptive sweep from r_begin to r_end (either direction).  When
// terminal_events is false only the blow-up guard is active.  With
// stop_at_turn the run ends at the first sign change of w (the first
// extreme of u), reporting the interpolated turn point.
Integration integrate(const ProblemSpec& spec, double r_begin, double r_end,
                      State y0, double amplitude_scale, bool terminal_events,
                      const SolverConfig& config, bool stop_at_turn = false) {
  const double dir = r_end > r_begin ? 1.0 : -1.0;
  const double decay_abs =
      config.decay_threshold * std::max(1.0, amplitude_scale);

  Integration out;
  out.traj.samples.push_back({r_begin, y0.u, y0.w});

  double r = r_begin;
  State y = y0;
  State k[7];
  k[0] = rhs(spec, r, y);
  out.end_u = y.u;
  out.end_du = k[0].u;
  double h =
      dir * std::min(config.shot_max_step, std::abs(r_end - r_begin) / 16.0);
  double prev_toward = 0.0;

  while (dir * (r_end - r) > 1e-13 * std::max(1.0, std::abs(r_end))) {
    if (dir * (r + h) > dir * r_end) h = r_end - r;
    if (std::abs(h) < 1e-12 * std::max(1.0, std::abs(r)))
      throw StepFailureError("shoot: step size underflow", r);

    State stage = y;
    for (int s = 1; s < 7; ++s) {
      stage = y;
      for (int j = 0; j < s; ++j) {
        stage.u += h * kA[s][j] * k[j].u;
        stage.w += h * kA[s][j] * k[j].w;
      }
      k[s] = rhs(spec, r + kC[s] * h, stage);
    }
    const State y5 = stage;  // the s = 6 row is the 5th-order solution
    State y4 = y;
    for (int j = 0; j < 7; ++j) {
      y4.u += h * kB4[j] * k[j].u;
      y4.w += h * kB4[j] * k[j].w;
    }
    const double su =
        config.shot_atol +
        config.shot_rtol * std::max(std::abs(y.u), std::abs(y5.u));
    const double sw =
        config.shot_atol +
        config.shot_rtol * std::max(std::abs(y.w), std::abs(y5.w));
    const double eu = (y5.u - y4.u) / su, ew = (y5.w - y4.w) / sw;
    const double err = std::sqrt(0.5 * (eu * eu + ew * ew));
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.25));
      continue;
    }

    const double r1 = r + h;
    const double du0 = k[0].u;
    const double du1 = k[6].u;  // FSAL derivative at r1

    bool crossed = false;
    if (y.u != 0.0 && y.u * y5.u < 0.0) {
      out.traj.crossings.push_back(locate_crossing(r, h, y.u, du0, y5.u, du1));
      ++out.traj.node_count;
      crossed = true;
    }
    out.traj.samples.push_back({r1, y5.u, y5.w});

    if (std::abs(y5.u) >= config.blowup_threshold) {
      out.traj.terminal = Terminal::blew_up;
      out.traj.terminal_radius = r1;
      out.hit_terminal = true;
    } else if (terminal_events && std::abs(y5.u) <= decay_abs &&
               std::abs(du1) <= decay_abs) {
      out.traj.terminal = Terminal::decayed;
      out.traj.terminal_radius = r1;
      out.hit_terminal = true;
    } else if (terminal_events && !crossed) {
      const double toward = (y5.u > 0 ? 1.0 : -1.0) * du1 * dir;
      if (prev_toward < 0.0 && toward > 0.0 &&
          orbit_level(spec, r1, y5.u, du1) < 0.0) {
        out.traj.terminal = Terminal::oscillating;
        out.traj.terminal_radius = r1;
        out.hit_terminal = true;
      }
      prev_toward = toward;
    } else {
      prev_toward = (y5.u > 0 ? 1.0 : -1.0) * du1 * dir;
    }

    r = r1;
    y = y5;
    k[0] = k[6];
    out.end_u = y.u;
    out.end_du = du1;
    if (out.hit_terminal) return out;

    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
    if (std::abs(h) > config.shot_max_step) h = dir * config.shot_max_step;
  }
  out.traj.terminal = orbit_level(spec, r, y.u, out.end_du) < 0.0
                          ? Terminal::oscillating
                          : Terminal::reached_rmax;
  out.traj.terminal_radius = r;
  return out;
}

}  // namespace

const char* terminal_label(Terminal t) {
  switch (t) {
    case Terminal::decayed:
      return "decayed";
    case Terminal::blew_up:
      return "blew_up";
    case Terminal::oscillating:
      return "oscillating";
    default:
      return "reached_rmax";
  }
}

double slope_from_flux(const ProblemSpec& spec, double r, double w) {
  return sgn_pow(w / rpow(r, spec.dim()), 1.0 / (spec.p() - 1.0));
}

ShotTrajectory shoot(const ProblemSpec& spec, double a,
                     const SolverConfig& config) {
  if (a == 0.0) throw std::invalid_argument("shoot: amplitude must be nonzero");
  const double h0 = config.shot_start_radius;
  State y0;
  y0.u = a;
  y0.w = std::pow(h0, spec.dim()) *
         (sgn_pow(a, spec.p() - 1.0) - eval_f(spec, 0.0, a)) / spec.dim();
  Integration out =
      integrate(spec, h0, spec.r_max(), y0, std::abs(a), true, config);
  out.traj.amplitude = a;
  return std::move(out.traj);
}

double trajectory_energy(const ProblemSpec& spec, const ShotTrajectory& t) {
  if (t.samples.size() < 3)
    throw std::invalid_argument("trajectory_energy: too few samples");
  std::vector<double> nodes{0.0};
  std::vector<double> values{t.samples.front().u};
  for (const auto& s : t.samples) {
    if (s.r <= nodes.back() + 1e-14) continue;
    nodes.push_back(s.r);
    values.push_back(s.u);
  }
  RadialFunction uf;
  uf.grid = std::make_shared<const RadialGrid>(
      grid_from_nodes(spec.dim(), std::move(nodes), false, false));
  uf.values = std::move(values);
  return energy(spec, uf);
}

OracleResult find_k_node_profile(const ProblemSpec& spec, int k, double a_lo,
                                 double a_hi, const SolverConfig& config) {
  if (k < 0) throw std::invalid_argument("find_k_node_profile: k >= 0");
  if (!(a_lo > 0.0) || !(a_lo < a_hi))
    throw BracketInvalidError("find_k_node_profile: need 0 < a_lo < a_hi");

  OracleResult res;
  if (spec.dim() >= 2 || k == 0) {
    auto index = [&](const ShotTrajectory& t) {
      return t.node_count + (t.terminal == Terminal::blew_up ? 1 : 0);
    };
    ShotTrajectory lo_t = shoot(spec, a_lo, config);
    ShotTrajectory hi_t = shoot(spec, a_hi, config);
    if (!(index(lo_t) <= k && index(hi_t) >= k + 1))
      throw BracketInvalidError(
          "find_k_node_profile: endpoints do not straddle the requested node "
          "count");
    double lo = a_lo, hi = a_hi;
    int iter = 0;
    while (hi - lo > config.bisect_rel_width * hi) {
      const double mid = 0.5 * (lo + hi);
      ShotTrajectory mid_t = shoot(spec, mid, config);
      if (index(mid_t) >= k + 1)
        hi = mid;
      else {
        lo = mid;
        lo_t = std::move(mid_t);
      }
      ++iter;
    }
    res.bisection_iterations = iter;
    if (lo_t.node_count != k)
      throw NoDecayError(
          "find_k_node_profile: node count jumps past k inside the bracket");

    // Truncate at the closest approach to the origin after the last crossing.
    ShotTrajectory& t = lo_t;
    const double from = t.crossings.empty() ? 0.0 : t.crossings.back();
    std::size_t best = t.samples.size() - 1;
    double best_phase = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
      if (t.samples[i].r <= from) continue;
      const double du = slope_from_flux(spec, t.samples[i].r, t.samples[i].w);
      const double phase = std::max(std::abs(t.samples[i].u), std::abs(du)) /
                           std::max(1.0, std::abs(t.amplitude));
      if (phase < best_phase) {
        best_phase = phase;
        best = i;
      }
    }
    if (best_phase > config.oracle_accept_threshold)
      throw NoDecayError(
          "find_k_node_profile: no decay to the acceptance threshold before "
          "r_max");
    t.samples.resize(best + 1);
    t.terminal = Terminal::decayed;
    t.terminal_radius = t.samples.back().r;
    res.amplitude = lo;
    res.trajectory = std::move(t);
  } else {
    // dim == 1, k >= 1: backward shot from the Dirichlet end.
    const Sign outer = (k % 2 == 0) ? Sign::plus : Sign::minus;
    auto backshot = [&](double s) {
      State y0;
      y0.u = 0.0;
      y0.w = sgn_pow(-sign_value(outer) * s, spec.p() - 1.0) *
             rpow(spec.r_max(), spec.dim());
      return integrate(spec, spec.r_max(), config.shot_start_radius, y0, 1.0,
                       false, config);
    };
    auto in_window = [&](const Integration& bi) {
      return !bi.hit_terminal && bi.traj.node_count == k && bi.end_u > 0.0;
    };

    const int n = std::max(8, config.sweep_points);
    const double llo = std::log(a_lo), lhi = std::log(a_hi);
    double s_left = 0.0, s_right = 0.0, g_left = 0.0;
    bool found = false;
    Integration prev;
    double prev_s = 0.0;
    bool have_prev = false;
    for (int i = 0; i < n; ++i) {
      const double s = std::exp(llo + (lhi - llo) * i / (n - 1));
      Integration cur = backshot(s);
      if (have_prev && in_window(prev) && in_window(cur) &&
          prev.end_du * cur.end_du < 0.0) {
        s_left = prev_s;
        s_right = s;
        g_left = prev.end_du;
        found = true;
        break;
      }
      prev = std::move(cur);
      prev_s = s;
      have_prev = true;
    }
    if (!found)
      throw BracketInvalidError(
          "find_k_node_profile: no slope window with k crossings and a "
          "Neumann sign change (backward mode)");

    int iter = 0;
    Integration best = backshot(s_left);
    while (s_right - s_left > config.bisect_rel_width * s_right) {
      const double mid = 0.5 * (s_left + s_right);
      Integration mi = backshot(mid);
      if (mi.traj.node_count > k) {
        s_right = mid;
      } else if (mi.traj.node_count < k) {
        s_left = mid;
      } else if (mi.end_du * g_left >= 0.0) {
        s_left = mid;
        g_left = mi.end_du;
        best = std::move(mi);
      } else {
        s_right = mid;
      }
      ++iter;
    }
    res.bisection_iterations = iter;
    res.backward = true;
    if (best.traj.node_count != k)
      throw NoDecayError(
          "find_k_node_profile: backward bisection lost the k-crossing window");

    ShotTrajectory t;
    t.node_count = best.traj.node_count;
    t.terminal = Terminal::reached_rmax;
    t.terminal_radius = spec.r_max();
    t.samples.assign(best.traj.samples.rbegin(), best.traj.samples.rend());
    t.crossings.assign(best.traj.crossings.rbegin(), best.traj.crossings.rend());
    t.amplitude = best.end_u;
    res.amplitude = t.amplitude;
    res.trajectory = std::move(t);
  }
  res.energy = trajectory_energy(spec, res.trajectory);
  return res;
}

}  // namespace plnodal
