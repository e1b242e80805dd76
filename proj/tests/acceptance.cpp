// Acceptance suite: nine numbered criteria, one pass/fail line each.
// Run all (no arguments) or a single one with --criterion <n>.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "plnodal/nodal.hpp"
#include "plnodal/shooting.hpp"

using namespace plnodal;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

ProblemSpec cubic_1d(double rmax) {
  return ProblemSpec(2.0, 1, rmax, {{1.0, 4.0, nullptr}});
}

char buf[256];

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// 1. soliton energy: c0 within 1% of 2/3 at M = 4000.
Result criterion_1() {
  Result res;
  const auto spec = cubic_1d(40.0);
  SolverConfig cfg;
  cfg.grid_m = 4000;
  const auto sol = solve_ground_state(spec, 0.0, 40.0, Sign::plus, cfg);
  res.require(sol.converged, "solver did not converge");
  const double rel = std::abs(sol.energy - 2.0 / 3.0) / (2.0 / 3.0);
  res.require(rel <= 0.01, fmt("c0=%.8f off by %.2e", sol.energy, rel));
  res.detail += fmt("c0=%.6f rel_err=%.2e", sol.energy, rel);
  return res;
}

// 2. oracle agreement: a* = sqrt(2) +- 1e-6, energies within 1%.
Result criterion_2() {
  Result res;
  const auto spec = cubic_1d(40.0);
  SolverConfig cfg;
  const OracleResult orc = find_k_node_profile(spec, 0, 1.3, 1.5, cfg);
  res.require(std::abs(orc.amplitude - std::sqrt(2.0)) <= 1e-6,
              fmt("a*=%.10f", orc.amplitude));
  cfg.grid_m = 4000;
  const auto sol = solve_ground_state(spec, 0.0, 40.0, Sign::plus, cfg);
  const double rel = std::abs(orc.energy - sol.energy) / sol.energy;
  res.require(rel <= 0.01, fmt("oracle energy %.6f vs c0 %.6f", orc.energy, sol.energy));
  res.detail += fmt("a*=%.8f energy=%.6f rel=%.2e", orc.amplitude, orc.energy, rel);
  return res;
}

// 3. nodal solutions k = 1, 2 at r_max = 60: oracle agreement and ordering.
Result criterion_3() {
  Result res;
  const auto spec = cubic_1d(60.0);
  SolverConfig cfg;
  cfg.grid_m = 3000;
  const auto base = solve_ground_state(spec, 0.0, 60.0, Sign::plus, cfg);
  const double c0 = base.energy;

  double last = c0;
  for (int k = 1; k <= 2; ++k) {
    const NodalSolution sol = minimize_nodes(spec, k, cfg);
    res.require(sol.converged, fmt("k=%d not converged", k));
    res.require(sol.node_count_observed == k,
                fmt("k=%d observed %d nodes", k, sol.node_count_observed));
    const OracleResult orc = find_k_node_profile(
        spec, k, 1e-12, k == 1 ? 1e-2 : 1e-1, cfg);
    res.require(orc.trajectory.node_count == k, fmt("oracle k=%d count", k));
    const double erel =
        std::abs(orc.energy - sol.total_energy) / std::abs(sol.total_energy);
    res.require(erel <= 0.01, fmt("k=%d energy mismatch %.2e", k, erel));
    double worst = 0.0;
    for (int j = 0; j < k; ++j)
      worst = std::max(worst, std::abs(sol.node_radii[j] -
                                       orc.trajectory.crossings[j]));
    res.require(worst <= 1e-2, fmt("k=%d node offset %.2e", k, worst));
    res.require(sol.total_energy > last, fmt("c_%d not above c_%d", k, k - 1));
    res.detail += fmt("c%d=%.5f(var)/%.5f(orc) dnode=%.1e ", k,
                      sol.total_energy, orc.energy, worst);
    last = sol.total_energy;
  }
  return res;
}

// 4. Nehari suite over four families, 100 seeded profiles each.
Result criterion_4() {
  Result res;
  const std::vector<ProblemSpec> families = {
      ProblemSpec(2.0, 1, 6.0, {{1.0, 4.0, nullptr}}),
      ProblemSpec(2.0, 1, 6.0, {{1.0, 3.0, nullptr}, {1.0, 5.0, nullptr}}),
      ProblemSpec(3.0, 2, 6.0, {{1.0, 5.0, nullptr}}),
      ProblemSpec(3.0, 2, 6.0, {{1.0, 4.0, nullptr}, {0.5, 6.0, nullptr}})};
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (const auto& spec : families) {
    auto grid = make_grid(spec.dim(), 0.0, 6.0, 160);
    for (int trial = 0; trial < 100; ++trial) {
      RadialFunction u;
      {
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        u = zero_function(grid);
        const double pi = 3.14159265358979323846;
        double c[4];
        for (double& x : c) x = coef(rng);
        for (std::size_t i = 0; i < u.values.size(); ++i) {
          const double xi = u.grid->nodes[i] / 6.0;
          double acc = 0.7 * std::cos(0.5 * pi * xi);
          for (int m = 1; m <= 4; ++m) acc += c[m - 1] / m * std::sin(m * pi * xi);
          u.values[i] = acc;
        }
        u.values.back() = 0.0;
      }
      const ScalingResult s = project(spec, u);
      const ScalingResult again = project(spec, s.projected);
      if (std::abs(again.t_star - 1.0) > 1e-10) {
        res.require(false, fmt("idempotence off by %.1e", again.t_star - 1.0));
        return res;
      }
      if (!(s.energy_at_t_star > 0.0)) {
        res.require(false, "non-positive projected level");
        return res;
      }
      const auto m = ray_moments(spec, u);
      for (int i = 0; i < 64; ++i) {
        const double t = s.t_star * std::pow(10.0, -1.0 + 2.0 * i / 63.0);
        if (s.energy_at_t_star <
            energy_from_moments(spec, m, t) - 1e-10 * (1 + s.energy_at_t_star)) {
          res.require(false, "ray maximality violated");
          return res;
        }
      }
      const auto rep = verify_unique_max(spec, u);
      if (rep.phi_sign_changes != 1) {
        res.require(false, fmt("phi sign changes = %d", rep.phi_sign_changes));
        return res;
      }
      ++checked;
    }
  }
  res.detail = fmt("%d projections across %zu families", checked, families.size());
  return res;
}

// 5. gradient consistency: 50 random profile/direction pairs.
Result criterion_5() {
  Result res;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const bool p3 = trial % 2;
    const ProblemSpec spec =
        p3 ? ProblemSpec(3.0, 2, 6.0, {{1.0, 5.0, nullptr}})
           : ProblemSpec(2.0, 1, 6.0, {{1.0, 4.0, nullptr}});
    auto grid = make_grid(spec.dim(), 0.0, 6.0, 200);
    auto draw = [&]() {
      RadialFunction u = zero_function(grid);
      const double pi = 3.14159265358979323846;
      double c[4];
      for (double& x : c) x = coef(rng);
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double xi = u.grid->nodes[i] / 6.0;
        double acc = 0.5 * std::cos(0.5 * pi * xi);
        for (int m = 1; m <= 4; ++m) acc += c[m - 1] / m * std::sin(m * pi * xi);
        u.values[i] = acc;
      }
      u.values.back() = 0.0;
      return u;
    };
    const RadialFunction u = draw(), v = draw();
    const double h = 1e-6;
    auto up = u, um = u;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      up.values[i] += h * v.values[i];
      um.values[i] -= h * v.values[i];
    }
    const double fd = (energy(spec, up) - energy(spec, um)) / (2 * h);
    const double pr = pairing(spec, u, v);
    const double rel = std::abs(fd - pr) / std::max(1.0, std::abs(pr));
    worst = std::max(worst, rel);
  }
  res.require(worst < 1e-5, fmt("worst relative error %.2e", worst));
  res.detail = fmt("worst rel err %.2e over 50 pairs", worst);
  return res;
}

// 6. certificate suite for k = 1, 2.
Result criterion_6() {
  Result res;
  const auto spec = cubic_1d(30.0);
  SolverConfig cfg;
  cfg.grid_m = 2000;
  const double tau = cfg.certificate_tau;
  for (int k = 1; k <= 2; ++k) {
    const NodalSolution sol = minimize_nodes(spec, k, cfg);
    res.require(sol.converged, fmt("k=%d not converged", k));
    const double scale = std::pow(sol.glued_norm, spec.p());
    const auto h1 = h_certificate(spec, sol, std::vector<double>(k + 1, 1.0));
    double hmax = 0.0;
    for (double h : h1) hmax = std::max(hmax, std::abs(h));
    res.require(hmax < 1e-6 * scale, fmt("k=%d |h(1)| = %.2e", k, hmax));
    for (int j = 0; j <= k; ++j) {
      std::vector<double> s(k + 1, 1.0);
      s[j] = 1.0 - tau;
      const double lo = h_certificate(spec, sol, s)[j];
      s[j] = 1.0 + tau;
      const double hi = h_certificate(spec, sol, s)[j];
      res.require(lo > 0.0 && hi < 0.0,
                  fmt("k=%d piece %d does not flip (%.1e, %.1e)", k, j, lo, hi));
    }
    res.detail += fmt("k=%d |h|=%.1e flips ok  ", k, hmax);
  }
  return res;
}

// 7. p = 3 property run (no closed-form target).
Result criterion_7() {
  Result res;
  const ProblemSpec spec(3.0, 2, 30.0, {{1.0, 5.0, nullptr}});
  for (int k = 0; k <= 1; ++k) {
    double energies[2];
    for (int pass = 0; pass < 2; ++pass) {
      SolverConfig cfg;
      cfg.grid_m = pass == 0 ? 1500 : 3000;
      const NodalSolution sol = minimize_nodes(spec, k, cfg);
      energies[pass] = sol.total_energy;
      res.require(sol.converged, fmt("k=%d M=%d not converged", k, cfg.grid_m));
      res.require(sol.node_count_observed == k, fmt("k=%d node count", k));
      const double rel_res =
          sol.glued_residual_sup / std::pow(sol.glued_norm, spec.p() - 1.0);
      res.require(rel_res < 1e-8, fmt("k=%d residual %.2e", k, rel_res));
      for (int j = 0; j <= k; ++j) {
        const auto& pc = sol.pieces[j];
        const double want = (j % 2 == 0) ? 1.0 : -1.0;
        for (double v : pc.profile.values)
          if (want * v < 0.0) {
            res.require(false, fmt("k=%d piece %d sign violation", k, j));
            break;
          }
        const double nrm = norm_w1p(pc.profile, spec.p());
        const double nehari = std::abs(pairing(spec, pc.profile, pc.profile)) /
                              std::pow(nrm, spec.p());
        res.require(nehari < 1e-8, fmt("k=%d piece %d nehari %.1e", k, j, nehari));
      }
    }
    const double drift = std::abs(energies[1] - energies[0]) /
                         std::abs(energies[1]);
    res.require(drift < 0.005, fmt("k=%d grid-doubling drift %.2e", k, drift));
    res.detail += fmt("k=%d c=%.6f drift=%.1e  ", k, energies[1], drift);
  }
  return res;
}

// 8. symmetry pair: leading-minus equals the negated leading-plus run.
Result criterion_8() {
  Result res;
  struct Case {
    ProblemSpec spec;
    int k;
    int grid;
  };
  const std::vector<Case> cases = {
      {cubic_1d(25.0), 1, 1000},
      {ProblemSpec(3.0, 2, 20.0, {{1.0, 5.0, nullptr}}), 0, 800}};
  for (const auto& c : cases) {
    SolverConfig cfg;
    cfg.grid_m = c.grid;
    const NodalSolution plus = minimize_nodes(c.spec, c.k, cfg, Sign::plus);
    const NodalSolution minus = minimize_nodes(c.spec, c.k, cfg, Sign::minus);
    res.require(plus.converged && minus.converged, "pair not converged");
    double worst = 0.0;
    for (std::size_t i = 0; i < plus.glued.values.size(); ++i)
      worst = std::max(
          worst, std::abs(plus.glued.values[i] + minus.glued.values[i]));
    res.require(worst < 1e-8, fmt("k=%d negation off by %.1e", c.k, worst));
    res.detail += fmt("k=%d pair offset %.1e  ", c.k, worst);
  }
  return res;
}

// 9. domain monotonicity of c(rho, sigma) over a 3x3 radius grid.
Result criterion_9() {
  Result res;
  const ProblemSpec spec(2.0, 3, 10.0, {{1.0, 4.0, nullptr}});
  SolverConfig cfg;
  cfg.grid_m = 1200;
  const std::vector<double> rhos = {0.5, 1.0, 1.5};
  const std::vector<double> sigmas = {2.5, 3.25, 4.0};
  const double tol = 1e-7;
  double table[3][3];
  for (std::size_t i = 0; i < rhos.size(); ++i)
    for (std::size_t j = 0; j < sigmas.size(); ++j)
      table[i][j] = energy_map(spec, rhos[i], sigmas[j], Sign::plus, cfg);
  for (std::size_t i = 0; i < rhos.size(); ++i)
    for (std::size_t j = 0; j + 1 < sigmas.size(); ++j)
      res.require(table[i][j + 1] <= table[i][j] + tol,
                  fmt("not nonincreasing in sigma at rho=%.2f", rhos[i]));
  for (std::size_t j = 0; j < sigmas.size(); ++j)
    for (std::size_t i = 0; i + 1 < rhos.size(); ++i)
      res.require(table[i + 1][j] >= table[i][j] - tol,
                  fmt("not nondecreasing in rho at sigma=%.2f", sigmas[j]));
  res.detail = fmt("c(0.5,2.5)=%.4f .. c(1.5,4.0)=%.4f", table[0][0], table[2][2]);
  return res;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Result()> run;
  double budget_s;  // stated runtime bound; 0 = not enforced
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);

  const std::vector<Criterion> criteria = {
      {1, "soliton energy", criterion_1, 10.0},
      {2, "oracle agreement", criterion_2, 5.0},
      {3, "nodal solutions k=1,2", criterion_3, 120.0},
      {4, "nehari suite", criterion_4, 30.0},
      {5, "gradient consistency", criterion_5, 10.0},
      {6, "certificate suite", criterion_6, 60.0},
      {7, "p=3 property run", criterion_7, 120.0},
      {8, "symmetry pair", criterion_8, 0.0},
      {9, "domain monotonicity", criterion_9, 60.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const double t0 = seconds();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double dt = seconds() - t0;
    if (c.budget_s > 0.0 && dt > c.budget_s) {
      r.pass = false;
      r.detail += fmt("; over budget (%.1fs > %.0fs)", dt, c.budget_s);
    }
    std::printf("criterion %d (%s): %s  [%.1fs] %s\n", c.id, c.name,
                r.pass ? "PASS" : "FAIL", dt, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  return failures;
}
