#include "plnodal/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace plnodal {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("PLNODAL_OUT")) return env;
  return "plnodal_out";
}

void write_file(const fs::path& dir, const std::string& name,
                const std::string& contents) {
  fs::create_directories(dir);
  std::ofstream os(dir / name, std::ios::binary);
  os << contents;
}

json spec_to_json(const ProblemSpec& spec) {
  return json::parse(to_json_string(spec));
}

json config_to_json(const SolverConfig& c) {
  return json{{"grid_m", c.grid_m},
              {"stretch", c.stretch},
              {"grad_tol", c.grad_tol},
              {"nehari_tol", c.nehari_tol},
              {"max_iterations", c.max_iterations},
              {"nm_simplex_scale", c.nm_simplex_scale},
              {"nm_energy_tol", c.nm_energy_tol},
              {"nm_max_iterations", c.nm_max_iterations},
              {"flux_polish", c.flux_polish},
              {"certificate_tau", c.certificate_tau},
              {"seed", c.seed},
              {"shot_rtol", c.shot_rtol},
              {"shot_max_step", c.shot_max_step},
              {"decay_threshold", c.decay_threshold}};
}

json assumptions_to_json(const AssumptionReport& rep) {
  return json{{"f1", rep.f1},         {"f2", rep.f2}, {"f3", rep.f3},
              {"f4", rep.f4},         {"sq", rep.sq}, {"ar", rep.ar},
              {"ar_mu", rep.ar_mu},   {"growth_constant", rep.growth_constant}};
}

// Everything the report asserts about a solution is recomputed here from the
// stored profiles, not copied from solver state.
json solution_to_json(const ProblemSpec& spec, const NodalSolution& sol) {
  const int k = sol.nodes.k;
  json pieces = json::array();
  for (const auto& pc : sol.pieces) {
    const double nrm = norm_w1p(pc.profile, spec.p());
    const double nehari = std::abs(pairing(spec, pc.profile, pc.profile)) /
                          std::pow(nrm, spec.p());
    const RadialFunction res = residual(spec, pc.profile);
    double sup = 0.0;
    for (double v : res.values) sup = std::max(sup, std::abs(v));
    pieces.push_back({{"rho", pc.rho},
                      {"sigma", pc.sigma},
                      {"sign", sign_label(pc.sign)},
                      {"energy", pc.energy},
                      {"nehari_residual", nehari},
                      {"grad_residual", sup},
                      {"iterations", pc.iterations},
                      {"converged", pc.converged}});
  }

  const std::vector<double> h =
      h_certificate(spec, sol, std::vector<double>(k + 1, 1.0));
  const NodeCount nc = count_nodes(sol.glued);
  const RadialFunction gres = residual(spec, sol.glued);
  double gsup = 0.0;
  for (double v : gres.values) gsup = std::max(gsup, std::abs(v));

  return json{{"k", k},
              {"leading_sign", sign_label(sol.leading)},
              {"nodes", sol.nodes.radii},
              {"alphas", sol.alphas},
              {"c_k", sol.total_energy},
              {"pieces", pieces},
              {"h_certificate", h},
              {"node_count_observed", nc.count},
              {"node_radii", nc.radii},
              {"glued_residual", gsup},
              {"glued_norm", norm_w1p(sol.glued, spec.p())},
              {"tail_ok", tail_clear(sol.glued)},
              {"converged", sol.converged},
              {"nm_iterations", sol.nm_iterations},
              {"polish_sweeps", sol.polish_sweeps}};
}

json trajectory_to_json(const OracleResult& orc) {
  return json{{"amplitude", orc.amplitude},
              {"energy", orc.energy},
              {"node_count", orc.trajectory.node_count},
              {"crossings", orc.trajectory.crossings},
              {"terminal", terminal_label(orc.trajectory.terminal)},
              {"terminal_radius", orc.trajectory.terminal_radius},
              {"mode", orc.backward ? "backward" : "forward"},
              {"bisection_iterations", orc.bisection_iterations}};
}

std::string profile_csv(const RadialFunction& u) { return to_csv(u); }

std::string profile_dat(const RadialFunction& u) {
  std::string out = "# r u\n";
  char buf[80];
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", u.grid->nodes[i],
                  u.values[i]);
    out += buf;
  }
  return out;
}

SolverConfig config_from(const SolveArgs& a) {
  SolverConfig c;
  c.grid_m = a.grid;
  c.grad_tol = a.tol;
  c.seed = a.seed;
  return c;
}

}  // namespace

ProblemSpec spec_from_args(double p, int dim, double rmax,
                           const std::vector<double>& q,
                           const std::vector<double>& lambda) {
  if (q.empty())
    throw std::invalid_argument("at least one --q exponent is required");
  if (!lambda.empty() && lambda.size() != q.size())
    throw std::invalid_argument("--lambda count must match --q count");
  std::vector<NonlinearityTerm> terms;
  for (std::size_t i = 0; i < q.size(); ++i)
    terms.push_back({lambda.empty() ? 1.0 : lambda[i], q[i], nullptr});
  return ProblemSpec(p, dim, rmax, std::move(terms));
}

RunOutcome run_solve(const SolveArgs& args) {
  RunOutcome out;
  const double t0 = now_seconds();
  json rep;
  rep["command"] = "solve";

  std::optional<ProblemSpec> spec;
  try {
    spec.emplace(spec_from_args(args.p, args.dim, args.rmax, args.q, args.lambda));
  } catch (const std::invalid_argument& e) {
    out.exit_code = kExitUsage;
    out.message = std::string("spec error: ") + e.what();
    return out;
  }

  const SolverConfig config = config_from(args);
  rep["spec"] = spec_to_json(*spec);
  rep["config"] = config_to_json(config);
  rep["config"]["k"] = args.k;
  rep["assumptions"] = assumptions_to_json(check_assumptions(*spec));
  json warnings = json::array();

  const fs::path dir = resolve_out_dir(args.out);
  const Sign leading = args.leading_minus ? Sign::minus : Sign::plus;

  try {
    const NodalSolution sol = minimize_nodes(*spec, args.k, config, leading);
    rep["solution"] = solution_to_json(*spec, sol);
    rep["converged"] = sol.converged;
    if (!tail_clear(sol.glued))
      warnings.push_back(
          "tail check failed: |u| above 1e-6 * max|u| on the outer 10% of the "
          "grid; consider a larger --rmax");

    if (args.cross_check) {
      const OracleResult orc = find_k_node_profile(
          *spec, args.k, args.cross_check->first, args.cross_check->second,
          config);
      json cc = trajectory_to_json(orc);
      cc["energy_rel_diff"] =
          std::abs(orc.energy - sol.total_energy) / std::abs(sol.total_energy);
      rep["oracle"] = cc;
    }

    rep["warnings"] = warnings;
    rep["timing"] = {{"total_s", now_seconds() - t0}};
    out.report_json = rep.dump(2) + "\n";
    write_file(dir, "report.json", out.report_json);
    write_file(dir, "profile.csv", profile_csv(sol.glued));
    write_file(dir, "profile.dat", profile_dat(sol.glued));

    out.exit_code = sol.converged ? kExitOk : kExitNumerical;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "k=%d  c_k=%.12g  nodes_observed=%d  converged=%s",
                  args.k, sol.total_energy, sol.node_count_observed,
                  sol.converged ? "yes" : "no");
    out.message = buf;
  } catch (const Error& e) {
    rep["error"] = e.what();
    rep["converged"] = false;
    rep["warnings"] = warnings;
    rep["timing"] = {{"total_s", now_seconds() - t0}};
    out.report_json = rep.dump(2) + "\n";
    write_file(dir, "report.json", out.report_json);
    out.exit_code = kExitNumerical;
    out.message = std::string("numerical failure: ") + e.what();
  }
  return out;
}

RunOutcome run_oracle(const OracleArgs& args) {
  RunOutcome out;
  const double t0 = now_seconds();
  json rep;
  rep["command"] = "oracle";

  std::optional<ProblemSpec> spec;
  try {
    spec.emplace(spec_from_args(args.p, args.dim, args.rmax, args.q, args.lambda));
  } catch (const std::invalid_argument& e) {
    out.exit_code = kExitUsage;
    out.message = std::string("spec error: ") + e.what();
    return out;
  }
  if (!(args.amin > 0.0) || !(args.amin < args.amax)) {
    out.exit_code = kExitUsage;
    out.message = "oracle: need 0 < --amin < --amax";
    return out;
  }

  SolverConfig config;
  config.shot_rtol = args.tol;
  rep["spec"] = spec_to_json(*spec);
  rep["config"] = config_to_json(config);
  rep["config"]["k"] = args.k;

  // Amplitude sweep, ascending.
  std::string csv = "a,node_count,terminal_behavior\n";
  const int n = std::max(2, args.sweep);
  for (int i = 0; i < n; ++i) {
    const double a = args.amin + (args.amax - args.amin) * i / (n - 1);
    const ShotTrajectory t = shoot(*spec, a, config);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.17g,%d,%s\n", a, t.node_count,
                  terminal_label(t.terminal));
    csv += buf;
  }
  const fs::path dir = resolve_out_dir(args.out);
  write_file(dir, "sweep.csv", csv);

  try {
    const OracleResult orc =
        find_k_node_profile(*spec, args.k, args.amin, args.amax, config);
    rep["bisection"] = trajectory_to_json(orc);
    rep["timing"] = {{"total_s", now_seconds() - t0}};
    out.report_json = rep.dump(2) + "\n";
    write_file(dir, "report.json", out.report_json);

    std::string prof = "r,u\n";
    char buf[96];
    for (const auto& s : orc.trajectory.samples) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", s.r, s.u);
      prof += buf;
    }
    write_file(dir, "profile.csv", prof);

    std::snprintf(buf, sizeof(buf), "k=%d  a*=%.12g  energy=%.12g  mode=%s",
                  args.k, orc.amplitude, orc.energy,
                  orc.backward ? "backward" : "forward");
    out.message = buf;
  } catch (const Error& e) {
    rep["error"] = e.what();
    rep["timing"] = {{"total_s", now_seconds() - t0}};
    out.report_json = rep.dump(2) + "\n";
    write_file(dir, "report.json", out.report_json);
    out.exit_code = kExitNumerical;
    out.message = std::string("oracle failure (sweep written): ") + e.what();
  }
  return out;
}

RunOutcome run_check(const CheckArgs& args) {
  RunOutcome out;
  std::optional<ProblemSpec> spec;
  try {
    spec.emplace(spec_from_args(args.p, args.dim, args.rmax, args.q, args.lambda));
  } catch (const std::invalid_argument& e) {
    out.exit_code = kExitUsage;
    out.message = std::string("spec error: ") + e.what();
    return out;
  }
  const AssumptionReport rep = check_assumptions(*spec);
  json j;
  j["command"] = "check";
  j["spec"] = spec_to_json(*spec);
  j["assumptions"] = assumptions_to_json(rep);
  out.report_json = j.dump(2) + "\n";
  out.message = rep.table();
  return out;
}

}  // namespace plnodal
