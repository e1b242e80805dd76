#include <cstdio>
#include <utility>

#include "CLI11.hpp"
#include "plnodal/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"plnodal: radial nodal solutions of p-Laplacian field equations"};
  app.require_subcommand(1);

  plnodal::SolveArgs sa;
  double amin = 0.0, amax = 0.0;
  auto* solve = app.add_subcommand("solve", "compute a k-node radial solution");
  solve->add_option("--p", sa.p, "exponent p > 1");
  solve->add_option("--dim", sa.dim, "space dimension N >= 1");
  solve->add_option("--q", sa.q, "nonlinearity exponents (repeatable)")
      ->expected(-1);
  solve->add_option("--lambda", sa.lambda, "term coefficients (repeatable)")
      ->expected(-1);
  solve->add_option("--k", sa.k, "prescribed node count");
  solve->add_option("--rmax", sa.rmax, "truncation radius");
  solve->add_option("--grid", sa.grid, "elements across [0, rmax]");
  solve->add_option("--tol", sa.tol, "residual tolerance");
  solve->add_option("--seed", sa.seed, "rng seed");
  solve->add_option("--out", sa.out, "output directory (default $PLNODAL_OUT)");
  solve->add_flag("--minus", sa.leading_minus, "leading sign - instead of +");
  solve->add_option("--amin", amin, "oracle cross-check bracket (lower)");
  solve->add_option("--amax", amax, "oracle cross-check bracket (upper)");

  plnodal::OracleArgs oa;
  auto* oracle =
      app.add_subcommand("oracle", "shooting sweep and k-node bisection");
  oracle->add_option("--p", oa.p, "exponent p > 1");
  oracle->add_option("--dim", oa.dim, "space dimension N >= 1");
  oracle->add_option("--q", oa.q, "nonlinearity exponents (repeatable)")
      ->expected(-1);
  oracle->add_option("--lambda", oa.lambda, "term coefficients (repeatable)")
      ->expected(-1);
  oracle->add_option("--k", oa.k, "prescribed node count");
  oracle->add_option("--amin", oa.amin, "bracket lower end");
  oracle->add_option("--amax", oa.amax, "bracket upper end");
  oracle->add_option("--rmax", oa.rmax, "integration horizon");
  oracle->add_option("--tol", oa.tol, "integrator relative tolerance");
  oracle->add_option("--sweep", oa.sweep, "sweep sample count");
  oracle->add_option("--out", oa.out, "output directory");

  plnodal::CheckArgs ca;
  auto* check =
      app.add_subcommand("check", "verify the structural conditions on f");
  check->add_option("--p", ca.p, "exponent p > 1");
  check->add_option("--dim", ca.dim, "space dimension N >= 1");
  check->add_option("--q", ca.q, "nonlinearity exponents (repeatable)")
      ->expected(-1);
  check->add_option("--lambda", ca.lambda, "term coefficients (repeatable)")
      ->expected(-1);
  check->add_option("--rmax", ca.rmax, "truncation radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    std::fprintf(stderr, "usage: plnodal [solve|oracle|check] --p <f> --dim <n> --q <f>...\n");
    return plnodal::kExitUsage;
  }

  plnodal::RunOutcome outcome;
  if (solve->parsed()) {
    if (amin > 0.0 && amax > amin) sa.cross_check = std::make_pair(amin, amax);
    outcome = plnodal::run_solve(sa);
  } else if (oracle->parsed()) {
    outcome = plnodal::run_oracle(oa);
  } else {
    outcome = plnodal::run_check(ca);
  }
  std::printf("%s\n", outcome.message.c_str());
  return outcome.exit_code;
}
