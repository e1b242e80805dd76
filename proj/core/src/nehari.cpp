#include "plnodal/nehari.hpp"

#include <cmath>

namespace plnodal {

namespace {

constexpr double kZeroNorm = 1e-14;
constexpr double kBracketCap = 1e8;
constexpr double kRelWidth = 1e-12;

double checked_norm(const ProblemSpec& spec, const RadialFunction& u) {
  const double n = norm_w1p(u, spec.p());
  if (n < kZeroNorm) throw ZeroInputError("nehari: zero input profile");
  return n;
}

// Root of phi by expansion from t = 1 and bisection.
double root_from_moments(const ProblemSpec& spec, const RayMoments& m) {
  double lo = 1.0, hi = 1.0;
  if (phi_from_moments(spec, m, 1.0) > 0.0) {
    while (phi_from_moments(spec, m, hi) > 0.0) {
      hi *= 2.0;
      if (hi > kBracketCap)
        throw NoSignChangeError(
            "nehari: phi stayed positive up to t = 1e8; instance is "
            "numerically not superlinear");
    }
    lo = hi / 2.0;
  } else {
    while (phi_from_moments(spec, m, lo) <= 0.0) {
      lo *= 0.5;
      if (lo < 1e-12)
        throw NoSignChangeError("nehari: phi not positive near t = 0");
    }
    hi = lo * 2.0;
  }
  while (hi - lo > kRelWidth * hi) {
    const double mid = 0.5 * (lo + hi);
    (phi_from_moments(spec, m, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double phi_from_moments(const ProblemSpec& spec, const RayMoments& m,
                        double t) {
  double acc = std::pow(t, spec.p() - 1.0) * m.norm_pow_p;
  const auto& terms = spec.terms();
  for (std::size_t i = 0; i < terms.size(); ++i)
    acc -= std::pow(t, terms[i].q - 1.0) * m.source[i];
  return acc;
}

double energy_from_moments(const ProblemSpec& spec, const RayMoments& m,
                           double t) {
  double acc = std::pow(t, spec.p()) / spec.p() * m.norm_pow_p;
  const auto& terms = spec.terms();
  for (std::size_t i = 0; i < terms.size(); ++i)
    acc -= std::pow(t, terms[i].q) / terms[i].q * m.source[i];
  return acc;
}

double phi(const ProblemSpec& spec, const RadialFunction& u, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("phi: t must be positive");
  checked_norm(spec, u);
  RadialFunction tu = u;
  for (double& v : tu.values) v *= t;
  return pairing(spec, tu, u);
}

ScalingResult project(const ProblemSpec& spec, const RadialFunction& u,
                      bool keep_samples) {
  checked_norm(spec, u);
  const RayMoments m = ray_moments(spec, u);
  const double t = root_from_moments(spec, m);

  ScalingResult res;
  res.t_star = t;
  res.projected = u;
  for (double& v : res.projected.values) v *= t;
  res.energy_at_t_star = energy(spec, res.projected);
  if (keep_samples) {
    for (int i = 0; i < 33; ++i) {
      const double s = t * std::pow(10.0, -2.0 + 4.0 * i / 32.0);
      res.phi_samples.emplace_back(s, phi_from_moments(spec, m, s));
    }
  }
  return res;
}

UniqueMaxReport verify_unique_max(const ProblemSpec& spec,
                                  const RadialFunction& u, int samples) {
  checked_norm(spec, u);
  const RayMoments m = ray_moments(spec, u);
  UniqueMaxReport rep;
  rep.t_star = root_from_moments(spec, m);

  int n = std::max(9, samples);
  double last_phi = 0.0;
  int dir = 0, direction_changes = 0;
  double last_j = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = rep.t_star * std::pow(10.0, -3.0 + 6.0 * i / (n - 1));
    const double ph = phi_from_moments(spec, m, t);
    const double j = energy_from_moments(spec, m, t);
    rep.samples.emplace_back(t, j);
    if (i > 0 && ph * last_phi < 0.0) ++rep.phi_sign_changes;
    if (i > 0) {
      const int d = j > last_j ? 1 : -1;
      if (dir != 0 && d != dir) ++direction_changes;
      dir = d;
    }
    last_phi = ph;
    last_j = j;
  }
  rep.unimodal = direction_changes == 1;
  return rep;
}

}  // namespace plnodal
