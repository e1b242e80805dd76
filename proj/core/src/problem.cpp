#include "plnodal/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace plnodal {

namespace {

// sign(x) |x|^e with fast paths for the small integer exponents that
// dominate solver inner loops.
double sgn_pow(double x, double e) {
  if (x == 0.0) return 0.0;
  const double a = std::abs(x);
  double m;
  if (e == 1.0)
    m = a;
  else if (e == 2.0)
    m = a * a;
  else if (e == 3.0)
    m = a * a * a;
  else
    m = std::pow(a, e);
  return x < 0.0 ? -m : m;
}

double abs_pow(double x, double e) {
  const double a = std::abs(x);
  if (a == 0.0) return 0.0;
  if (e == 2.0) return a * a;
  if (e == 3.0) return a * a * a;
  if (e == 4.0) {
    const double a2 = a * a;
    return a2 * a2;
  }
  return std::pow(a, e);
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

}  // namespace

ProblemSpec::ProblemSpec(double p, int dim, double r_max,
                         std::vector<NonlinearityTerm> terms)
    : p_(p), dim_(dim), r_max_(r_max), terms_(std::move(terms)) {
  if (!(p_ > 1.0)) throw std::invalid_argument("ProblemSpec: requires p > 1");
  if (dim_ < 1) throw std::invalid_argument("ProblemSpec: requires dim >= 1");
  if (!(r_max_ > 0.0))
    throw std::invalid_argument("ProblemSpec: requires r_max > 0");
  const double pstar = critical_exponent();
  for (const auto& t : terms_) {
    if (!(t.lambda > 0.0))
      throw std::invalid_argument("ProblemSpec: term coefficients must be positive");
    if (!(t.q > p_) || !(t.q < pstar)) {
      std::ostringstream os;
      os << "ProblemSpec: exponent q=" << t.q << " outside the window (p, p*) = ("
         << p_ << ", ";
      if (std::isinf(pstar))
        os << "inf";
      else
        os << pstar;
      os << ")";
      throw std::invalid_argument(os.str());
    }
  }
}

double ProblemSpec::critical_exponent() const {
  if (dim_ > p_) return dim_ * p_ / (dim_ - p_);
  return std::numeric_limits<double>::infinity();
}

bool ProblemSpec::has_weights() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const NonlinearityTerm& t) { return bool(t.weight); });
}

double eval_f(const ProblemSpec& spec, double r, double u) {
  double acc = 0.0;
  for (const auto& t : spec.terms())
    acc += t.coefficient(r) * sgn_pow(u, t.q - 1.0);
  return acc;
}

double eval_F(const ProblemSpec& spec, double r, double u) {
  double acc = 0.0;
  for (const auto& t : spec.terms())
    acc += t.coefficient(r) * abs_pow(u, t.q) / t.q;
  return acc;
}

double eval_f_branch(const ProblemSpec& spec, Sign branch, double r, double u) {
  if (branch == Sign::plus)
    return u >= 0.0 ? eval_f(spec, r, u) : -eval_f(spec, r, -u);
  return u <= 0.0 ? eval_f(spec, r, u) : -eval_f(spec, r, -u);
}

double eval_F_branch(const ProblemSpec& spec, Sign branch, double r, double u) {
  if (branch == Sign::plus)
    return u >= 0.0 ? eval_F(spec, r, u) : eval_F(spec, r, -u);
  return u <= 0.0 ? eval_F(spec, r, u) : eval_F(spec, r, -u);
}

AssumptionReport check_assumptions(const ProblemSpec& spec,
                                   const ScanParams& scan) {
  if (scan.points < 9)
    throw std::invalid_argument("check_assumptions: scan needs at least 9 points");
  if (!(scan.t_min <= 1e-4) || !(scan.t_max >= 1e4))
    throw std::invalid_argument(
        "check_assumptions: scan must span at least [1e-4, 1e4]");
  if (spec.terms().empty())
    throw std::invalid_argument("check_assumptions: empty nonlinearity");

  // Construction already enforces the window; revalidate so a report can
  // never be produced for an out-of-window spec.
  const double pstar = spec.critical_exponent();
  for (const auto& t : spec.terms())
    if (!(t.q > spec.p()) || !(t.q < pstar))
      throw std::invalid_argument("check_assumptions: exponent window violation");

  std::vector<double> radii = scan.radii;
  if (radii.empty())
    radii = {0.0, 0.5 * spec.r_max(), spec.r_max()};

  AssumptionReport rep;
  rep.f1 = rep.f2 = rep.f3 = rep.f4 = rep.sq = true;

  const double p = spec.p();
  double q_max = 0.0, q_min = std::numeric_limits<double>::infinity();
  for (const auto& t : spec.terms()) {
    q_max = std::max(q_max, t.q);
    q_min = std::min(q_min, t.q);
  }

  const int n = scan.points;
  const double lmin = std::log(scan.t_min), lmax = std::log(scan.t_max);
  for (double r : radii) {
    std::vector<double> lt(n), lf(n), lFp(n), lF2(n);
    std::vector<AssumptionReport::Sample> rows(n);
    for (int i = 0; i < n; ++i) {
      const double t = std::exp(lmin + (lmax - lmin) * i / (n - 1));
      const double f = eval_f(spec, r, t);
      const double F = eval_F(spec, r, t);
      const double fr = f / sgn_pow(t, p - 1.0);
      const double Fr = F / abs_pow(t, p);
      lt[i] = std::log(t);
      lf[i] = std::log(std::max(fr, 1e-300));
      lFp[i] = std::log(std::max(Fr, 1e-300));
      lF2[i] = std::log(std::max(F / (t * t), 1e-300));
      rows[i] = {r, t, fr, Fr};
      rep.growth_constant =
          std::max(rep.growth_constant,
                   std::abs(f) / (1.0 + abs_pow(t, q_max - 1.0)));
    }
    rep.samples.insert(rep.samples.end(), rows.begin(), rows.end());

    // Bottom-decade slope of log(f-ratio): positive iff the ratio decays to
    // zero as t -> 0.
    const int decade = std::max(2, n / 8);
    const std::vector<double> lt_lo(lt.begin(), lt.begin() + decade);
    const std::vector<double> lt_hi(lt.end() - decade, lt.end());
    rep.f1 = rep.f1 &&
             ls_slope(lt_lo, std::vector<double>(lf.begin(), lf.begin() + decade)) > 1e-6;
    // Top-decade slopes of log(F/t^p) and log(F/t^2).
    rep.f3 = rep.f3 &&
             ls_slope(lt_hi, std::vector<double>(lFp.end() - decade, lFp.end())) > 1e-6;
    rep.sq = rep.sq &&
             ls_slope(lt_hi, std::vector<double>(lF2.end() - decade, lF2.end())) > 1e-6;
    // Ratio monotone for t >= monotonicity_from (oddness covers t <= -R).
    for (int i = 0; i + 1 < n; ++i) {
      if (rows[i].t < scan.monotonicity_from) continue;
      if (rows[i + 1].f_ratio < rows[i].f_ratio * (1.0 - 1e-12)) {
        rep.f4 = false;
        break;
      }
    }
    rep.f2 = rep.f2 && std::isfinite(rep.growth_constant);
  }

  rep.ar_mu = q_min;
  rep.ar = q_min > p;
  return rep;
}

std::string AssumptionReport::table() const {
  std::ostringstream os;
  auto verdict = [](bool v) { return v ? "pass" : "FAIL"; };
  os << "condition  verdict  note\n";
  os << "(f1)       " << verdict(f1) << "     f/|t|^{p-2}t -> 0 as t -> 0\n";
  os << "(f2)       " << verdict(f2) << "     |f| <= C(1+|t|^{q-1}), C ~ "
     << growth_constant << "\n";
  os << "(f3)       " << verdict(f3) << "     F/|t|^p -> inf as t -> inf\n";
  os << "(f4)       " << verdict(f4) << "     f/|t|^{p-2}t nondecreasing, t >= R\n";
  os << "(SQ)       " << verdict(sq) << "     F/t^2 -> inf as t -> inf\n";
  os << "(AR)       " << verdict(ar) << "     mu = " << ar_mu << "\n";
  os << "\n     r            t        f/|t|^{p-2}t       F/|t|^p\n";
  for (const auto& s : samples) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%8.3f  %12.4e  %16.8e  %14.6e\n", s.r, s.t,
                  s.f_ratio, s.F_ratio);
    os << buf;
  }
  return os.str();
}

std::string to_json_string(const ProblemSpec& spec) {
  if (spec.has_weights())
    throw std::invalid_argument("to_json_string: weighted terms are not serializable");
  nlohmann::json j;
  j["p"] = spec.p();
  j["dim"] = spec.dim();
  j["r_max"] = spec.r_max();
  j["terms"] = nlohmann::json::array();
  for (const auto& t : spec.terms())
    j["terms"].push_back({{"lambda", t.lambda}, {"q", t.q}});
  return j.dump();
}

ProblemSpec spec_from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<NonlinearityTerm> terms;
  for (const auto& t : j.at("terms"))
    terms.push_back({t.at("lambda").get<double>(), t.at("q").get<double>(), nullptr});
  return ProblemSpec(j.at("p").get<double>(), j.at("dim").get<int>(),
                     j.at("r_max").get<double>(), std::move(terms));
}

}  // namespace plnodal
