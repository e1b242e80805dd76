#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "plnodal/errors.hpp"

namespace plnodal {

enum class Sign : int { plus = +1, minus = -1 };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline const char* sign_label(Sign s) { return s == Sign::plus ? "+" : "-"; }

// One term lambda(r) |u|^{q-2} u of the nonlinearity.  The optional radial
// weight must be bounded and bounded away from zero; it is not serializable.
struct NonlinearityTerm {
  double lambda = 1.0;
  double q = 4.0;
  std::function<double(double)> weight;  // nullptr means 1

  double coefficient(double r) const {
    return weight ? lambda * weight(r) : lambda;
  }
};

// Immutable description of one PDE instance
//   -div(|grad u|^{p-2} grad u) + |u|^{p-2} u = f(|x|, u)  on R^dim,
// truncated to the ball of radius r_max, with f an odd finite sum of powers.
// Construction validates p > 1, dim >= 1, r_max > 0, lambda_i > 0 and the
// subcritical window q_i in (p, p*).
class ProblemSpec {
 public:
  ProblemSpec(double p, int dim, double r_max,
              std::vector<NonlinearityTerm> terms);

  double p() const { return p_; }
  int dim() const { return dim_; }
  double r_max() const { return r_max_; }
  const std::vector<NonlinearityTerm>& terms() const { return terms_; }

  // p* = dim*p/(dim-p) when dim > p, infinity otherwise.
  double critical_exponent() const;

  bool has_weights() const;

 private:
  double p_;
  int dim_;
  double r_max_;
  std::vector<NonlinearityTerm> terms_;
};

// f(r, u) = sum_i lambda_i(r) |u|^{q_i - 2} u.  Odd in u, zero at u = 0.
double eval_f(const ProblemSpec& spec, double r, double u);

// Exact antiderivative F(r, u) = sum_i lambda_i(r) |u|^{q_i} / q_i.
double eval_F(const ProblemSpec& spec, double r, double u);

// One-signed branches: f+(r,u) = f(r,u) for u >= 0 and -f(r,-u) below;
// mirrored for f-.  Identity for odd f, kept for checking that identity.
double eval_f_branch(const ProblemSpec& spec, Sign branch, double r, double u);
double eval_F_branch(const ProblemSpec& spec, Sign branch, double r, double u);

struct ScanParams {
  double t_min = 1e-4;
  double t_max = 1e4;
  int points = 81;
  std::vector<double> radii;         // empty: {0, r_max/2, r_max}
  double monotonicity_from = 1.0;    // check the growth ratio for t >= this
};

// Sampled verdicts for the structural conditions on f, with the witness
// ratio tables.  Deterministic given spec and scan grid.
struct AssumptionReport {
  bool f1 = false;  // f(r,t) = o(|t|^{p-2} t) near 0
  bool f2 = false;  // subcritical growth bound
  bool f3 = false;  // F(r,t)/|t|^p -> infinity
  bool f4 = false;  // f(r,t)/|t|^{p-2}t nondecreasing for large t
  bool sq = false;  // F(r,t)/t^2 -> infinity
  bool ar = false;  // mu F <= f t with mu = min q_i > p
  double ar_mu = 0.0;
  double growth_constant = 0.0;  // witness C for the growth bound

  struct Sample {
    double r, t;
    double f_ratio;  // f(r,t) / |t|^{p-2} t
    double F_ratio;  // F(r,t) / |t|^p
  };
  std::vector<Sample> samples;

  bool all_pass() const { return f1 && f2 && f3 && f4 && sq; }
  std::string table() const;
};

// Scans log-spaced amplitudes at a few radii and grades each condition from
// the fitted slopes.  Throws std::invalid_argument if the scan does not span
// [1e-4, 1e4] or the spec violates the exponent window.
AssumptionReport check_assumptions(const ProblemSpec& spec,
                                   const ScanParams& scan = {});

// JSON round trip: {"p":2.0,"dim":3,"r_max":40.0,"terms":[{"lambda":1.0,"q":4.0}]}.
// Weighted terms cannot be serialized and make to_json_string throw.
std::string to_json_string(const ProblemSpec& spec);
ProblemSpec spec_from_json_string(const std::string& text);

}  // namespace plnodal
