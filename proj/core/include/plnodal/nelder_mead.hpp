#pragma once

#include <functional>
#include <vector>

namespace plnodal {

struct NelderMeadResult {
  std::vector<double> best;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Downhill simplex with the standard coefficients (reflect 1, expand 2,
// contract 0.5, shrink 0.5).  Stops when the simplex value spread falls
// below f_tol or the iteration cap is reached.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, double scale, double f_tol, int max_iter);

}  // namespace plnodal
