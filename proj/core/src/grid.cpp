#include "plnodal/grid.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace plnodal {

namespace {

constexpr double kGradEps = 1e-12;

// Gauss-Legendre rules mapped to (0,1).
void gauss_rule(int n, std::vector<double>& xi, std::vector<double>& w) {
  static const double x3 = std::sqrt(3.0 / 5.0);
  static const double x4a = 0.3399810435848563, x4b = 0.8611363115940526;
  static const double w4a = 0.6521451548625461, w4b = 0.3478548451374538;
  static const double x5a = 0.5384693101056831, x5b = 0.9061798459386640;
  static const double w5a = 0.4786286704993665, w5b = 0.2369268850561891;
  std::vector<double> x, ww;
  switch (n) {
    case 2:
      x = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
      ww = {1.0, 1.0};
      break;
    case 3:
      x = {-x3, 0.0, x3};
      ww = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    case 4:
      x = {-x4b, -x4a, x4a, x4b};
      ww = {w4b, w4a, w4a, w4b};
      break;
    default:
      x = {-x5b, -x5a, 0.0, x5a, x5b};
      ww = {w5b, w5a, 0.5688888888888889, w5a, w5b};
      break;
  }
  xi.resize(x.size());
  w.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xi[i] = 0.5 * (x[i] + 1.0);
    w[i] = 0.5 * ww[i];
  }
}

inline double sgn_pow(double x, double e) {
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

inline double abs_pow(double x, double e) {
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

// (x^2 + eps^2)^{(p-2)/2} x: the regularized |x|^{p-2} x.  Exact for p = 2;
// keeps p in (1,2) usable.
inline double flux_pow(double x, double p) {
  if (p == 2.0) return x;
  if (p == 3.0) return std::abs(x) * x;  // eps irrelevant at this exponent
  return std::pow(x * x + kGradEps * kGradEps, 0.5 * (p - 2.0)) * x;
}

inline double rpow(double r, int dim) {
  switch (dim) {
    case 1:
      return 1.0;
    case 2:
      return r;
    case 3:
      return r * r;
    case 4:
      return r * r * r;
    default:
      return std::pow(r, dim - 1);
  }
}

void check_same_grid(const RadialFunction& u, const RadialFunction& v) {
  if (u.grid.get() != v.grid.get())
    throw std::invalid_argument("profiles live on different grids");
}

void check_shape(const RadialFunction& u) {
  if (!u.grid) throw std::invalid_argument("profile has no grid");
  if (u.values.size() != u.grid->nodes.size())
    throw std::invalid_argument("profile length does not match its grid");
}

}  // namespace

RadialGrid grid_from_nodes(int dim, std::vector<double> nodes,
                           bool dirichlet_left, bool dirichlet_right) {
  if (dim < 1) throw std::invalid_argument("grid_from_nodes: dim >= 1 required");
  if (nodes.size() < 3)
    throw std::invalid_argument("grid_from_nodes: need at least two elements");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1]))
      throw std::invalid_argument("grid_from_nodes: nodes must be strictly increasing");

  RadialGrid g;
  g.dim = dim;
  g.rho = nodes.front();
  g.sigma = nodes.back();
  g.dirichlet_left = dirichlet_left;
  g.dirichlet_right = dirichlet_right;
  g.nodes = std::move(nodes);

  // Exactness for r^{dim-1} * linear needs 2n-1 >= dim.
  const int nq = std::min(5, std::max(2, (dim + 2) / 2));
  std::vector<double> xi, w;
  gauss_rule(nq, xi, w);
  g.gauss_xi = xi;
  const int m = g.element_count();
  g.qp_r.resize(static_cast<std::size_t>(m) * nq);
  g.qp_w.resize(static_cast<std::size_t>(m) * nq);
  for (int e = 0; e < m; ++e) {
    const double he = g.nodes[e + 1] - g.nodes[e];
    for (int q = 0; q < nq; ++q) {
      const double r = g.nodes[e] + xi[q] * he;
      g.qp_r[e * nq + q] = r;
      g.qp_w[e * nq + q] = w[q] * he * rpow(r, dim);
    }
  }
  return g;
}

RadialGrid build_grid(int dim, double rho, double sigma, int m, double stretch,
                      bool dirichlet_left, bool dirichlet_right) {
  if (!(rho >= 0.0) || !(rho < sigma) || !std::isfinite(sigma))
    throw std::invalid_argument("build_grid: requires 0 <= rho < sigma < inf");
  if (m < 2) throw std::invalid_argument("build_grid: requires m >= 2");
  if (!(stretch > 0.0)) throw std::invalid_argument("build_grid: stretch > 0");

  // Element widths in geometric progression, h_last/h_first = stretch.
  std::vector<double> nodes(m + 1);
  const double ratio = std::pow(stretch, 1.0 / (m - 1));
  std::vector<double> h(m);
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    h[i] = (i == 0) ? 1.0 : h[i - 1] * ratio;
    total += h[i];
  }
  nodes[0] = rho;
  for (int i = 0; i < m; ++i)
    nodes[i + 1] = nodes[i] + h[i] * (sigma - rho) / total;
  nodes[m] = sigma;
  return grid_from_nodes(dim, std::move(nodes), dirichlet_left, dirichlet_right);
}

RadialGrid build_grid(int dim, double rho, double sigma, int m, double stretch) {
  return build_grid(dim, rho, sigma, m, stretch, rho > 0.0, true);
}

std::shared_ptr<const RadialGrid> make_grid(int dim, double rho, double sigma,
                                            int m, double stretch) {
  return std::make_shared<const RadialGrid>(
      build_grid(dim, rho, sigma, m, stretch));
}

RadialGrid concat_grids(const std::vector<const RadialGrid*>& pieces) {
  if (pieces.empty()) throw std::invalid_argument("concat_grids: no pieces");
  RadialGrid g;
  g.dim = pieces.front()->dim;
  g.rho = pieces.front()->rho;
  g.sigma = pieces.back()->sigma;
  g.dirichlet_left = pieces.front()->dirichlet_left;
  g.dirichlet_right = pieces.back()->dirichlet_right;
  g.gauss_xi = pieces.front()->gauss_xi;
  g.nodes.push_back(g.rho);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const RadialGrid& pc = *pieces[i];
    if (pc.dim != g.dim || pc.gauss_xi.size() != g.gauss_xi.size())
      throw std::invalid_argument("concat_grids: inconsistent pieces");
    if (i > 0 && std::abs(pc.rho - pieces[i - 1]->sigma) > 1e-12 * g.sigma)
      throw std::invalid_argument("concat_grids: pieces are not contiguous");
    g.nodes.insert(g.nodes.end(), pc.nodes.begin() + 1, pc.nodes.end());
    g.qp_r.insert(g.qp_r.end(), pc.qp_r.begin(), pc.qp_r.end());
    g.qp_w.insert(g.qp_w.end(), pc.qp_w.begin(), pc.qp_w.end());
  }
  return g;
}

RadialFunction zero_function(std::shared_ptr<const RadialGrid> grid) {
  RadialFunction u;
  u.values.assign(grid->nodes.size(), 0.0);
  u.grid = std::move(grid);
  return u;
}

double energy(const ProblemSpec& spec, const RadialFunction& uf) {
  check_shape(uf);
  const RadialGrid& g = *uf.grid;
  if (g.dim != spec.dim())
    throw std::invalid_argument("energy: grid dimension mismatch");
  const double p = spec.p();
  const int nq = g.points_per_element();
  double total = 0.0;
  for (int e = 0; e < g.element_count(); ++e) {
    const double ua = uf.values[e], ub = uf.values[e + 1];
    const double s = (ub - ua) / g.width(e);
    double wsum = 0.0, zero_order = 0.0;
    for (int q = 0; q < nq; ++q) {
      const double W = g.qp_w[e * nq + q];
      const double r = g.qp_r[e * nq + q];
      const double ug = ua + g.gauss_xi[q] * (ub - ua);
      wsum += W;
      zero_order += W * (abs_pow(ug, p) / p - eval_F(spec, r, ug));
    }
    total += wsum * abs_pow(s, p) / p + zero_order;
  }
  return total;
}

double pairing(const ProblemSpec& spec, const RadialFunction& uf,
               const RadialFunction& vf) {
  check_shape(uf);
  check_shape(vf);
  check_same_grid(uf, vf);
  const RadialGrid& g = *uf.grid;
  if (g.dim != spec.dim())
    throw std::invalid_argument("pairing: grid dimension mismatch");
  const double p = spec.p();
  const int nq = g.points_per_element();
  double total = 0.0;
  for (int e = 0; e < g.element_count(); ++e) {
    const double h = g.width(e);
    const double su = (uf.values[e + 1] - uf.values[e]) / h;
    const double sv = (vf.values[e + 1] - vf.values[e]) / h;
    const double flux = flux_pow(su, p);
    double wsum = 0.0, zero_order = 0.0;
    for (int q = 0; q < nq; ++q) {
      const double W = g.qp_w[e * nq + q];
      const double r = g.qp_r[e * nq + q];
      const double xi = g.gauss_xi[q];
      const double ug = uf.values[e] + xi * (uf.values[e + 1] - uf.values[e]);
      const double vg = vf.values[e] + xi * (vf.values[e + 1] - vf.values[e]);
      wsum += W;
      zero_order += W * (flux_pow(ug, p) - eval_f(spec, r, ug)) * vg;
    }
    total += flux * sv * wsum + zero_order;
  }
  return total;
}

RadialFunction residual(const ProblemSpec& spec, const RadialFunction& uf) {
  check_shape(uf);
  const RadialGrid& g = *uf.grid;
  if (g.dim != spec.dim())
    throw std::invalid_argument("residual: grid dimension mismatch");
  const double p = spec.p();
  const int nq = g.points_per_element();
  RadialFunction out;
  out.grid = uf.grid;
  out.values.assign(g.nodes.size(), 0.0);
  for (int e = 0; e < g.element_count(); ++e) {
    const double h = g.width(e);
    const double ua = uf.values[e], ub = uf.values[e + 1];
    const double flux = flux_pow((ub - ua) / h, p);
    double wsum = 0.0, za = 0.0, zb = 0.0;
    for (int q = 0; q < nq; ++q) {
      const double W = g.qp_w[e * nq + q];
      const double r = g.qp_r[e * nq + q];
      const double xi = g.gauss_xi[q];
      const double ug = ua + xi * (ub - ua);
      const double m = W * (flux_pow(ug, p) - eval_f(spec, r, ug));
      wsum += W;
      za += m * (1.0 - xi);
      zb += m * xi;
    }
    out.values[e] += -flux * wsum / h + za;
    out.values[e + 1] += flux * wsum / h + zb;
  }
  if (g.dirichlet_left) out.values.front() = 0.0;
  if (g.dirichlet_right) out.values.back() = 0.0;
  return out;
}

double norm_w1p(const RadialFunction& uf, double p) {
  check_shape(uf);
  const RadialGrid& g = *uf.grid;
  const int nq = g.points_per_element();
  double total = 0.0;
  for (int e = 0; e < g.element_count(); ++e) {
    const double ua = uf.values[e], ub = uf.values[e + 1];
    const double s = (ub - ua) / g.width(e);
    double wsum = 0.0, zero_order = 0.0;
    for (int q = 0; q < nq; ++q) {
      const double W = g.qp_w[e * nq + q];
      const double ug = ua + g.gauss_xi[q] * (ub - ua);
      wsum += W;
      zero_order += W * abs_pow(ug, p);
    }
    total += wsum * abs_pow(s, p) + zero_order;
  }
  return std::pow(total, 1.0 / p);
}

double RayMoments::total_source() const {
  return std::accumulate(source.begin(), source.end(), 0.0);
}

RayMoments ray_moments(const ProblemSpec& spec, const RadialFunction& uf) {
  check_shape(uf);
  const RadialGrid& g = *uf.grid;
  if (g.dim != spec.dim())
    throw std::invalid_argument("ray_moments: grid dimension mismatch");
  const double p = spec.p();
  const auto& terms = spec.terms();
  const int nq = g.points_per_element();
  RayMoments m;
  m.source.assign(terms.size(), 0.0);
  for (int e = 0; e < g.element_count(); ++e) {
    const double ua = uf.values[e], ub = uf.values[e + 1];
    const double s = (ub - ua) / g.width(e);
    double wsum = 0.0;
    for (int q = 0; q < nq; ++q) {
      const double W = g.qp_w[e * nq + q];
      const double r = g.qp_r[e * nq + q];
      const double ug = ua + g.gauss_xi[q] * (ub - ua);
      wsum += W;
      m.norm_pow_p += W * abs_pow(ug, p);
      for (std::size_t i = 0; i < terms.size(); ++i)
        m.source[i] += W * terms[i].coefficient(r) * abs_pow(ug, terms[i].q);
    }
    m.norm_pow_p += wsum * abs_pow(s, p);
  }
  return m;
}

bool tail_clear(const RadialFunction& uf, double fraction, double rel) {
  check_shape(uf);
  const RadialGrid& g = *uf.grid;
  const double cutoff = g.sigma - fraction * (g.sigma - g.rho);
  double amax = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < uf.values.size(); ++i) {
    const double a = std::abs(uf.values[i]);
    amax = std::max(amax, a);
    if (g.nodes[i] >= cutoff) tail = std::max(tail, a);
  }
  return tail <= rel * amax;
}

std::string to_csv(const RadialFunction& uf) {
  check_shape(uf);
  std::ostringstream os;
  os << "r,u\n";
  char buf[80];
  for (std::size_t i = 0; i < uf.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", uf.grid->nodes[i],
                  uf.values[i]);
    os << buf;
  }
  return os.str();
}

}  // namespace plnodal
