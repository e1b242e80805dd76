#include <cmath>
#include <random>

#include "doctest.h"
#include "plnodal/problem.hpp"

using namespace plnodal;

namespace {

ProblemSpec cubic_1d(double rmax = 40.0) {
  return ProblemSpec(2.0, 1, rmax, {{1.0, 4.0, nullptr}});
}

// Adaptive Simpson quadrature, test-side oracle for the antiderivative.
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double m = 0.5 * (a + b);
  return simpson(f, a, b, f(a), f(m), f(b), tol, 40);
}

}  // namespace

TEST_SUITE_BEGIN("problem");

TEST_CASE("eval_f on a single power term") {
  const auto spec = cubic_1d();
  CHECK(eval_f(spec, 0.3, 2.0) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(eval_f(spec, 1.0, 0.0) == 0.0);
  CHECK(eval_f(spec, 5.0, -2.0) == doctest::Approx(-8.0).epsilon(1e-14));
}

TEST_CASE("eval_F matches the closed form and the quadrature oracle") {
  const auto spec = cubic_1d();
  CHECK(eval_F(spec, 0.0, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(eval_F(spec, 1.0, 0.0) == 0.0);

  const double direct = eval_F(spec, 2.0, 1.5);
  const double quad = integrate([&](double s) { return eval_f(spec, 2.0, s); },
                                0.0, 1.5, 1e-13);
  CHECK(std::abs(direct - quad) < 1e-10);
}

TEST_CASE("branch reflections") {
  const auto spec = cubic_1d();
  for (double u : {-2.0, -0.3, 0.0, 0.7, 3.1}) {
    CHECK(eval_f_branch(spec, Sign::plus, 1.0, u) ==
          doctest::Approx(eval_f(spec, 1.0, u)).epsilon(1e-14));
  }
  CHECK(eval_f_branch(spec, Sign::plus, 0.0, -1.0) == doctest::Approx(-1.0));
  CHECK(eval_f_branch(spec, Sign::minus, 0.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("oddness of f and evenness of F on random samples") {
  const ProblemSpec spec(2.0, 3, 10.0, {{0.7, 3.0, nullptr}, {1.3, 4.5, nullptr}});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ur(0.0, 10.0), uu(-8.0, 8.0);
  for (int i = 0; i < 200; ++i) {
    const double r = ur(rng), u = uu(rng);
    CHECK(eval_f(spec, r, -u) == doctest::Approx(-eval_f(spec, r, u)).epsilon(1e-14));
    CHECK(eval_F(spec, r, -u) == doctest::Approx(eval_F(spec, r, u)).epsilon(1e-14));
  }
}

TEST_CASE("dF/du = f by central differences") {
  const ProblemSpec spec(2.0, 3, 10.0, {{1.0, 4.0, nullptr}, {0.5, 3.2, nullptr}});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uu(0.1, 10.0);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    double u = uu(rng);
    if (i % 2) u = -u;
    const double fd =
        (eval_F(spec, 1.0, u + h) - eval_F(spec, 1.0, u - h)) / (2 * h);
    const double f = eval_f(spec, 1.0, u);
    CHECK(std::abs(fd - f) / std::max(1.0, std::abs(f)) < 1e-6);
  }
}

TEST_CASE("construction rejects exponents outside the window") {
  CHECK_THROWS_AS(ProblemSpec(2.0, 3, 10.0, {{1.0, 7.0, nullptr}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec(2.0, 3, 10.0, {{1.0, 6.0, nullptr}}),
                  std::invalid_argument);  // q = p* exactly
  CHECK_THROWS_AS(ProblemSpec(2.0, 3, 10.0, {{1.0, 2.0, nullptr}}),
                  std::invalid_argument);  // q = p
  CHECK_THROWS_AS(ProblemSpec(0.9, 3, 10.0, {{1.0, 4.0, nullptr}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec(2.0, 3, -1.0, {{1.0, 4.0, nullptr}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec(2.0, 3, 10.0, {{-1.0, 4.0, nullptr}}),
                  std::invalid_argument);
}

TEST_CASE("assumption scan verdicts") {
  SUBCASE("cubic in three dimensions passes everything") {
    const ProblemSpec spec(2.0, 3, 10.0, {{1.0, 4.0, nullptr}});
    const auto rep = check_assumptions(spec);
    CHECK(rep.f1);
    CHECK(rep.f2);
    CHECK(rep.f3);
    CHECK(rep.f4);
    CHECK(rep.sq);
    CHECK(rep.ar);
    CHECK(rep.ar_mu == doctest::Approx(4.0));
  }
  SUBCASE("p = 3 in two dimensions: the window is (3, inf)") {
    const ProblemSpec spec(3.0, 2, 10.0, {{1.0, 5.0, nullptr}});
    CHECK(std::isinf(spec.critical_exponent()));
    const auto rep = check_assumptions(spec);
    CHECK(rep.all_pass());
  }
  SUBCASE("two-term family reports the smallest exponent for (AR)") {
    const ProblemSpec spec(2.0, 1, 10.0, {{1.0, 3.0, nullptr}, {1.0, 5.0, nullptr}});
    const auto rep = check_assumptions(spec);
    CHECK(rep.all_pass());
    CHECK(rep.ar_mu == doctest::Approx(3.0));
  }
  SUBCASE("scan must span the mandated window") {
    const ProblemSpec spec(2.0, 3, 10.0, {{1.0, 4.0, nullptr}});
    ScanParams narrow;
    narrow.t_min = 1e-2;
    CHECK_THROWS_AS(check_assumptions(spec, narrow), std::invalid_argument);
  }
  SUBCASE("report carries the witness table") {
    const ProblemSpec spec(2.0, 3, 10.0, {{1.0, 4.0, nullptr}});
    const auto rep = check_assumptions(spec);
    CHECK(!rep.samples.empty());
    CHECK(rep.table().find("pass") != std::string::npos);
  }
}

TEST_CASE("growth ratio is nondecreasing for power families") {
  const ProblemSpec spec(2.0, 1, 10.0, {{1.0, 3.0, nullptr}, {2.0, 5.0, nullptr}});
  double last = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double t = std::pow(10.0, -1.0 + 3.0 * i / 40.0);
    const double ratio = eval_f(spec, 0.0, t) / t;
    CHECK(ratio >= last * (1.0 - 1e-12));
    last = ratio;
  }
}

TEST_CASE("json round trip") {
  const ProblemSpec spec(2.0, 3, 40.0, {{1.0, 4.0, nullptr}, {0.5, 3.5, nullptr}});
  const auto text = to_json_string(spec);
  const ProblemSpec back = spec_from_json_string(text);
  CHECK(back.p() == spec.p());
  CHECK(back.dim() == spec.dim());
  CHECK(back.r_max() == spec.r_max());
  REQUIRE(back.terms().size() == 2);
  CHECK(back.terms()[1].q == doctest::Approx(3.5));

  const ProblemSpec weighted(2.0, 1, 10.0,
                             {{1.0, 4.0, [](double) { return 1.0; }}});
  CHECK_THROWS_AS(to_json_string(weighted), std::invalid_argument);
}

TEST_SUITE_END();
