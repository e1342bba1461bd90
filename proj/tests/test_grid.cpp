#include <doctest.h>

#include <cmath>
#include <limits>

#include "rwave/data_families.hpp"
#include "rwave/grid.hpp"
#include "rwave/params.hpp"

using namespace rwave;

namespace {
double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("make_grid lays out uniform nodes") {
  const Grid g = make_grid(10.0, 11);
  CHECK(g.dr == doctest::Approx(1.0));
  CHECK(g.r[0] == 0.0);
  CHECK(g.r[10] == doctest::Approx(10.0));
  for (Index j = 1; j < g.n; ++j) CHECK(g.r[j] > g.r[j - 1]);
}

TEST_CASE("make_grid rejects bad arguments") {
  CHECK_THROWS_AS(make_grid(10.0, 8), Error);
  CHECK_THROWS_AS(make_grid(-1.0, 100), Error);
  CHECK_THROWS_AS(make_grid(std::numeric_limits<double>::infinity(), 100), Error);
  CHECK_THROWS_AS(make_grid(std::numeric_limits<double>::quiet_NaN(), 100), Error);
}

TEST_CASE("trapezoid weights integrate r^2 and r^3 to closed form") {
  {
    const Grid g = make_grid(40.0, 4001);
    const double got = g.integrate(g.r.square());
    CHECK(rel_err(got, 40.0 * 40.0 * 40.0 / 3.0) < 1e-6);
  }
  {
    const Grid g = make_grid(10.0, 1001);
    const double got = g.integrate(g.r * g.r.square());
    CHECK(rel_err(got, 1e4 / 4.0) < 1e-4);
  }
}

TEST_CASE("quad basics") {
  const Grid g = make_grid(40.0, 4001);
  SUBCASE("zero integrand") {
    CHECK(quad(Array::Zero(g.n), g) == 0.0);
  }
  SUBCASE("Gaussian against r^2 weight has the closed-form value") {
    const double p = 4.0;
    const Array vals = (-(p + 1.0) * g.r.square()).exp();
    const double want = std::pow(EIGEN_PI, 1.5) * std::pow(5.0, -1.5);  // 0.49804639687723...
    CHECK(rel_err(quad(vals, g, g.r.square()), want) < 1e-4);
  }
  SUBCASE("unit-ball indicator gives the ball volume to first order") {
    Array vals = (g.r <= 1.0).cast<double>();
    const double want = 4.0 * EIGEN_PI / 3.0;
    CHECK(rel_err(quad(vals, g, g.r.square()), want) < 2e-2);
  }
  SUBCASE("non-finite values rejected") {
    Array vals = Array::Zero(g.n);
    vals[5] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(quad(vals, g), Error);
  }
}

TEST_CASE("trapezoid quadrature converges at order 2") {
  // f = r against weight r^2: the trapezoid error for r^3 is exactly O(dr^2).
  const double want = 1e4 / 4.0;
  double errs[3];
  Index n = 126;
  for (int l = 0; l < 3; ++l) {
    const Grid g = make_grid(10.0, n);
    errs[l] = std::abs(g.integrate(g.r * g.r.square()) - want);
    n = (n - 1) * 2 + 1;
  }
  for (int l = 0; l + 1 < 3; ++l) {
    const double slope = std::log2(errs[l] / errs[l + 1]);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("radial Dirichlet identity: (w' - w/r)^2 and (w')^2 integrate alike") {
  const ModelParams mp = make_params(4.0, 3.0 / 7.0);
  const DataFamily profiles[] = {
      {FamilyKind::GaussianBump, 1.0, 1.0, 0.0},
      {FamilyKind::CompactBump, 1.3, 2.0, 0.0},
      {FamilyKind::OutgoingWave, 0.7, 2.0, 0.0},
  };
  for (const auto& fam : profiles) {
    double diffs[2];
    Index n = 2001;
    for (int l = 0; l < 2; ++l) {
      const Grid g = make_grid(20.0, n);
      const RadialState s = sample_data(fam, g, mp);
      const Array wp = deriv(s.w, g);
      Array ur_r = wp - u_values(s, g);  // u_r * r
      ur_r[0] = 0.0;
      const double a = quad(ur_r.square(), g);
      const double b = quad(wp.square(), g);
      diffs[l] = std::abs(a - b) / b;
      n = (n - 1) * 2 + 1;
    }
    CHECK(diffs[0] < 1e-2);
    CHECK(diffs[1] < diffs[0] / 3.0);  // O(dr^2) shrink under halving
  }
}

TEST_CASE("cut_weighted_integral edge cases") {
  const Grid g = make_grid(10.0, 1001);
  const Array d = Array::Ones(g.n);
  SUBCASE("cut at or past r_max is empty") {
    CHECK(cut_weighted_integral(d, g, 10.0, 0.5) == 0.0);
    CHECK(cut_weighted_integral(d, g, 11.0, 0.5) == 0.0);
  }
  SUBCASE("kappa = 0 with cut 0 is the full trapezoid integral") {
    CHECK(cut_weighted_integral(d, g, 0.0, 0.0) == doctest::Approx(10.0).epsilon(1e-12));
  }
  SUBCASE("constant density, exact power integral") {
    // int_c^{rmax} (r-c)^k dr = (rmax-c)^{k+1}/(k+1)
    const double c = 3.25, k = 0.5;
    const double want = std::pow(10.0 - c, k + 1.0) / (k + 1.0);
    CHECK(cut_weighted_integral(d, g, c, k) == doctest::Approx(want).epsilon(1e-10));
  }
  SUBCASE("negative cut integrates the whole domain") {
    const double c = -1.0, k = 0.5;
    const double want = (std::pow(11.0, k + 1.0) - 1.0) / (k + 1.0);
    CHECK(cut_weighted_integral(d, g, c, k) == doctest::Approx(want).epsilon(1e-10));
  }
}
