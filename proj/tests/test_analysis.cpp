#include "hllxw/analysis.hpp"
#include "hllxw/models.hpp"

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace hllxw;

namespace {

// Undamped profile through the Airy function:
// utilde(xi, 0) = 1/3 + 2 int_0^{xi / 3^(1/3)} Ai(s) ds.
double airy_profile(double xi) {
  const double y = xi / std::cbrt(3.0);
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double s) { return boost::math::airy_ai(s); }, 0.0, y, 10, 1e-13);
  return -1.0 + 2.0 * (2.0 / 3.0 + integral);
}

StateVec make(std::initializer_list<double> xs) {
  StateVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

}  // namespace

TEST_CASE("modified equation coefficients") {
  const auto c = modified_eq_coeffs(1.0, 0.01, 0.5);
  CHECK(c.d_up == 0.0025);
  CHECK(c.d_lw == doctest::Approx(-1.25e-5).epsilon(1e-14));
  const auto unit = modified_eq_coeffs(1.0, 0.01, 1.0);
  CHECK(unit.d_up == 0.0);
  CHECK(unit.d_lw == 0.0);
  const auto zero = modified_eq_coeffs(2.0, 0.1, 0.0);
  CHECK(zero.d_up == doctest::Approx(0.1));
  CHECK(zero.d_lw == doctest::Approx(-2.0 * 0.01 / 6.0));
  CHECK(c.blended_dispersion(1.0) == c.d_lw);
  CHECK(c.blended_dispersion(0.0) == c.d_up3);
  CHECK_THROWS_AS(modified_eq_coeffs(1.0, 0.01, 1.5), ContractViolation);
}

TEST_CASE("non-dimensional scales") {
  const auto c = modified_eq_coeffs(1.0, 0.01, 0.5);
  CHECK(dhat(c.d_up, c.d_lw, 0.25, 1.0).d_hat == 0.0);
  const double d1 = dhat(c.d_up, c.d_lw, 0.25, 0.3).d_hat;
  const double d2 = dhat(c.d_up, c.d_lw, 0.5, 0.3).d_hat;
  CHECK(d2 / d1 == doctest::Approx(std::cbrt(2.0)));
  double previous = dhat(c.d_up, c.d_lw, 0.25, 0.0).d_hat;
  for (double w = 0.1; w <= 1.0; w += 0.1) {
    const double d = dhat(c.d_up, c.d_lw, 0.25, std::min(w, 1.0)).d_hat;
    CHECK(d < previous);
    previous = d;
  }
  const NondimParams p = nondim(0.0, -1e-5, 0.25);
  CHECK(p.xi0 == doctest::Approx(std::cbrt(1e-5 * 0.25)));
  CHECK(p.orientation == 1.0);
  CHECK(nondim(0.0, 1e-5, 0.25).orientation == -1.0);
  CHECK_THROWS_AS(dhat(c.d_up, 0.0, 0.25, 0.5), DegenerateDispersion);
  CHECK_THROWS_AS(dhat(c.d_up, c.d_lw, 0.0, 0.5), ContractViolation);
}

TEST_CASE("utilde without damping matches the Airy integral") {
  CHECK(utilde(0.0, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
  for (double xi : {-6.0, -2.5, -1.0, 0.7, 2.0, 5.0}) {
    CAPTURE(xi);
    CHECK(std::abs(utilde(xi, 0.0) - airy_profile(xi)) <= 1e-6);
  }
}

TEST_CASE("utilde far field") {
  for (double d : {0.5, 1.0, 5.0}) {
    CHECK(utilde(50.0, d) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(utilde(-50.0, d) == doctest::Approx(-1.0).epsilon(1e-2));
  }
}

TEST_CASE("utilde approaches erf for strong damping") {
  const double d = 400.0;
  for (double xi = -60.0; xi <= 60.0; xi += 7.5) {
    CHECK(std::abs(utilde(xi, d) - std::erf(xi / (2 * std::sqrt(d)))) <= 2e-3);
  }
}

TEST_CASE("utilde undershoot on the left fades with damping") {
  // Oracle values from 30-digit quadrature of the defining integral.
  CHECK(utilde(-5.5, 2.0) == doctest::Approx(-1.017791577).epsilon(1e-8));
  CHECK(utilde(-7.0, 3.0) == doctest::Approx(-1.00246447).epsilon(1e-8));
  auto worst_drop = [](double d) {
    double previous = utilde(-10.0, d), worst = 0.0;
    for (double xi = -9.9; xi <= 10.0; xi += 0.1) {
      const double u = utilde(xi, d);
      worst = std::max(worst, previous - u);
      previous = u;
    }
    return worst;
  };
  const double d2 = worst_drop(2.0), d3 = worst_drop(3.0), d4 = worst_drop(4.0);
  CHECK(d2 > d3);
  CHECK(d3 > d4);
  CHECK(d4 < 1e-4);
  // Undamped: oscillates on the left.
  CHECK(utilde(-4.0, 0.0) > utilde(-3.0, 0.0));
}

TEST_CASE("dimensional and non-dimensional forms agree") {
  const auto c = modified_eq_coeffs(1.0, 0.01, 0.5);
  const double t = 0.25, omega = 0.5;
  const double d2 = c.d_up * (1 - omega);
  const NondimParams p = nondim(d2, c.d_lw, t);
  for (double x : {-0.02, -0.005, 0.0, 0.01, 0.03}) {
    const double dimensional = utilde_dimensional(x, t, d2, c.d_lw);
    const double scaled = p.orientation * utilde(p.orientation * x / p.xi0, p.d_hat);
    CHECK(dimensional == doctest::Approx(scaled).epsilon(1e-9));
  }
}

TEST_CASE("utilde arguments") {
  CHECK_THROWS_AS(utilde(0.0, -1.0), ContractViolation);
  CHECK_THROWS_AS(utilde(std::nan(""), 1.0), ContractViolation);
}

TEST_CASE("overshoot series and decay report") {
  CaseConfig c;
  c.model.id = "advection";
  c.left = make({-1});
  c.right = make({1});
  c.x_left = -1;
  c.x_right = 1;
  c.n_cells = 200;
  c.cfl_nu_bar = 0.5;
  c.t_end = 0.25;
  c.boundary = BoundaryKind::Periodic;
  c.scheme = FluxScheme::hllxomega(0.0);
  const AdvectionModel m(1.0);
  const auto series = overshoot_series(run(c, m), m, "u");
  REQUIRE(series.size() == 50u);
  for (double v : series) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(overshoot_series(run(c, m), m, "rho"), ContractViolation);

  const DecayReport r = decay_after_peak({1.0, 1.3, 1.2, 1.25, 1.1, 1.05}, 1.0);
  CHECK(r.peak_index == 1u);
  CHECK(r.peak == doctest::Approx(0.3));
  CHECK_FALSE(r.monotone_after_peak);
  CHECK(r.envelope_decreasing);
  CHECK(r.max_rise == doctest::Approx(0.05));
  const DecayReport up = decay_after_peak({1.0, 1.3, 1.2, 1.3, 1.1}, 1.0);
  CHECK(up.envelope_decreasing);  // equal, not larger
  CHECK(decay_after_peak({1.0, 1.3, 1.2, 1.1}).monotone_after_peak);
}

TEST_CASE("csv writers") {
  std::ostringstream out;
  write_overshoot_csv(out, {1.0, 1.5});
  CHECK(out.str() == "step,max\n1,1\n2,1.5\n");
  std::ostringstream u;
  write_utilde_csv(u, 1.0, -1.0, 1.0, 3);
  CHECK(u.str().rfind("xi_hat,u\n", 0) == 0);
}
