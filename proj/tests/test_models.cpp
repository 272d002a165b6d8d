#include "hllxw/models.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace hllxw;

namespace {

StateVec make(std::initializer_list<double> xs) {
  StateVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

StateVec r13_equilibrium(double rho, double p, double vx = 0.0) {
  return make({rho, vx, 0, 0, p, p, p, 0, 0, 0, 0, 0, 0});
}

// Dense flux Jacobian by central differences.
Eigen::MatrixXd jacobian(const Model& m, const StateVec& u) {
  const int n = m.n_vars();
  Eigen::MatrixXd j(n, n);
  for (int c = 0; c < n; ++c) {
    const double h = 1e-6 * std::max(1.0, std::abs(u[c]));
    StateVec up = u, dn = u;
    up[c] += h;
    dn[c] -= h;
    j.col(c) = Eigen::VectorXd((m.flux(up) - m.flux(dn)) / (2 * h));
  }
  return j;
}

}  // namespace

TEST_CASE("euler flux and energy") {
  const EulerModel m(1.4);
  CHECK(m.flux(m.from_primitive(make({1, 0, 1}))).isApprox(make({0, 1, 0})));
  const StateVec u = m.from_primitive(make({1, 1, 0}));
  CHECK(u[2] == doctest::Approx(0.5));
  CHECK(m.flux(u).isApprox(make({1, 1, 0.5})));
  CHECK(m.from_primitive(make({1, 0, 1}))[2] == doctest::Approx(2.5));
  CHECK_THROWS_AS(m.flux(make({-1, 0, 1})), EvaluationError);
}

TEST_CASE("euler wave estimate") {
  const EulerModel m(1.4);
  const StateVec u = m.from_primitive(make({1, 0, 1}));
  const WaveSpeeds w = m.wave_speed_estimate(u, u);
  CHECK(w.lambda_min == doctest::Approx(-1.1832).epsilon(1e-4));
  CHECK(w.lambda_max == doctest::Approx(1.1832).epsilon(1e-4));
  // u = 5, c = 1
  const StateVec fast = m.from_primitive(make({1.4, 5, 1}));
  const WaveSpeeds s = m.wave_speed_estimate(fast, fast);
  CHECK(s.lambda_min == doctest::Approx(4.0));
  CHECK(s.lambda_max == doctest::Approx(6.0));
  const StateVec a = m.from_primitive(make({1, 0.3, 2})), b = m.from_primitive(make({1, -0.3, 2}));
  const WaveSpeeds sym = m.wave_speed_estimate(a, b);
  CHECK(sym.lambda_min == doctest::Approx(-sym.lambda_max));
}

TEST_CASE("mhd flux and fast speed") {
  const MhdModel m(5.0 / 3.0, 1.5);
  const StateVec left = m.from_primitive(make({1, 0, 0, 0, 1, 0.5, 0.6}));
  const StateVec f = m.flux(left);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(1.305));
  CHECK(f[2] == doctest::Approx(-1.5 * 0.5));
  CHECK(f[3] == doctest::Approx(-1.5 * 0.6));
  CHECK(f[4] == 0.0);
  CHECK(f[5] == 0.0);
  CHECK(f[6] == 0.0);
  CHECK(m.fast_speed(left) == doctest::Approx(1.8534).epsilon(1e-4));

  const MhdModel hydro(1.4, 0.0);
  const StateVec u = hydro.from_primitive(make({1.2, 0.4, 0, 0, 0.8, 0, 0}));
  CHECK(hydro.fast_speed(u) == doctest::Approx(std::sqrt(1.4 * 0.8 / 1.2)));

  const MhdModel cold(5.0 / 3.0, 2.0);
  const StateVec alfven = cold.from_primitive(make({4, 0, 0, 0, 1e-14, 0, 0}));
  CHECK(cold.fast_speed(alfven) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mhd reduces to euler without transverse fields") {
  const MhdModel mhd(1.4, 0.7);
  const EulerModel eu(1.4);
  const StateVec w = make({0.8, -0.3, 0, 0, 1.7, 0, 0});
  const StateVec fm = mhd.flux(mhd.from_primitive(w));
  const StateVec fe = eu.flux(eu.from_primitive(make({0.8, -0.3, 1.7})));
  CHECK(std::abs(fm[0] - fe[0]) <= 1e-13);
  CHECK(std::abs(fm[1] - fe[1]) <= 1e-13);
  CHECK(std::abs(fm[6] - fe[2]) <= 1e-13);
}

TEST_CASE("primitive round trip on random admissible states") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(0.1, 3.0), sgn(-2.0, 2.0);
  const EulerModel eu(1.4);
  const MhdModel mhd(5.0 / 3.0, 1.5);
  const R13Model r13;
  for (int k = 0; k < 1000; ++k) {
    const StateVec we = make({pos(rng), sgn(rng), pos(rng)});
    CHECK((eu.to_primitive(eu.from_primitive(we)) - we).norm() <= 1e-11 * we.norm());
    const StateVec wm = make({pos(rng), sgn(rng), sgn(rng), sgn(rng), pos(rng), sgn(rng), sgn(rng)});
    CHECK((mhd.to_primitive(mhd.from_primitive(wm)) - wm).norm() <= 1e-11 * wm.norm());
    const double p = pos(rng);
    const StateVec wr = make({pos(rng), sgn(rng), sgn(rng), sgn(rng), p * 1.1, p * 0.9, p, 0.1 * p, -0.05 * p,
                              0.02 * p, sgn(rng), sgn(rng), sgn(rng)});
    CHECK((r13.to_primitive(r13.from_primitive(wr)) - wr).norm() <= 1e-11 * wr.norm());
  }
}

TEST_CASE("r13 energy and heat-flux conserved variables") {
  const R13Model m;
  const StateVec u = m.from_primitive(make({3, 0, 0.1, 0, 3, 3, 3, 0, 0, 0, 0, 0, 0}));
  // E = (3 * 0.01 + 9) / 2 = 4.515, Q_y = E v_y + p_yy v_y
  CHECK(u[11] == doctest::Approx(0.7515));
  CHECK(u[10] == doctest::Approx(0.0));
}

TEST_CASE("r13 rest-state flux") {
  const double p = 1.7, rho = 1.3;
  for (auto closure : {R13Closure::Grad13, R13Closure::Isotropic}) {
    const R13Model m(R13Model::kKappa, false, closure);
    const StateVec f = m.flux(r13_equilibrium(rho, p));
    CHECK(f[0] == 0.0);
    CHECK(f[1] == doctest::Approx(p));
    CHECK(f[2] == 0.0);
    CHECK(f[3] == 0.0);
    for (int k = 4; k < 10; ++k) CHECK(f[k] == 0.0);
    CHECK(f[10] == doctest::Approx(2.5 * p * p / rho));
    CHECK(f[11] == 0.0);
    CHECK(f[12] == 0.0);
  }
}

TEST_CASE("r13 flux respects the y-z index symmetry") {
  const R13Model m;
  const StateVec w = make({1.4, 0.2, 0.3, -0.1, 2.0, 1.5, 1.2, 0.1, -0.2, 0.05, 0.3, -0.2, 0.1});
  // Swap y and z in every tensor slot.
  auto swap = [](const StateVec& a) {
    return make({a[0], a[1], a[3], a[2], a[4], a[6], a[5], a[8], a[7], a[9], a[10], a[12], a[11]});
  };
  const StateVec f = m.flux(m.from_primitive(w));
  const StateVec g = m.flux(m.from_primitive(swap(w)));
  CHECK((swap(f) - g).norm() <= 1e-13 * f.norm());
}

TEST_CASE("r13 flux is Galilean consistent") {
  const R13Model m;
  const StateVec w = make({1.4, 0.0, 0.3, -0.1, 2.0, 1.5, 1.2, 0.1, -0.2, 0.05, 0.3, -0.2, 0.1});
  StateVec shifted = w;
  shifted[1] += 0.7;
  const StateVec u = m.from_primitive(shifted);
  // Characteristic speeds shift with v_x.
  const Eigen::VectorXcd a = Eigen::EigenSolver<Eigen::MatrixXd>(jacobian(m, m.from_primitive(w))).eigenvalues();
  const Eigen::VectorXcd b = Eigen::EigenSolver<Eigen::MatrixXd>(jacobian(m, u)).eigenvalues();
  CHECK(b.real().maxCoeff() == doctest::Approx(a.real().maxCoeff() + 0.7).epsilon(1e-5));
  CHECK(b.real().minCoeff() == doctest::Approx(a.real().minCoeff() + 0.7).epsilon(1e-5));
}

TEST_CASE("r13 closures at equilibrium") {
  const StateVec u = r13_equilibrium(1.0, 1.0);
  SUBCASE("grad closure is hyperbolic") {
    const R13Model m;
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(jacobian(m, u)).eigenvalues();
    CHECK(ev.imag().cwiseAbs().maxCoeff() <= 1e-6);
    CHECK(ev.real().maxCoeff() == doctest::Approx(2.1305).epsilon(1e-4));
    CHECK(ev.real().minCoeff() == doctest::Approx(-2.1305).epsilon(1e-4));
  }
  SUBCASE("isotropic closure is not") {
    const R13Model m(R13Model::kKappa, false, R13Closure::Isotropic);
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(jacobian(m, u)).eigenvalues();
    CHECK(ev.imag().cwiseAbs().maxCoeff() > 0.1);
  }
}

TEST_CASE("r13 wave estimate") {
  const R13Model m;
  const StateVec eq = r13_equilibrium(1.0, 1.0);
  const WaveSpeeds w = m.wave_speed_estimate(eq, eq);
  CHECK(w.lambda_min == doctest::Approx(-w.lambda_max));
  CHECK(w.lambda_max == doctest::Approx(R13Model::kKappa));
  CHECK(w.flags == 0u);
  CHECK(m.relative_spectral_radius(eq) <= R13Model::kKappa);

  const StateVec moved = m.from_primitive(make({1, 0.4, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0}));
  const WaveSpeeds s = m.wave_speed_estimate(moved, moved);
  CHECK(s.lambda_min == doctest::Approx(w.lambda_min + 0.4));
  CHECK(s.lambda_max == doctest::Approx(w.lambda_max + 0.4));

  SUBCASE("too small a bound is enlarged and flagged") {
    const R13Model tight(1.0);
    const WaveSpeeds t = tight.wave_speed_estimate(eq, eq);
    CHECK((t.flags & kBoundEnlarged) != 0u);
    CHECK(t.lambda_max == doctest::Approx(2.1305).epsilon(1e-3));
  }
}

TEST_CASE("r13 admissibility") {
  const R13Model m;
  StateVec w = make({1, 0, 0, 0, 1, 1, 1, 2, 0, 0, 0, 0, 0});  // p_xy too large
  CHECK_FALSE(m.admissible(m.from_primitive(w)));
  CHECK_THROWS_AS(m.flux(m.from_primitive(w)), EvaluationError);
}

TEST_CASE("model factory") {
  CHECK(make_model("euler", 1.4, 0, 1)->id() == "euler");
  CHECK(make_model("mhd", 5.0 / 3.0, 1.5, 1)->n_vars() == 7);
  CHECK(make_model("r13", 1.4, 0, 1)->n_vars() == 13);
  CHECK_THROWS_AS(make_model("navier-stokes", 1.4, 0, 1), ContractViolation);
}
