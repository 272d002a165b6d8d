#include "hllxw/models.hpp"
#include "hllxw/solvers.hpp"

#include <doctest.h>

#include <random>

using namespace hllxw;

namespace {

StateVec s1(double a) {
  StateVec v(1);
  v << a;
  return v;
}

StateVec euler(const EulerModel& m, double rho, double v, double p) {
  StateVec w(3);
  w << rho, v, p;
  return m.from_primitive(w);
}

std::vector<FluxScheme> all_schemes(double omega) {
  std::vector<FluxScheme> out;
  for (auto k : {SchemeKind::LF, SchemeKind::Rusanov, SchemeKind::HLL, SchemeKind::LW2step, SchemeKind::FORCE,
                 SchemeKind::MUSTA1}) {
    out.push_back(FluxScheme::simple(k));
  }
  for (auto p : {EvalPath::Composite, EvalPath::DissipationMatrix}) {
    out.push_back(FluxScheme::hllx(p));
    out.push_back(FluxScheme::hllxomega(omega, p));
  }
  out.push_back(FluxScheme::hllomega(omega));
  return out;
}

LinearSystemModel acoustics() {
  Eigen::MatrixXd a(2, 2);
  a << 0.3, 1.0, 0.8, -0.2;
  return LinearSystemModel(a);
}

}  // namespace

TEST_CASE("scheme construction and names") {
  CHECK_THROWS_AS(FluxScheme::make(SchemeKind::HLLXomega, std::nullopt, EvalPath::Composite), ContractViolation);
  CHECK_THROWS_AS(FluxScheme::make(SchemeKind::HLL, OmegaParam(0.5)), ContractViolation);
  CHECK_THROWS_AS(FluxScheme::make(SchemeKind::HLLX), ContractViolation);
  CHECK_THROWS_AS(FluxScheme::make(SchemeKind::LF, std::nullopt, EvalPath::Composite), ContractViolation);
  for (auto k : {SchemeKind::LF, SchemeKind::Rusanov, SchemeKind::HLL, SchemeKind::LW2step, SchemeKind::FORCE,
                 SchemeKind::MUSTA1, SchemeKind::UpwindLinear, SchemeKind::HLLX, SchemeKind::HLLomega,
                 SchemeKind::HLLXomega}) {
    CHECK(parse_scheme_kind(scheme_name(k)) == k);
  }
  CHECK(parse_scheme_kind("hllx-omega") == SchemeKind::HLLXomega);
  CHECK_THROWS_AS(parse_scheme_kind("roe"), std::invalid_argument);
  CHECK(parse_path("matrix") == EvalPath::DissipationMatrix);
  CHECK_THROWS_AS(parse_path("diagonal"), std::invalid_argument);
}

TEST_CASE("consistency f(U,U) = f(U)") {
  const MeshRatio mesh(0.02, 0.005);
  SUBCASE("euler") {
    const EulerModel m(1.4);
    const StateVec u = euler(m, 0.7, -0.4, 1.3);
    const StateVec f = m.flux(u);
    for (const auto& s : all_schemes(0.4)) {
      CAPTURE(scheme_name(s.kind()));
      CHECK((flux(s, m, u, u, mesh) - f).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("mhd") {
    const MhdModel m(5.0 / 3.0, 1.5);
    StateVec w(7);
    w << 1.0, 0.2, -0.1, 0.05, 1.0, 0.5, 0.6;
    const StateVec u = m.from_primitive(w);
    const StateVec f = m.flux(u);
    for (const auto& s : all_schemes(0.7)) {
      CAPTURE(scheme_name(s.kind()));
      CHECK((flux(s, m, u, u, mesh) - f).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("linear system including upwind") {
    const LinearSystemModel m = acoustics();
    StateVec u(2);
    u << 0.3, -1.2;
    const StateVec f = m.flux(u);
    auto schemes = all_schemes(0.5);
    schemes.push_back(FluxScheme::simple(SchemeKind::UpwindLinear));
    for (const auto& s : schemes) {
      CAPTURE(scheme_name(s.kind()));
      CHECK((flux(s, m, u, u, mesh) - f).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("HLL on Burgers") {
  const BurgersModel m;
  CHECK(flux(FluxScheme::simple(SchemeKind::HLL), m, s1(-1.0), s1(1.0), MeshRatio(1.0, 0.5))[0] ==
        doctest::Approx(-0.5));
}

TEST_CASE("HLLX-omega at omega 0 equals HLLX on random Euler pairs") {
  const EulerModel m(1.4);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rho(0.1, 2.0), vel(-1.0, 1.0), p(0.1, 2.0);
  const MeshRatio mesh(0.01, 0.002);
  for (int k = 0; k < 100; ++k) {
    const StateVec ul = euler(m, rho(rng), vel(rng), p(rng));
    const StateVec ur = euler(m, rho(rng), vel(rng), p(rng));
    const StateVec a = flux(FluxScheme::hllxomega(0.0), m, ul, ur, mesh);
    const StateVec b = flux(FluxScheme::hllx(), m, ul, ur, mesh);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("HLLX-omega at omega 1 is Lax-Wendroff on linear models") {
  const MeshRatio mesh(0.01, 0.004);
  const AdvectionModel adv(1.0);
  CHECK(flux(FluxScheme::hllxomega(1.0), adv, s1(1.0), s1(-1.0), mesh)[0] ==
        doctest::Approx(flux(FluxScheme::simple(SchemeKind::LW2step), adv, s1(1.0), s1(-1.0), mesh)[0]).epsilon(1e-12));
  const LinearSystemModel m = acoustics();
  StateVec ul(2), ur(2);
  ul << 1.0, 0.2;
  ur << -0.5, 0.9;
  for (auto path : {EvalPath::Composite, EvalPath::DissipationMatrix}) {
    const StateVec a = flux(FluxScheme::hllxomega(1.0, path), m, ul, ur, mesh);
    const StateVec b = flux(FluxScheme::simple(SchemeKind::LW2step), m, ul, ur, mesh);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("flux_pair_mean") {
  const AdvectionModel adv(1.0);
  CHECK(flux_pair_mean(adv, s1(1.0), s1(3.0))[0] == 2.0);
  const EulerModel m(1.4);
  const StateVec u = euler(m, 1.0, 0.0, 1.0);
  const StateVec f = flux_pair_mean(m, u, u);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(1.0));
  CHECK(f[2] == 0.0);
}

TEST_CASE("path equivalence on a linear system") {
  const LinearSystemModel m = acoustics();
  const MeshRatio mesh(0.05, 0.02);
  StateVec ul(2), ur(2);
  ul << 0.4, -1.0;
  ur << 1.1, 0.3;
  const StateVec a = flux(FluxScheme::hllx(EvalPath::Composite), m, ul, ur, mesh);
  const StateVec b = flux(FluxScheme::hllx(EvalPath::DissipationMatrix), m, ul, ur, mesh);
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
  for (double w : {0.0, 0.3, 0.5, 1.0}) {
    const StateVec c = flux(FluxScheme::hllxomega(w, EvalPath::Composite), m, ul, ur, mesh);
    const StateVec d = flux(FluxScheme::hllxomega(w, EvalPath::DissipationMatrix), m, ul, ur, mesh);
    CHECK((c - d).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("scalar dissipation correspondence on advection") {
  const double dx = 0.01;
  for (double a : {1.0, -0.6}) {
    const AdvectionModel m(a);
    for (double dt : {0.002, 0.005, 0.009}) {
      const MeshRatio mesh(dx, dt);
      const WaveBracket bracket = WaveBracket::from_speeds(a, a, mesh);
      const double nu = a * dt / dx;
      auto schemes = all_schemes(0.3);
      schemes.push_back(FluxScheme::simple(SchemeKind::UpwindLinear));
      for (const auto& s : schemes) {
        CAPTURE(scheme_name(s.kind()));
        const double ul = 0.8, ur = -0.4;
        const double expected = 0.5 * a * (ul + ur) - 0.5 * dx / dt * scheme_dissipation(s, nu, bracket) * (ur - ul);
        CHECK(flux(s, m, s1(ul), s1(ur), mesh)[0] == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("degenerate brackets fall back to upwinding and are counted") {
  const AdvectionModel m(1.0);
  FluxDiagnostics diag;
  const StateVec f = flux(FluxScheme::hllx(), m, s1(2.0), s1(-1.0), MeshRatio(0.1, 0.05), &diag);
  CHECK(f[0] == 2.0);
  CHECK(diag.degenerate_fallbacks == 1);
  flux(FluxScheme::hllxomega(0.5), m, s1(2.0), s1(-1.0), MeshRatio(0.1, 0.05), &diag);
  CHECK(diag.degenerate_fallbacks == 2);
}

TEST_CASE("upwind requires a linear model") {
  const BurgersModel m;
  CHECK_THROWS_AS(flux(FluxScheme::simple(SchemeKind::UpwindLinear), m, s1(1), s1(2), MeshRatio(1, 0.1)),
                  ContractViolation);
}

TEST_CASE("inadmissible Lax-Wendroff predictor is reported") {
  const EulerModel m(1.4);
  // Strong expansion: the predictor state has negative pressure for a large dt/dx.
  const StateVec ul = euler(m, 1.0, -3.0, 0.01);
  const StateVec ur = euler(m, 1.0, 3.0, 0.01);
  CHECK_THROWS_AS(flux(FluxScheme::simple(SchemeKind::LW2step), m, ul, ur, MeshRatio(0.1, 0.05)), EvaluationError);
}
