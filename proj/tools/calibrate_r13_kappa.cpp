// Calibrates R13Model::kKappa, the bound on |lambda - v_x| / sqrt(p/rho).
//
// Samples states around the left and right states of the r13-riemann case,
// measures the spectral radius of A(u) - v_x I by power iteration, cross-checks
// it against a dense eigen-decomposition of the finite-difference Jacobian and
// prints max * 1.05.

#include "hllxw/models.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

using namespace hllxw;

namespace {

StateVec primitive(double rho, double vy, double vz) {
  StateVec w = StateVec::Zero(13);
  w[0] = rho;
  w[2] = vy;
  w[3] = vz;
  w[4] = w[5] = w[6] = 3.0;
  return w;
}

struct Measured {
  double power = 0.0;
  double dense = 0.0;
  double max_imag = 0.0;
};

Measured measure(const R13Model& model, const StateVec& u) {
  Measured m;
  bool converged = false;
  m.power = model.relative_spectral_radius(u, &converged);
  if (!converged) m.power *= 1.1;
  const JacobianFreeOperator op(model, u);
  Eigen::MatrixXd jac(13, 13);
  for (int k = 0; k < 13; ++k) {
    StateVec e = StateVec::Zero(13);
    e[k] = 1.0;
    jac.col(k) = op.apply(e);
  }
  const double vx = u[1] / u[0];
  const Eigen::VectorXcd lam = Eigen::EigenSolver<Eigen::MatrixXd>(jac, false).eigenvalues();
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    m.dense = std::max(m.dense, std::abs(lam[k].real() - vx));
    m.max_imag = std::max(m.max_imag, std::abs(lam[k].imag()));
  }
  return m;
}

}  // namespace

int main() {
  constexpr int kSamples = 4000;
  constexpr double kSafety = 1.05;
  const R13Model model(R13Model::kKappa, false);
  std::mt19937_64 rng(20240613);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  const StateVec bases[2] = {primitive(3.0, 0.1, 0.0), primitive(1.0, 0.0, 0.1)};
  double worst_power = 0.0;
  double worst_dense = 0.0;
  double worst_gap = 0.0;
  double worst_imag = 0.0;
  int rejected = 0;
  for (int s = 0; s < kSamples; ++s) {
    StateVec w = bases[s % 2];
    // Neighborhood: density and pressure spanning both sides of the
    // Riemann problem, velocities up to 0.5, mild anisotropy and heat flux.
    w[0] = 1.0 + 1.0 * (unit(rng) + 1.0);
    for (int i = 1; i <= 3; ++i) w[i] += 0.5 * unit(rng);
    const double pressure = 1.5 + 1.5 * (unit(rng) + 1.0);
    const double theta = std::sqrt(pressure / w[0]);
    Eigen::Matrix3d p = pressure * Eigen::Matrix3d::Identity();
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        const double d = 0.15 * pressure * unit(rng);
        p(i, j) += d;
        if (i != j) p(j, i) += d;
      }
    }
    w[4] = p(0, 0);
    w[5] = p(1, 1);
    w[6] = p(2, 2);
    w[7] = p(0, 1);
    w[8] = p(0, 2);
    w[9] = p(1, 2);
    for (int i = 0; i < 3; ++i) w[10 + i] = 0.1 * pressure * theta * unit(rng);
    const StateVec u = model.from_primitive(w);
    if (!model.admissible(u)) {
      ++rejected;
      continue;
    }
    const double c = R13Model::thermal_speed(u);
    const Measured m = measure(model, u);
    worst_power = std::max(worst_power, m.power / c);
    worst_dense = std::max(worst_dense, m.dense / c);
    worst_gap = std::max(worst_gap, std::abs(m.power - m.dense) / c);
    worst_imag = std::max(worst_imag, m.max_imag / c);
  }
  const double kappa = kSafety * std::max(worst_power, worst_dense);
  std::printf("samples            %d (rejected %d)\n", kSamples, rejected);
  std::printf("max power radius   %.6f sqrt(p/rho)\n", worst_power);
  std::printf("max dense radius   %.6f sqrt(p/rho)\n", worst_dense);
  std::printf("max |power-dense|  %.3e sqrt(p/rho)\n", worst_gap);
  std::printf("max |imag part|    %.3e sqrt(p/rho)\n", worst_imag);
  std::printf("kappa = %.4f (safety factor %.2f); compiled kKappa = %.4f\n", kappa, kSafety, R13Model::kKappa);
  return kappa <= R13Model::kKappa ? 0 : 1;
}
