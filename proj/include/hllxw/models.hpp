#pragma once

#include "hllxw/core.hpp"

#include <memory>
#include <string>

namespace hllxw {

/// Scalar transport u_t + a u_x = 0.
class AdvectionModel final : public Model {
 public:
  explicit AdvectionModel(double speed = 1.0) : speed_(speed) {}

  std::string_view id() const override { return "advection"; }
  int n_vars() const override { return 1; }
  StateVec flux(const StateVec& u) const override;
  WaveSpeeds wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const override;
  StateVec to_primitive(const StateVec& u) const override { return u; }
  StateVec from_primitive(const StateVec& w) const override { return w; }
  std::vector<std::string> variable_names() const override { return {"u"}; }
  bool admissible(const StateVec& u) const override { return u.size() == 1 && u.allFinite(); }
  std::optional<Eigen::MatrixXd> linear_matrix() const override;

  double speed() const noexcept { return speed_; }

 private:
  double speed_;
};

/// Linear system u_t + A u_x = 0 with a constant, real-diagonalizable A.
class LinearSystemModel final : public Model {
 public:
  explicit LinearSystemModel(Eigen::MatrixXd a);

  std::string_view id() const override { return "linear"; }
  int n_vars() const override { return static_cast<int>(a_.rows()); }
  StateVec flux(const StateVec& u) const override;
  WaveSpeeds wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const override;
  StateVec to_primitive(const StateVec& u) const override { return u; }
  StateVec from_primitive(const StateVec& w) const override { return w; }
  std::vector<std::string> variable_names() const override;
  bool admissible(const StateVec& u) const override { return u.size() == n_vars() && u.allFinite(); }
  std::optional<Eigen::MatrixXd> linear_matrix() const override { return a_; }

  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Inviscid Burgers f(u) = u^2/2. Used by tests only.
class BurgersModel final : public Model {
 public:
  std::string_view id() const override { return "burgers"; }
  int n_vars() const override { return 1; }
  StateVec flux(const StateVec& u) const override;
  WaveSpeeds wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const override;
  StateVec to_primitive(const StateVec& u) const override { return u; }
  StateVec from_primitive(const StateVec& w) const override { return w; }
  std::vector<std::string> variable_names() const override { return {"u"}; }
  bool admissible(const StateVec& u) const override { return u.size() == 1 && u.allFinite(); }
};

/// Ideal-gas Euler equations. Conserved (rho, rho v, E), primitive (rho, v, p).
class EulerModel final : public Model {
 public:
  explicit EulerModel(double gamma = 1.4);

  std::string_view id() const override { return "euler"; }
  int n_vars() const override { return 3; }
  StateVec flux(const StateVec& u) const override;
  WaveSpeeds wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const override;
  StateVec to_primitive(const StateVec& u) const override;
  StateVec from_primitive(const StateVec& w) const override;
  std::vector<std::string> variable_names() const override { return {"rho", "v", "p"}; }
  bool admissible(const StateVec& u) const override;

  double gamma() const noexcept { return gamma_; }
  double pressure(const StateVec& u) const;
  double sound_speed(const StateVec& u) const;

 private:
  double gamma_;
};

/// Ideal MHD in one dimension with constant normal field B_x.
/// Conserved (rho, rho vx, rho vy, rho vz, By, Bz, E) with
/// E = p/(gamma-1) + rho v^2/2 + Bt^2/2; primitive (rho, vx, vy, vz, p, By, Bz).
class MhdModel final : public Model {
 public:
  MhdModel(double gamma = 5.0 / 3.0, double bx = 0.0);

  std::string_view id() const override { return "mhd"; }
  int n_vars() const override { return 7; }
  StateVec flux(const StateVec& u) const override;
  WaveSpeeds wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const override;
  StateVec to_primitive(const StateVec& u) const override;
  StateVec from_primitive(const StateVec& w) const override;
  std::vector<std::string> variable_names() const override { return {"rho", "vx", "vy", "vz", "p", "By", "Bz"}; }
  bool admissible(const StateVec& u) const override;

  double gamma() const noexcept { return gamma_; }
  double bx() const noexcept { return bx_; }
  double pressure(const StateVec& u) const;
  double fast_speed(const StateVec& u) const;

 private:
  double gamma_;
  double bx_;
};

/// Fourth-moment closure of the 13-moment energy flux.
///  Grad13:    rho <C^2 C_i C_j> = (7 p p_ij - 2 p^2 delta_ij) / rho
///  Isotropic: rho <C^2 C_i C_j> = 5 p^2 / rho delta_ij. Drops the stress
///             coupling and loses hyperbolicity even at equilibrium; kept for
///             comparison only.
enum class R13Closure { Grad13, Isotropic };

/// Homogeneous one-dimensional 13-moment system.
///
/// Conserved: rho; rho v_i (i = x,y,z); p_ij + rho v_i v_j over
/// (xx, yy, zz, xy, xz, yz); Q_i = q_i + E v_i + p_ik v_k with
/// E = (rho v^2 + p_kk)/2. Primitive: rho, v_i, p_ij in the same order, q_i.
class R13Model final : public Model {
 public:
  /// Calibrated bound on the characteristic speeds relative to v_x in units
  /// of sqrt(p/rho). See tools/calibrate_r13_kappa.cpp.
  static constexpr double kKappa = 2.6522;

  explicit R13Model(double kappa = kKappa, bool validate_bound = true, R13Closure closure = R13Closure::Grad13);

  std::string_view id() const override { return "r13"; }
  int n_vars() const override { return 13; }
  StateVec flux(const StateVec& u) const override;
  WaveSpeeds wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const override;
  StateVec to_primitive(const StateVec& u) const override;
  StateVec from_primitive(const StateVec& w) const override;
  std::vector<std::string> variable_names() const override;
  bool admissible(const StateVec& u) const override;

  double kappa() const noexcept { return kappa_; }
  R13Closure closure() const noexcept { return closure_; }

  /// Spectral radius of A(u) - v_x I estimated by power iteration on its
  /// square with Jacobian-free products. Sets `converged` when the estimate
  /// settled within 50 iterations.
  double relative_spectral_radius(const StateVec& u, bool* converged = nullptr) const;

  /// Thermal speed scale sqrt(p/rho), p = trace(p_ij)/3.
  static double thermal_speed(const StateVec& u);

 private:
  double kappa_;
  bool validate_bound_;
  R13Closure closure_;
};

std::unique_ptr<Model> make_model(std::string_view id, double gamma, double bx, double advection_speed);

}  // namespace hllxw
