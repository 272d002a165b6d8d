#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hllxw {

/// Upper bound on the number of conserved variables of any model. State
/// vectors live on the stack up to this size.
inline constexpr int kMaxVars = 16;

using StateVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxVars, 1>;

/// Raised when a caller breaks an operation's precondition (length mismatch,
/// grid mismatch, out-of-range argument).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A flux or primitive evaluation met a state outside the model's admissible
/// set, or produced non-finite numbers. Carries the offending state.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, StateVec state)
      : std::runtime_error(what), state_(std::move(state)) {}

  const StateVec& state() const noexcept { return state_; }

 private:
  StateVec state_;
};

/// Bit flags reported by wave speed estimators.
enum WaveSpeedFlag : unsigned {
  kBoundEnlarged = 1u << 0,
  kPowerIterationStalled = 1u << 1,
};

/// Raw signal speed estimate for one interface.
struct WaveSpeeds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  unsigned flags = 0;
};

/// Cell width and time step of a uniform explicit update.
class MeshRatio {
 public:
  MeshRatio(double dx, double dt);

  double dx() const noexcept { return dx_; }
  double dt() const noexcept { return dt_; }
  /// dt / dx
  double ratio() const noexcept { return ratio_; }

 private:
  double dx_;
  double dt_;
  double ratio_;
};

/// Extreme signal speeds of an interface together with their Courant numbers.
struct WaveBracket {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double nu_min = 0.0;
  double nu_max = 0.0;

  static WaveBracket from_speeds(double lambda_min, double lambda_max, const MeshRatio& mesh);
  /// Bracket given directly in Courant numbers (speeds equal the Courant numbers).
  static WaveBracket from_courant(double nu_min, double nu_max);

  double width() const noexcept { return nu_max - nu_min; }
};

/// A one-dimensional hyperbolic system in conservation form.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string_view id() const = 0;
  virtual int n_vars() const = 0;

  /// Physical flux. Throws EvaluationError on inadmissible states.
  virtual StateVec flux(const StateVec& u) const = 0;

  /// Slowest and fastest signal speeds of the Riemann problem (u_left, u_right).
  virtual WaveSpeeds wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const = 0;

  virtual StateVec to_primitive(const StateVec& u) const = 0;
  virtual StateVec from_primitive(const StateVec& w) const = 0;

  /// Names of the primitive variables, in to_primitive order.
  virtual std::vector<std::string> variable_names() const = 0;

  virtual bool admissible(const StateVec& u) const = 0;

  /// Constant flux matrix A for linear models f(u) = A u.
  virtual std::optional<Eigen::MatrixXd> linear_matrix() const { return std::nullopt; }
};

/// Central part plus dissipation: (f_left + f_right)/2 - dissipation_term/2,
/// where dissipation_term stands for D (u_right - u_left).
StateVec assemble_flux(const StateVec& f_left, const StateVec& f_right, const StateVec& dissipation_term);

double courant(double lambda, const MeshRatio& mesh);

double spectral_radius(double lambda_min, double lambda_max);

/// Finite-difference step balancing truncation against roundoff for a
/// directional derivative of the flux at u_bar along direction.
double balanced_epsilon(const StateVec& u_bar, const StateVec& direction);

/// Directional derivative of the flux at a fixed base state. Evaluates
/// f(u_bar) once so repeated products cost one flux evaluation each.
/// Models exposing a linear_matrix get the exact product instead.
class JacobianFreeOperator {
 public:
  JacobianFreeOperator(const Model& model, const StateVec& u_bar);

  /// (f(u_bar + e v) - f(u_bar)) / e, e = eps or balanced_epsilon(u_bar, v).
  StateVec apply(const StateVec& v, std::optional<double> eps = std::nullopt) const;

  const StateVec& base_flux() const noexcept { return f0_; }

 private:
  const Model& model_;
  StateVec u_bar_;
  StateVec f0_;
  std::optional<Eigen::MatrixXd> linear_;
};

/// Jacobian-free approximation of A(u_bar)^power * delta_u, power in {1, 2, 4}.
/// Exact for linear models.
///
/// Each power nests the one-sided difference (f(u_bar + eps v) - f(u_bar)) / eps
/// with v the previous result. With an explicit eps the same step is used at
/// every stage; otherwise each stage picks balanced_epsilon for its own
/// direction. A zero direction yields zero.
StateVec jacfree_apply(const Model& model, const StateVec& u_bar, const StateVec& delta_u, int power,
                       std::optional<double> eps = std::nullopt);

/// Evaluates model.flux and rejects non-finite results.
StateVec checked_flux(const Model& model, const StateVec& u);

bool all_finite(const StateVec& v);

void require_same_length(const StateVec& a, const StateVec& b, std::string_view what);

}  // namespace hllxw
