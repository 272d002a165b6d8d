#include "hllxw/models.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace hllxw {

namespace {

StateVec make_state(std::initializer_list<double> values) {
  StateVec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

[[noreturn]] void inadmissible(std::string_view model, const StateVec& u, std::string_view why) {
  std::ostringstream msg;
  msg << model << ": inadmissible state (" << why << ")";
  throw EvaluationError(msg.str(), u);
}

}  // namespace

// --- advection -------------------------------------------------------------

StateVec AdvectionModel::flux(const StateVec& u) const {
  if (u.size() != 1) throw ContractViolation("advection: state length must be 1");
  return speed_ * u;
}

WaveSpeeds AdvectionModel::wave_speed_estimate(const StateVec&, const StateVec&) const {
  return {speed_, speed_, 0};
}

std::optional<Eigen::MatrixXd> AdvectionModel::linear_matrix() const {
  return Eigen::MatrixXd::Constant(1, 1, speed_);
}

// --- linear system ---------------------------------------------------------

LinearSystemModel::LinearSystemModel(Eigen::MatrixXd a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() < 1 || a_.rows() > kMaxVars) {
    throw ContractViolation("linear model: square matrix of size 1..16 required");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a_);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("linear model: eigen decomposition failed");
  }
  const auto& lam = solver.eigenvalues();
  const double scale = 1.0 + a_.cwiseAbs().maxCoeff();
  if (lam.imag().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ContractViolation("linear model: matrix is not hyperbolic (complex eigenvalues)");
  }
  eigenvalues_ = lam.real();
  eigenvectors_ = solver.eigenvectors().real();
}

StateVec LinearSystemModel::flux(const StateVec& u) const {
  if (u.size() != n_vars()) throw ContractViolation("linear: state length mismatch");
  return a_ * u;
}

WaveSpeeds LinearSystemModel::wave_speed_estimate(const StateVec&, const StateVec&) const {
  return {eigenvalues_.minCoeff(), eigenvalues_.maxCoeff(), 0};
}

std::vector<std::string> LinearSystemModel::variable_names() const {
  std::vector<std::string> names;
  for (int i = 0; i < n_vars(); ++i) names.push_back("u" + std::to_string(i));
  return names;
}

// --- Burgers ---------------------------------------------------------------

StateVec BurgersModel::flux(const StateVec& u) const {
  if (u.size() != 1) throw ContractViolation("burgers: state length must be 1");
  return 0.5 * u.cwiseProduct(u);
}

WaveSpeeds BurgersModel::wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const {
  return {std::min(u_left[0], u_right[0]), std::max(u_left[0], u_right[0]), 0};
}

// --- Euler -----------------------------------------------------------------

EulerModel::EulerModel(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0)) throw ContractViolation("euler: gamma > 1 required");
}

double EulerModel::pressure(const StateVec& u) const {
  return (gamma_ - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

double EulerModel::sound_speed(const StateVec& u) const { return std::sqrt(gamma_ * pressure(u) / u[0]); }

bool EulerModel::admissible(const StateVec& u) const {
  return u.size() == 3 && u.allFinite() && u[0] > 0.0 && pressure(u) >= 0.0;
}

StateVec EulerModel::flux(const StateVec& u) const {
  if (!admissible(u)) inadmissible("euler", u, "rho > 0, p >= 0");
  const double v = u[1] / u[0];
  const double p = pressure(u);
  return make_state({u[1], u[1] * v + p, v * (u[2] + p)});
}

WaveSpeeds EulerModel::wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const {
  if (!admissible(u_left)) inadmissible("euler", u_left, "rho > 0, p >= 0");
  if (!admissible(u_right)) inadmissible("euler", u_right, "rho > 0, p >= 0");
  const double vl = u_left[1] / u_left[0];
  const double vr = u_right[1] / u_right[0];
  const double cl = sound_speed(u_left);
  const double cr = sound_speed(u_right);
  return {std::min(vl - cl, vr - cr), std::max(vl + cl, vr + cr), 0};
}

StateVec EulerModel::to_primitive(const StateVec& u) const {
  return make_state({u[0], u[1] / u[0], pressure(u)});
}

StateVec EulerModel::from_primitive(const StateVec& w) const {
  if (w.size() != 3) throw ContractViolation("euler: primitive length must be 3");
  return make_state({w[0], w[0] * w[1], w[2] / (gamma_ - 1.0) + 0.5 * w[0] * w[1] * w[1]});
}

// --- MHD -------------------------------------------------------------------

MhdModel::MhdModel(double gamma, double bx) : gamma_(gamma), bx_(bx) {
  if (!(gamma > 1.0)) throw ContractViolation("mhd: gamma > 1 required");
}

double MhdModel::pressure(const StateVec& u) const {
  const double kinetic = 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / u[0];
  const double magnetic = 0.5 * (u[4] * u[4] + u[5] * u[5]);
  return (gamma_ - 1.0) * (u[6] - kinetic - magnetic);
}

bool MhdModel::admissible(const StateVec& u) const {
  return u.size() == 7 && u.allFinite() && u[0] > 0.0 && pressure(u) >= 0.0;
}

double MhdModel::fast_speed(const StateVec& u) const {
  const double rho = u[0];
  const double a2 = gamma_ * pressure(u) / rho;
  const double b2 = (bx_ * bx_ + u[4] * u[4] + u[5] * u[5]) / rho;
  const double sum = a2 + b2;
  double disc = sum * sum - 4.0 * a2 * bx_ * bx_ / rho;
  if (disc < -1e-14 * std::max(1.0, sum * sum)) {
    inadmissible("mhd", u, "negative fast-speed discriminant");
  }
  disc = std::max(disc, 0.0);
  return std::sqrt(0.5 * (sum + std::sqrt(disc)));
}

StateVec MhdModel::flux(const StateVec& u) const {
  if (!admissible(u)) inadmissible("mhd", u, "rho > 0, p >= 0");
  const double rho = u[0];
  const double vx = u[1] / rho;
  const double vy = u[2] / rho;
  const double vz = u[3] / rho;
  const double by = u[4];
  const double bz = u[5];
  const double p = pressure(u);
  const double bt2 = by * by + bz * bz;
  return make_state({u[1], u[1] * vx + p + 0.5 * bt2, u[2] * vx - bx_ * by, u[3] * vx - bx_ * bz,
                     vx * by - bx_ * vy, vx * bz - bx_ * vz,
                     (u[6] + p + 0.5 * bt2) * vx - bx_ * (by * vy + bz * vz)});
}

WaveSpeeds MhdModel::wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const {
  if (!admissible(u_left)) inadmissible("mhd", u_left, "rho > 0, p >= 0");
  if (!admissible(u_right)) inadmissible("mhd", u_right, "rho > 0, p >= 0");
  const double vl = u_left[1] / u_left[0];
  const double vr = u_right[1] / u_right[0];
  const double cl = fast_speed(u_left);
  const double cr = fast_speed(u_right);
  return {std::min(vl - cl, vr - cr), std::max(vl + cl, vr + cr), 0};
}

StateVec MhdModel::to_primitive(const StateVec& u) const {
  const double rho = u[0];
  return make_state({rho, u[1] / rho, u[2] / rho, u[3] / rho, pressure(u), u[4], u[5]});
}

StateVec MhdModel::from_primitive(const StateVec& w) const {
  if (w.size() != 7) throw ContractViolation("mhd: primitive length must be 7");
  const double rho = w[0];
  const double v2 = w[1] * w[1] + w[2] * w[2] + w[3] * w[3];
  const double bt2 = w[5] * w[5] + w[6] * w[6];
  return make_state({rho, rho * w[1], rho * w[2], rho * w[3], w[5], w[6],
                     w[4] / (gamma_ - 1.0) + 0.5 * rho * v2 + 0.5 * bt2});
}

// --- R13 -------------------------------------------------------------------

namespace {

// Symmetric storage order xx, yy, zz, xy, xz, yz.
constexpr std::array<std::array<int, 3>, 3> kSym{{{0, 3, 4}, {3, 1, 5}, {4, 5, 2}}};

struct R13Prim {
  double rho;
  std::array<double, 3> v;
  std::array<std::array<double, 3>, 3> p;
  std::array<double, 3> q;
};

R13Prim r13_unpack_conserved(const StateVec& u) {
  R13Prim s{};
  s.rho = u[0];
  for (int i = 0; i < 3; ++i) s.v[i] = u[1 + i] / s.rho;
  double vv = 0.0;
  for (int i = 0; i < 3; ++i) vv += s.v[i] * s.v[i];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s.p[i][j] = u[4 + kSym[i][j]] - s.rho * s.v[i] * s.v[j];
  }
  const double trace = s.p[0][0] + s.p[1][1] + s.p[2][2];
  const double energy = 0.5 * (s.rho * vv + trace);
  for (int i = 0; i < 3; ++i) {
    double pv = 0.0;
    for (int k = 0; k < 3; ++k) pv += s.p[i][k] * s.v[k];
    s.q[i] = u[10 + i] - energy * s.v[i] - pv;
  }
  return s;
}

bool r13_positive_definite(const R13Prim& s) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = s.p[i][j];
  Eigen::LLT<Eigen::Matrix3d> llt(m);
  return llt.info() == Eigen::Success;
}

double kronecker(int i, int j) { return i == j ? 1.0 : 0.0; }

}  // namespace

R13Model::R13Model(double kappa, bool validate_bound, R13Closure closure)
    : kappa_(kappa), validate_bound_(validate_bound), closure_(closure) {
  if (!(kappa > 0.0)) throw ContractViolation("r13: kappa > 0 required");
}

std::vector<std::string> R13Model::variable_names() const {
  return {"rho", "vx", "vy", "vz", "pxx", "pyy", "pzz", "pxy", "pxz", "pyz", "qx", "qy", "qz"};
}

bool R13Model::admissible(const StateVec& u) const {
  if (u.size() != 13 || !u.allFinite() || !(u[0] > 0.0)) return false;
  return r13_positive_definite(r13_unpack_conserved(u));
}

double R13Model::thermal_speed(const StateVec& u) {
  const R13Prim s = r13_unpack_conserved(u);
  const double p = (s.p[0][0] + s.p[1][1] + s.p[2][2]) / 3.0;
  return std::sqrt(p / s.rho);
}

StateVec R13Model::flux(const StateVec& u) const {
  if (!admissible(u)) inadmissible("r13", u, "rho > 0, p_ij positive definite");
  const R13Prim s = r13_unpack_conserved(u);
  const auto& v = s.v;
  const auto& p = s.p;
  const auto& q = s.q;
  const double v1 = v[0];
  double vv = 0.0;
  double qv = 0.0;
  for (int k = 0; k < 3; ++k) {
    vv += v[k] * v[k];
    qv += q[k] * v[k];
  }
  const double trace = p[0][0] + p[1][1] + p[2][2];
  const double energy = 0.5 * (s.rho * vv + trace);
  const double pressure = trace / 3.0;

  StateVec f(13);
  f[0] = s.rho * v1;
  for (int i = 0; i < 3; ++i) f[1 + i] = s.rho * v1 * v[i] + p[0][i];

  constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
  for (int n = 0; n < 6; ++n) {
    const int i = kPairs[n][0];
    const int j = kPairs[n][1];
    // rho v1 vi vj + 3 p_(ij v_1) + (6/5) delta_(ij q_1)
    f[4 + n] = s.rho * v1 * v[i] * v[j] + p[i][j] * v1 + p[j][0] * v[i] + p[0][i] * v[j] +
               0.4 * (kronecker(i, j) * q[0] + kronecker(j, 0) * q[i] + kronecker(0, i) * q[j]);
  }

  for (int i = 0; i < 3; ++i) {
    double vp_i = 0.0;
    double vp_1 = 0.0;
    for (int k = 0; k < 3; ++k) {
      vp_i += v[k] * p[k][i];
      vp_1 += v[k] * p[k][0];
    }
    // E vi v1 + 2 v_k p_k(i v_1) + (2/5) q_k v_k d_i1 + (14/5) q_(i v_1)
    //   + (p_i1 v^2 + rho <C^2 C_i C_1>)/2
    // Grad closure: rho <C^2 C_i C_j> = (7 p p_ij - 2 p^2 d_ij) / rho, which is
    // 5 p^2/rho d_ij at isotropic pressure.
    const double fourth = closure_ == R13Closure::Grad13
                              ? (7.0 * pressure * p[i][0] - 2.0 * pressure * pressure * kronecker(i, 0)) / s.rho
                              : 5.0 * pressure * pressure / s.rho * kronecker(i, 0);
    f[10 + i] = energy * v[i] * v1 + vp_i * v1 + vp_1 * v[i] + 0.4 * qv * kronecker(i, 0) +
                1.4 * (q[i] * v1 + q[0] * v[i]) +
                0.5 * (p[i][0] * vv + fourth);
  }
  return f;
}

StateVec R13Model::to_primitive(const StateVec& u) const {
  const R13Prim s = r13_unpack_conserved(u);
  StateVec w(13);
  w[0] = s.rho;
  for (int i = 0; i < 3; ++i) w[1 + i] = s.v[i];
  w[4] = s.p[0][0];
  w[5] = s.p[1][1];
  w[6] = s.p[2][2];
  w[7] = s.p[0][1];
  w[8] = s.p[0][2];
  w[9] = s.p[1][2];
  for (int i = 0; i < 3; ++i) w[10 + i] = s.q[i];
  return w;
}

StateVec R13Model::from_primitive(const StateVec& w) const {
  if (w.size() != 13) throw ContractViolation("r13: primitive length must be 13");
  const double rho = w[0];
  const std::array<double, 3> v{w[1], w[2], w[3]};
  std::array<std::array<double, 3>, 3> p{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p[i][j] = w[4 + kSym[i][j]];
  double vv = 0.0;
  for (int k = 0; k < 3; ++k) vv += v[k] * v[k];
  const double energy = 0.5 * (rho * vv + p[0][0] + p[1][1] + p[2][2]);

  StateVec u(13);
  u[0] = rho;
  for (int i = 0; i < 3; ++i) u[1 + i] = rho * v[i];
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) u[4 + kSym[i][j]] = p[i][j] + rho * v[i] * v[j];
  for (int i = 0; i < 3; ++i) {
    double pv = 0.0;
    for (int k = 0; k < 3; ++k) pv += p[i][k] * v[k];
    u[10 + i] = w[10 + i] + energy * v[i] + pv;
  }
  return u;
}

double R13Model::relative_spectral_radius(const StateVec& u, bool* converged) const {
  constexpr int kMaxIterations = 50;
  constexpr double kRelTol = 1e-7;
  const double vx = u[1] / u[0];
  const JacobianFreeOperator op(*this, u);
  auto shifted = [&](const StateVec& x) -> StateVec { return op.apply(x) - vx * x; };

  StateVec x(13);
  for (int k = 0; k < 13; ++k) x[k] = 1.0 + 0.1 * k;
  x /= x.norm();

  double estimate = 0.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    const StateVec y = shifted(shifted(x));
    const double norm = y.norm();
    if (norm == 0.0) {
      if (converged) *converged = true;
      return 0.0;
    }
    const double next = norm;
    x = y / norm;
    if (it > 0 && std::abs(next - estimate) <= kRelTol * next) {
      if (converged) *converged = true;
      return std::sqrt(next);
    }
    estimate = next;
  }
  if (converged) *converged = false;
  return std::sqrt(estimate);
}

WaveSpeeds R13Model::wave_speed_estimate(const StateVec& u_left, const StateVec& u_right) const {
  if (!admissible(u_left)) inadmissible("r13", u_left, "rho > 0, p_ij positive definite");
  if (!admissible(u_right)) inadmissible("r13", u_right, "rho > 0, p_ij positive definite");
  const double vl = u_left[1] / u_left[0];
  const double vr = u_right[1] / u_right[0];
  const double cl = kappa_ * thermal_speed(u_left);
  const double cr = kappa_ * thermal_speed(u_right);
  WaveSpeeds ws{std::min(vl - cl, vr - cr), std::max(vl + cl, vr + cr), 0};
  if (!validate_bound_) return ws;

  const StateVec mid = 0.5 * (u_left + u_right);
  if (!admissible(mid)) inadmissible("r13", mid, "interface midpoint");
  bool converged = true;
  double radius = relative_spectral_radius(mid, &converged);
  if (!converged) {
    radius *= 1.1;
    ws.flags |= kPowerIterationStalled;
  }
  const double vm = mid[1] / mid[0];
  if (vm + radius > ws.lambda_max) {
    ws.lambda_max = vm + radius;
    ws.flags |= kBoundEnlarged;
  }
  if (vm - radius < ws.lambda_min) {
    ws.lambda_min = vm - radius;
    ws.flags |= kBoundEnlarged;
  }
  return ws;
}

// --- factory ---------------------------------------------------------------

std::unique_ptr<Model> make_model(std::string_view id, double gamma, double bx, double advection_speed) {
  if (id == "advection") return std::make_unique<AdvectionModel>(advection_speed);
  if (id == "burgers") return std::make_unique<BurgersModel>();
  if (id == "euler") return std::make_unique<EulerModel>(gamma);
  if (id == "mhd") return std::make_unique<MhdModel>(gamma, bx);
  if (id == "r13") return std::make_unique<R13Model>();
  throw ContractViolation("unknown model '" + std::string(id) + "'");
}

}  // namespace hllxw
