#include "hllxw/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hllxw {

MeshRatio::MeshRatio(double dx, double dt) : dx_(dx), dt_(dt), ratio_(dt / dx) {
  if (!(dx > 0.0) || !(dt > 0.0) || !std::isfinite(dx) || !std::isfinite(dt)) {
    std::ostringstream msg;
    msg << "mesh requires dx > 0 and dt > 0, got dx=" << dx << " dt=" << dt;
    throw ContractViolation(msg.str());
  }
}

WaveBracket WaveBracket::from_speeds(double lambda_min, double lambda_max, const MeshRatio& mesh) {
  if (lambda_min > lambda_max) {
    throw ContractViolation("wave bracket requires lambda_min <= lambda_max");
  }
  return {lambda_min, lambda_max, courant(lambda_min, mesh), courant(lambda_max, mesh)};
}

WaveBracket WaveBracket::from_courant(double nu_min, double nu_max) {
  if (nu_min > nu_max) {
    throw ContractViolation("wave bracket requires nu_min <= nu_max");
  }
  return {nu_min, nu_max, nu_min, nu_max};
}

StateVec assemble_flux(const StateVec& f_left, const StateVec& f_right, const StateVec& dissipation_term) {
  require_same_length(f_left, f_right, "assemble_flux");
  require_same_length(f_left, dissipation_term, "assemble_flux");
  return 0.5 * (f_left + f_right) - 0.5 * dissipation_term;
}

double courant(double lambda, const MeshRatio& mesh) { return lambda * mesh.ratio(); }

double spectral_radius(double lambda_min, double lambda_max) {
  return std::max(std::abs(lambda_min), std::abs(lambda_max));
}

double balanced_epsilon(const StateVec& u_bar, const StateVec& direction) {
  constexpr double kMachEps = std::numeric_limits<double>::epsilon();
  const double scale = 1.0 + u_bar.cwiseAbs().maxCoeff();
  const double dir = std::max(direction.cwiseAbs().maxCoeff(), kMachEps);
  return std::sqrt(kMachEps) * scale / dir;
}

bool all_finite(const StateVec& v) { return v.allFinite(); }

void require_same_length(const StateVec& a, const StateVec& b, std::string_view what) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << what << ": length mismatch " << a.size() << " vs " << b.size();
    throw ContractViolation(msg.str());
  }
}

StateVec checked_flux(const Model& model, const StateVec& u) {
  StateVec f = model.flux(u);
  if (!f.allFinite()) {
    throw EvaluationError(std::string(model.id()) + ": non-finite flux", u);
  }
  return f;
}

JacobianFreeOperator::JacobianFreeOperator(const Model& model, const StateVec& u_bar)
    : model_(model), u_bar_(u_bar), f0_(checked_flux(model, u_bar)), linear_(model.linear_matrix()) {
  if (u_bar.size() != model.n_vars()) {
    throw ContractViolation("jacobian-free product: state length differs from model size");
  }
}

StateVec JacobianFreeOperator::apply(const StateVec& v, std::optional<double> eps) const {
  require_same_length(u_bar_, v, "jacobian-free product");
  if (v.cwiseAbs().maxCoeff() == 0.0) {
    return StateVec::Zero(v.size());
  }
  // A linear flux is its own derivative; the difference quotient would only add roundoff.
  if (linear_) return StateVec(*linear_ * Eigen::VectorXd(v));
  const double e = eps ? *eps : balanced_epsilon(u_bar_, v);
  const StateVec perturbed = u_bar_ + e * v;
  return (checked_flux(model_, perturbed) - f0_) / e;
}

StateVec jacfree_apply(const Model& model, const StateVec& u_bar, const StateVec& delta_u, int power,
                       std::optional<double> eps) {
  if (power != 1 && power != 2 && power != 4) {
    throw ContractViolation("jacfree_apply: power must be 1, 2 or 4");
  }
  if (eps && !(*eps > 0.0)) {
    throw ContractViolation("jacfree_apply: eps must be positive");
  }
  require_same_length(u_bar, delta_u, "jacfree_apply");
  if (delta_u.cwiseAbs().maxCoeff() == 0.0) {
    return StateVec::Zero(u_bar.size());
  }
  const JacobianFreeOperator op(model, u_bar);
  StateVec direction = delta_u;
  for (int stage = 0; stage < power; ++stage) {
    direction = op.apply(direction, eps);
  }
  return direction;
}

}  // namespace hllxw
