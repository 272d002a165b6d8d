#include "hllxw/solvers.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <cmath>

namespace hllxw {

// --- scheme description ----------------------------------------------------

bool scheme_uses_omega(SchemeKind kind) { return kind == SchemeKind::HLLomega || kind == SchemeKind::HLLXomega; }

bool scheme_has_paths(SchemeKind kind) { return kind == SchemeKind::HLLX || kind == SchemeKind::HLLXomega; }

FluxScheme FluxScheme::make(SchemeKind kind, std::optional<OmegaParam> omega, std::optional<EvalPath> path) {
  if (scheme_uses_omega(kind) != omega.has_value()) {
    throw ContractViolation(std::string("scheme '") + std::string(scheme_name(kind)) +
                            (omega ? "' takes no omega" : "' requires omega"));
  }
  if (scheme_has_paths(kind) != path.has_value()) {
    throw ContractViolation(std::string("scheme '") + std::string(scheme_name(kind)) +
                            (path ? "' has a single evaluation path" : "' requires an evaluation path"));
  }
  return FluxScheme(kind, omega, path);
}

FluxScheme FluxScheme::simple(SchemeKind kind) {
  return make(kind, scheme_uses_omega(kind) ? std::optional<OmegaParam>(OmegaParam(0.0)) : std::nullopt,
              scheme_has_paths(kind) ? std::optional<EvalPath>(EvalPath::Composite) : std::nullopt);
}

FluxScheme FluxScheme::hllx(EvalPath path) { return make(SchemeKind::HLLX, std::nullopt, path); }

FluxScheme FluxScheme::hllomega(double omega) { return make(SchemeKind::HLLomega, OmegaParam(omega)); }

FluxScheme FluxScheme::hllxomega(double omega, EvalPath path) {
  return make(SchemeKind::HLLXomega, OmegaParam(omega), path);
}

namespace {

struct NamedKind {
  SchemeKind kind;
  std::string_view name;
};

constexpr std::array<NamedKind, 10> kSchemeNames{{
    {SchemeKind::LF, "lf"},
    {SchemeKind::Rusanov, "rusanov"},
    {SchemeKind::HLL, "hll"},
    {SchemeKind::LW2step, "lw"},
    {SchemeKind::FORCE, "force"},
    {SchemeKind::MUSTA1, "musta1"},
    {SchemeKind::UpwindLinear, "upwind"},
    {SchemeKind::HLLX, "hllx"},
    {SchemeKind::HLLomega, "hll-omega"},
    {SchemeKind::HLLXomega, "hllx-omega"},
}};

}  // namespace

std::string_view scheme_name(SchemeKind kind) {
  for (const auto& entry : kSchemeNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "?";
}

SchemeKind parse_scheme_kind(std::string_view name) {
  for (const auto& entry : kSchemeNames) {
    if (entry.name == name) return entry.kind;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected lf, rusanov, hll, lw, force, musta1, upwind, hllx, hll-omega, hllx-omega)");
}

std::string_view path_name(EvalPath path) { return path == EvalPath::Composite ? "composite" : "matrix"; }

EvalPath parse_path(std::string_view name) {
  if (name == "composite") return EvalPath::Composite;
  if (name == "matrix") return EvalPath::DissipationMatrix;
  throw std::invalid_argument("unknown path '" + std::string(name) + "' (expected composite or matrix)");
}

// --- building blocks -------------------------------------------------------

namespace {

struct Context {
  const Model& model;
  const InterfaceStates& s;
  const MeshRatio& mesh;
  StateVec delta;  // u_right - u_left
  StateVec fbar;

  Context(const Model& m, const InterfaceStates& states, const MeshRatio& mr)
      : model(m), s(states), mesh(mr), delta(states.u_right - states.u_left),
        fbar(0.5 * (states.f_left + states.f_right)) {}

  StateVec midpoint() const {
    StateVec mid = 0.5 * (s.u_left + s.u_right);
    if (!model.admissible(mid)) {
      throw EvaluationError(std::string(model.id()) + ": inadmissible interface midpoint", mid);
    }
    return mid;
  }

  StateVec lax_friedrichs() const { return fbar - 0.5 / mesh.ratio() * delta; }

  StateVec rusanov() const {
    return fbar - 0.5 * spectral_radius(s.speeds.lambda_min, s.speeds.lambda_max) * delta;
  }

  StateVec lax_wendroff() const {
    const StateVec predicted = 0.5 * (s.u_left + s.u_right) - 0.5 * mesh.ratio() * (s.f_right - s.f_left);
    return checked_flux(model, predicted);
  }

  // Speeds clamped so that lambda_left <= 0 <= lambda_right.
  std::optional<StateVec> hll() const {
    const double ll = std::min(s.speeds.lambda_min, 0.0);
    const double lr = std::max(s.speeds.lambda_max, 0.0);
    if (lr - ll <= 0.0) return std::nullopt;
    return (lr * s.f_left - ll * s.f_right + ll * lr * delta) / (lr - ll);
  }

  // Affine dissipation b0 + b1 nu: D = b0 (dx/dt) I + b1 A with A delta = f_R - f_L.
  StateVec hll_omega(const HllOmegaCoeffs& b) const {
    return fbar - 0.5 * (b.b0 / mesh.ratio() * delta + b.b1 * (s.f_right - s.f_left));
  }

  // (A - lambda_min I)(A - lambda_max I) delta, Jacobian-free.
  StateVec quadratic_product(const WaveBracket& bracket) const {
    const JacobianFreeOperator op(model, midpoint());
    const StateVec a1 = op.apply(delta);
    const StateVec a2 = op.apply(a1);
    return a2 - (bracket.lambda_min + bracket.lambda_max) * a1 + bracket.lambda_min * bracket.lambda_max * delta;
  }

  // Limit of the omega family for coincident speeds: (1-omega) upwind + omega LW.
  StateVec degenerate(double omega) const {
    const double lam = 0.5 * (s.speeds.lambda_min + s.speeds.lambda_max);
    StateVec upwind = lam > 0.0 ? s.f_left : (lam < 0.0 ? s.f_right : fbar);
    if (omega == 0.0) return upwind;
    return (1.0 - omega) * upwind + omega * lax_wendroff();
  }
};

bool is_degenerate(const WaveBracket& bracket) { return !(bracket.width() >= kDegenerateWidth); }

}  // namespace

StateVec flux_pair_mean(const Model& model, const StateVec& u_left, const StateVec& u_right) {
  require_same_length(u_left, u_right, "flux_pair_mean");
  return 0.5 * (checked_flux(model, u_left) + checked_flux(model, u_right));
}

StateVec flux(const FluxScheme& scheme, const Model& model, const StateVec& u_left, const StateVec& u_right,
              const MeshRatio& mesh, FluxDiagnostics* diagnostics) {
  require_same_length(u_left, u_right, "flux");
  if (u_left.size() != model.n_vars()) {
    throw ContractViolation("flux: state length differs from model size");
  }
  const StateVec f_left = checked_flux(model, u_left);
  const StateVec f_right = checked_flux(model, u_right);
  const InterfaceStates states{u_left, u_right, f_left, f_right, model.wave_speed_estimate(u_left, u_right)};
  return flux(scheme, model, states, mesh, diagnostics);
}

StateVec flux(const FluxScheme& scheme, const Model& model, const InterfaceStates& states, const MeshRatio& mesh,
              FluxDiagnostics* diagnostics) {
  const Context ctx(model, states, mesh);
  const WaveBracket bracket = WaveBracket::from_speeds(states.speeds.lambda_min, states.speeds.lambda_max, mesh);
  const double ratio = mesh.ratio();
  auto note_fallback = [&] {
    if (diagnostics) ++diagnostics->degenerate_fallbacks;
  };

  switch (scheme.kind()) {
    case SchemeKind::LF:
      return ctx.lax_friedrichs();
    case SchemeKind::Rusanov:
      return ctx.rusanov();
    case SchemeKind::HLL: {
      if (auto f = ctx.hll()) return *f;
      note_fallback();
      return ctx.fbar;
    }
    case SchemeKind::LW2step:
      return ctx.lax_wendroff();
    case SchemeKind::FORCE:
      return 0.5 * (ctx.lax_friedrichs() + ctx.lax_wendroff());
    case SchemeKind::MUSTA1: {
      const JacobianFreeOperator op(model, ctx.midpoint());
      const StateVec a1 = op.apply(ctx.delta);
      const StateVec a2 = op.apply(a1);
      const StateVec a3 = op.apply(a2);
      const StateVec a4 = op.apply(a3);
      const StateVec dissipation = 0.25 / ratio * ctx.delta + ratio * a2 - 0.25 * ratio * ratio * ratio * a4;
      return assemble_flux(states.f_left, states.f_right, dissipation);
    }
    case SchemeKind::UpwindLinear: {
      const auto a = model.linear_matrix();
      if (!a) throw ContractViolation("upwind flux requires a linear model");
      Eigen::MatrixXd abs_a;
      if (a->rows() == 1) {
        abs_a = a->cwiseAbs();
      } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(*a);
        const Eigen::MatrixXd t = es.eigenvectors().real();
        const Eigen::VectorXd lam = es.eigenvalues().real().cwiseAbs();
        abs_a = t * lam.asDiagonal() * t.inverse();
      }
      const Eigen::VectorXd d = abs_a * Eigen::VectorXd(ctx.delta);
      return assemble_flux(states.f_left, states.f_right, StateVec(d));
    }
    case SchemeKind::HLLX: {
      if (is_degenerate(bracket)) {
        note_fallback();
        return ctx.degenerate(0.0);
      }
      const HllxCoeffs c = hllx_coeffs(bracket);
      const StateVec f_hll = *ctx.hll();
      if (*scheme.path() == EvalPath::Composite) {
        return ctx.fbar + c.alpha0 * (ctx.lax_friedrichs() - ctx.fbar) + c.alpha1 * (f_hll - ctx.fbar) +
               c.alpha2 * (ctx.lax_wendroff() - ctx.fbar);
      }
      return f_hll - 0.5 * c.alpha * ratio * ctx.quadratic_product(bracket);
    }
    case SchemeKind::HLLomega: {
      const double w = scheme.omega_value();
      if (is_degenerate(bracket)) {
        note_fallback();
        return ctx.degenerate(w);
      }
      return ctx.hll_omega(hllomega_coeffs(bracket, *scheme.omega()));
    }
    case SchemeKind::HLLXomega: {
      const double w = scheme.omega_value();
      if (is_degenerate(bracket)) {
        note_fallback();
        return ctx.degenerate(w);
      }
      const HllxOmegaCoeffs c = beta_coeffs(bracket, *scheme.omega());
      const StateVec f_hllw = ctx.hll_omega({c.b0, c.b1});
      if (*scheme.path() == EvalPath::Composite) {
        StateVec out = ctx.fbar + c.beta1 * (f_hllw - ctx.fbar);
        if (c.beta0 != 0.0) out += c.beta0 * (ctx.lax_friedrichs() - ctx.fbar);
        if (c.beta2 != 0.0) out += c.beta2 * (ctx.lax_wendroff() - ctx.fbar);
        return out;
      }
      return f_hllw - 0.5 * c.beta * ratio * ctx.quadratic_product(bracket);
    }
  }
  throw ContractViolation("flux: unknown scheme");
}

double scheme_dissipation(const FluxScheme& scheme, double nu, const WaveBracket& bracket) {
  const bool degenerate = is_degenerate(bracket);
  switch (scheme.kind()) {
    case SchemeKind::LF:
      return d_classic(ClassicKind::LF, nu, bracket);
    case SchemeKind::Rusanov:
      return d_classic(ClassicKind::LLF, nu, bracket);
    case SchemeKind::HLL: {
      // Clamping the bracket to contain zero leaves d_HLL unchanged.
      WaveBracket clamped = bracket;
      clamped.nu_min = std::min(bracket.nu_min, 0.0);
      clamped.nu_max = std::max(bracket.nu_max, 0.0);
      if (is_degenerate(clamped)) return 0.0;
      return d_classic(ClassicKind::HLL, nu, clamped);
    }
    case SchemeKind::LW2step:
      return d_classic(ClassicKind::LW, nu, bracket);
    case SchemeKind::FORCE:
      return d_classic(ClassicKind::FORCE, nu, bracket);
    case SchemeKind::MUSTA1:
      return d_classic(ClassicKind::MUSTA1, nu, bracket);
    case SchemeKind::UpwindLinear:
      return d_classic(ClassicKind::UP, nu, bracket);
    case SchemeKind::HLLX:
      return degenerate ? std::abs(nu) : d_hllx(nu, bracket);
    case SchemeKind::HLLomega:
      return degenerate ? d_omega(nu, *scheme.omega()) : d_hllomega(nu, bracket, *scheme.omega());
    case SchemeKind::HLLXomega:
      return degenerate ? d_omega(nu, *scheme.omega()) : d_hllxomega(nu, bracket, *scheme.omega());
  }
  throw ContractViolation("scheme_dissipation: unknown scheme");
}

}  // namespace hllxw
