#pragma once

#include "hllxw/core.hpp"
#include "hllxw/dissipation.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace hllxw {

enum class SchemeKind { LF, Rusanov, HLL, LW2step, FORCE, MUSTA1, UpwindLinear, HLLX, HLLomega, HLLXomega };

/// How HLLX-type fluxes realize their quadratic dissipation: as a weighted
/// sum of LF, HLL(omega) and two-step LW fluxes, or through Jacobian-free
/// products with the dissipation matrix.
enum class EvalPath { Composite, DissipationMatrix };

class FluxScheme {
 public:
  /// Validates that omega is given exactly for HLLomega/HLLXomega and path
  /// exactly for HLLX/HLLXomega.
  static FluxScheme make(SchemeKind kind, std::optional<OmegaParam> omega = std::nullopt,
                         std::optional<EvalPath> path = std::nullopt);

  // Convenience constructors with defaults for the optional parameters.
  static FluxScheme simple(SchemeKind kind);
  static FluxScheme hllx(EvalPath path = EvalPath::Composite);
  static FluxScheme hllomega(double omega);
  static FluxScheme hllxomega(double omega, EvalPath path = EvalPath::Composite);

  SchemeKind kind() const noexcept { return kind_; }
  const std::optional<OmegaParam>& omega() const noexcept { return omega_; }
  const std::optional<EvalPath>& path() const noexcept { return path_; }
  /// omega for the omega family, 0 otherwise.
  double omega_value() const noexcept { return omega_ ? omega_->value() : 0.0; }

  friend bool operator==(const FluxScheme&, const FluxScheme&) = default;

 private:
  FluxScheme(SchemeKind kind, std::optional<OmegaParam> omega, std::optional<EvalPath> path)
      : kind_(kind), omega_(omega), path_(path) {}

  SchemeKind kind_;
  std::optional<OmegaParam> omega_;
  std::optional<EvalPath> path_;
};

bool scheme_uses_omega(SchemeKind kind);
bool scheme_has_paths(SchemeKind kind);

/// CLI names: lf, rusanov, hll, lw, force, musta1, upwind, hllx, hll-omega, hllx-omega.
std::string_view scheme_name(SchemeKind kind);
SchemeKind parse_scheme_kind(std::string_view name);
std::string_view path_name(EvalPath path);
EvalPath parse_path(std::string_view name);

struct FluxDiagnostics {
  /// Interfaces whose bracket was too narrow for the quadratic/affine
  /// dissipation and fell back to upwinding.
  long degenerate_fallbacks = 0;
};

/// Everything known about one interface. Physical fluxes and speeds may be
/// precomputed by the caller.
struct InterfaceStates {
  const StateVec& u_left;
  const StateVec& u_right;
  const StateVec& f_left;
  const StateVec& f_right;
  WaveSpeeds speeds;
};

/// Numerical flux of `scheme` at one interface.
StateVec flux(const FluxScheme& scheme, const Model& model, const StateVec& u_left, const StateVec& u_right,
              const MeshRatio& mesh, FluxDiagnostics* diagnostics = nullptr);

StateVec flux(const FluxScheme& scheme, const Model& model, const InterfaceStates& states, const MeshRatio& mesh,
              FluxDiagnostics* diagnostics = nullptr);

StateVec flux_pair_mean(const Model& model, const StateVec& u_left, const StateVec& u_right);

/// Scalar dissipation function realized by `scheme` at Courant number nu for
/// the given bracket. Degenerate brackets use the limit the flux falls back
/// to: omega nu^2 + (1 - omega)|nu| (pure upwind for HLL/HLLX).
double scheme_dissipation(const FluxScheme& scheme, double nu, const WaveBracket& bracket);

}  // namespace hllxw
