#pragma once

#include "hllxw/core.hpp"
#include "hllxw/solvers.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hllxw {

class Grid1D {
 public:
  Grid1D(double x_left, double x_right, int n_cells);

  double x_left() const noexcept { return x_left_; }
  double x_right() const noexcept { return x_right_; }
  int n_cells() const noexcept { return n_cells_; }
  double dx() const noexcept { return dx_; }
  double center(int i) const noexcept { return x_left_ + (i + 0.5) * dx_; }
  /// Left edge of cell i; interface(n_cells) is x_right.
  double interface(int i) const noexcept { return x_left_ + i * dx_; }
  std::vector<double> centers() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x_left_;
  double x_right_;
  int n_cells_;
  double dx_;
};

enum class BoundaryKind { ZeroGradient, Periodic };

std::string_view boundary_name(BoundaryKind kind);
BoundaryKind parse_boundary(std::string_view name);

struct ModelParams {
  std::string id = "euler";
  double gamma = 1.4;
  double bx = 0.0;
  double advection_speed = 1.0;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// A Riemann problem on a uniform grid together with the scheme that solves it.
struct CaseConfig {
  std::string name;
  ModelParams model;
  StateVec left;   // primitive
  StateVec right;  // primitive
  double x0 = 0.0;
  double x_left = 0.0;
  double x_right = 1.0;
  int n_cells = 100;
  double cfl_nu_bar = 0.9;
  double t_end = 0.1;
  FluxScheme scheme = FluxScheme::simple(SchemeKind::HLL);
  std::vector<double> snapshot_times;
  BoundaryKind boundary = BoundaryKind::ZeroGradient;

  Grid1D grid() const { return Grid1D(x_left, x_right, n_cells); }
  std::unique_ptr<Model> make_model() const;
  /// Throws ContractViolation naming the offending field.
  void validate() const;

  friend bool operator==(const CaseConfig&, const CaseConfig&) = default;
};

using CellStates = std::vector<StateVec>;

struct StepDiagnostics {
  int step = 0;
  double t = 0.0;  // time after the step
  double dt = 0.0;
  double max_speed = 0.0;
  double max_courant = 0.0;
  StateVec prim_min;  // over cells after the step
  StateVec prim_max;
  long degenerate_fallbacks = 0;
  long bound_enlargements = 0;
  long stalled_estimates = 0;
};

struct Snapshot {
  double t = 0.0;
  CellStates cells;  // conserved
};

/// Per-component balance: final - initial - boundary_flux = residual.
struct ConservationLedger {
  StateVec initial;
  StateVec final_;
  StateVec boundary_flux;  // integral over time of f_left_boundary - f_right_boundary
  StateVec scale;          // max of initial and final L1 norms, per component
  StateVec residual() const { return final_ - initial - boundary_flux; }
  /// max over components of |residual| / scale (components with zero scale skipped).
  double max_relative_residual() const;
};

struct RunResult {
  Grid1D grid;
  CellStates initial;
  CellStates final_;
  double t_final = 0.0;
  std::vector<Snapshot> snapshots;
  std::vector<StepDiagnostics> diagnostics;
  ConservationLedger ledger;
};

/// Raised when a flux evaluation fails during a run.
class RunError : public EvaluationError {
 public:
  RunError(const std::string& what, StateVec state, int interface_index, double time)
      : EvaluationError(what, std::move(state)), interface_index_(interface_index), time_(time) {}

  int interface_index() const noexcept { return interface_index_; }
  double time() const noexcept { return time_; }

 private:
  int interface_index_;
  double time_;
};

inline constexpr int kGhostCells = 2;

/// Exact cell averages of the piecewise-constant Riemann data (conserved variables).
CellStates project_initial(const CaseConfig& config, const Model& model);

/// Adds kGhostCells cells per side.
CellStates apply_bc(const CellStates& cells, BoundaryKind kind = BoundaryKind::ZeroGradient);

/// Wave speeds at the n+1 interfaces of an extended state array.
std::vector<WaveSpeeds> interface_speeds(const CellStates& extended, const Model& model);

double cfl_dt(const CellStates& cells, const Model& model, double cfl_nu_bar, double dx, double t_remaining,
              BoundaryKind kind = BoundaryKind::ZeroGradient);

struct StepOutcome {
  CellStates cells;
  StateVec left_boundary_flux;
  StateVec right_boundary_flux;
  FluxDiagnostics flux_diagnostics;
  long bound_enlargements = 0;
  long stalled_estimates = 0;
  double max_speed = 0.0;
};

/// One explicit Euler update. When `speeds` is given it must hold the
/// interface speeds of apply_bc(cells, kind).
StepOutcome step(const CellStates& cells, const FluxScheme& scheme, const Model& model, const MeshRatio& mesh,
                 BoundaryKind kind = BoundaryKind::ZeroGradient, const std::vector<WaveSpeeds>* speeds = nullptr,
                 double time = 0.0);

/// Called before each step with the step index (from 1), the cells entering
/// the step and the chosen dt.
using StepObserver = std::function<void(int, const CellStates&, double)>;

RunResult run(const CaseConfig& config, const StepObserver& observer = {});
RunResult run(const CaseConfig& config, const Model& model, const StepObserver& observer = {});

}  // namespace hllxw
