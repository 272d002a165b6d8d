#include "hllxw/timeloop.hpp"

#include "hllxw/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hllxw {

Grid1D::Grid1D(double x_left, double x_right, int n_cells)
    : x_left_(x_left), x_right_(x_right), n_cells_(n_cells), dx_((x_right - x_left) / n_cells) {
  if (n_cells < 2) throw ContractViolation("grid: n_cells >= 2 required");
  if (!(x_right > x_left)) throw ContractViolation("grid: x_right > x_left required");
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> x(n_cells_);
  for (int i = 0; i < n_cells_; ++i) x[i] = center(i);
  return x;
}

std::string_view boundary_name(BoundaryKind kind) {
  return kind == BoundaryKind::Periodic ? "periodic" : "zero-gradient";
}

BoundaryKind parse_boundary(std::string_view name) {
  if (name == "zero-gradient") return BoundaryKind::ZeroGradient;
  if (name == "periodic") return BoundaryKind::Periodic;
  throw std::invalid_argument("unknown boundary '" + std::string(name) + "' (expected zero-gradient or periodic)");
}

std::unique_ptr<Model> CaseConfig::make_model() const {
  return hllxw::make_model(model.id, model.gamma, model.bx, model.advection_speed);
}

void CaseConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ContractViolation(msg); };
  if (n_cells < 2) fail("n_cells: must be >= 2");
  if (!(x_right > x_left)) fail("x_right: must exceed x_left");
  if (!(x0 >= x_left && x0 <= x_right)) fail("x0: must lie inside [x_left, x_right]");
  if (!(cfl_nu_bar > 0.0 && cfl_nu_bar <= 1.0)) fail("cfl: must lie in (0, 1]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) fail("t_end: must be positive");
  for (double ts : snapshot_times) {
    if (!(ts > 0.0 && ts <= t_end)) fail("snapshot_times: each must lie in (0, t_end]");
  }
  const auto m = make_model();
  if (left.size() != m->n_vars()) fail("left: expected " + std::to_string(m->n_vars()) + " primitive values");
  if (right.size() != m->n_vars()) fail("right: expected " + std::to_string(m->n_vars()) + " primitive values");
  if (!m->admissible(m->from_primitive(left))) fail("left: state is not admissible for model " + model.id);
  if (!m->admissible(m->from_primitive(right))) fail("right: state is not admissible for model " + model.id);
}

double ConservationLedger::max_relative_residual() const {
  const StateVec r = residual();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    if (scale[k] > 0.0) worst = std::max(worst, std::abs(r[k]) / scale[k]);
  }
  return worst;
}

CellStates project_initial(const CaseConfig& config, const Model& model) {
  const Grid1D grid = config.grid();
  if (!(config.x0 >= grid.x_left() && config.x0 <= grid.x_right())) {
    throw ContractViolation("x0: must lie inside [x_left, x_right]");
  }
  const StateVec ul = model.from_primitive(config.left);
  const StateVec ur = model.from_primitive(config.right);
  CellStates cells(grid.n_cells());
  for (int i = 0; i < grid.n_cells(); ++i) {
    const double a = grid.interface(i);
    const double b = grid.interface(i + 1);
    if (b <= config.x0) {
      cells[i] = ul;
    } else if (a >= config.x0) {
      cells[i] = ur;
    } else {
      const double theta = (config.x0 - a) / grid.dx();
      cells[i] = theta * ul + (1.0 - theta) * ur;
    }
  }
  return cells;
}

CellStates apply_bc(const CellStates& cells, BoundaryKind kind) {
  const int n = static_cast<int>(cells.size());
  if (n < 2) throw ContractViolation("apply_bc: at least 2 cells required");
  CellStates ext(n + 2 * kGhostCells);
  for (int i = 0; i < n; ++i) ext[i + kGhostCells] = cells[i];
  for (int g = 0; g < kGhostCells; ++g) {
    if (kind == BoundaryKind::Periodic) {
      ext[g] = cells[n - kGhostCells + g];
      ext[n + kGhostCells + g] = cells[g];
    } else {
      ext[g] = cells.front();
      ext[n + kGhostCells + g] = cells.back();
    }
  }
  return ext;
}

std::vector<WaveSpeeds> interface_speeds(const CellStates& extended, const Model& model) {
  const int n = static_cast<int>(extended.size()) - 2 * kGhostCells;
  std::vector<WaveSpeeds> speeds(n + 1);
  for (int j = 0; j <= n; ++j) {
    const StateVec& ul = extended[j + kGhostCells - 1];
    const StateVec& ur = extended[j + kGhostCells];
    try {
      speeds[j] = model.wave_speed_estimate(ul, ur);
    } catch (const EvaluationError& e) {
      throw RunError(std::string("wave speed estimate failed at interface ") + std::to_string(j) + ": " + e.what(),
                     e.state(), j, std::numeric_limits<double>::quiet_NaN());
    }
  }
  return speeds;
}

namespace {

double max_radius(const std::vector<WaveSpeeds>& speeds) {
  double m = 0.0;
  for (const auto& s : speeds) m = std::max(m, spectral_radius(s.lambda_min, s.lambda_max));
  return m;
}

// Clip dt so that the target time is hit exactly, absorbing roundoff-sized remainders.
double clip_dt(double dt, double remaining, double t_scale, bool* hit) {
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * t_scale;
  if (dt >= remaining - slack) {
    *hit = true;
    return remaining;
  }
  *hit = false;
  return dt;
}

}  // namespace

double cfl_dt(const CellStates& cells, const Model& model, double cfl_nu_bar, double dx, double t_remaining,
              BoundaryKind kind) {
  if (!(cfl_nu_bar > 0.0 && cfl_nu_bar <= 1.0)) throw ContractViolation("cfl_dt: cfl must lie in (0, 1]");
  if (!(dx > 0.0)) throw ContractViolation("cfl_dt: dx must be positive");
  if (!(t_remaining > 0.0)) throw ContractViolation("cfl_dt: t_remaining must be positive");
  const double smax = max_radius(interface_speeds(apply_bc(cells, kind), model));
  if (smax == 0.0) return t_remaining;
  return std::min(cfl_nu_bar * dx / smax, t_remaining);
}

StepOutcome step(const CellStates& cells, const FluxScheme& scheme, const Model& model, const MeshRatio& mesh,
                 BoundaryKind kind, const std::vector<WaveSpeeds>* speeds, double time) {
  const int n = static_cast<int>(cells.size());
  const CellStates ext = apply_bc(cells, kind);
  std::vector<WaveSpeeds> own_speeds;
  if (!speeds) {
    own_speeds = interface_speeds(ext, model);
    speeds = &own_speeds;
  }
  if (static_cast<int>(speeds->size()) != n + 1) throw ContractViolation("step: speeds length must be n_cells + 1");

  // Physical fluxes of the cells adjacent to some interface.
  CellStates cell_flux(ext.size());
  for (int k = kGhostCells - 1; k <= n + kGhostCells; ++k) {
    try {
      cell_flux[k] = checked_flux(model, ext[k]);
    } catch (const EvaluationError& e) {
      throw RunError(std::string("flux evaluation failed in cell ") + std::to_string(k - kGhostCells) + ": " +
                         e.what(),
                     e.state(), k - kGhostCells, time);
    }
  }

  StepOutcome out;
  CellStates iface(n + 1);
  for (int j = 0; j <= n; ++j) {
    const int l = j + kGhostCells - 1;
    const int r = j + kGhostCells;
    const WaveSpeeds& ws = (*speeds)[j];
    if (ws.flags & kBoundEnlarged) ++out.bound_enlargements;
    if (ws.flags & kPowerIterationStalled) ++out.stalled_estimates;
    out.max_speed = std::max(out.max_speed, spectral_radius(ws.lambda_min, ws.lambda_max));
    const InterfaceStates st{ext[l], ext[r], cell_flux[l], cell_flux[r], ws};
    try {
      iface[j] = flux(scheme, model, st, mesh, &out.flux_diagnostics);
    } catch (const EvaluationError& e) {
      std::ostringstream msg;
      msg << "numerical flux failed at interface " << j << " (between cells " << j - 1 << " and " << j
          << ") at t=" << time << ": " << e.what();
      throw RunError(msg.str(), e.state(), j, time);
    }
  }

  const double r = mesh.ratio();
  out.cells.resize(n);
  for (int i = 0; i < n; ++i) out.cells[i] = cells[i] - r * (iface[i + 1] - iface[i]);
  out.left_boundary_flux = iface.front();
  out.right_boundary_flux = iface.back();
  return out;
}

namespace {

StateVec integral(const CellStates& cells, double dx) {
  StateVec s = StateVec::Zero(cells.front().size());
  for (const auto& u : cells) s += u;
  return s * dx;
}

StateVec l1(const CellStates& cells, double dx) {
  StateVec s = StateVec::Zero(cells.front().size());
  for (const auto& u : cells) s += u.cwiseAbs();
  return s * dx;
}

void primitive_range(const CellStates& cells, const Model& model, StateVec& lo, StateVec& hi, double time) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    StateVec w;
    try {
      w = model.to_primitive(cells[i]);
    } catch (const EvaluationError& e) {
      throw RunError(std::string("inadmissible state in cell ") + std::to_string(i) + ": " + e.what(), e.state(),
                     static_cast<int>(i), time);
    }
    if (i == 0) {
      lo = w;
      hi = w;
    } else {
      lo = lo.cwiseMin(w);
      hi = hi.cwiseMax(w);
    }
  }
}

}  // namespace

RunResult run(const CaseConfig& config, const StepObserver& observer) {
  config.validate();
  const auto model = config.make_model();
  return run(config, *model, observer);
}

RunResult run(const CaseConfig& config, const Model& model, const StepObserver& observer) {
  const Grid1D grid = config.grid();
  const double dx = grid.dx();

  std::vector<double> targets = config.snapshot_times;
  targets.push_back(config.t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  const std::size_t n_snapshots_requested = config.snapshot_times.size();

  RunResult result{grid, project_initial(config, model), {}, 0.0, {}, {}, {}};
  CellStates cells = result.initial;
  StateVec boundary = StateVec::Zero(model.n_vars());

  double t = 0.0;
  int step_index = 0;
  std::size_t target_index = 0;
  while (target_index < targets.size()) {
    const double target = targets[target_index];
    const CellStates ext = apply_bc(cells, config.boundary);
    std::vector<WaveSpeeds> speeds;
    try {
      speeds = interface_speeds(ext, model);
    } catch (const RunError& e) {
      throw RunError(e.what(), e.state(), e.interface_index(), t);
    }
    const double smax = max_radius(speeds);
    const double remaining = target - t;
    bool hit = false;
    double dt = smax > 0.0 ? config.cfl_nu_bar * dx / smax : remaining;
    dt = clip_dt(dt, remaining, config.t_end, &hit);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw RunError("time step collapsed", cells.front(), -1, t);
    }

    ++step_index;
    if (observer) observer(step_index, cells, dt);
    StepOutcome out = step(cells, config.scheme, model, MeshRatio(dx, dt), config.boundary, &speeds, t);
    cells = std::move(out.cells);
    boundary += dt * (out.left_boundary_flux - out.right_boundary_flux);
    t = hit ? target : t + dt;

    StepDiagnostics d;
    d.step = step_index;
    d.t = t;
    d.dt = dt;
    d.max_speed = out.max_speed;
    d.max_courant = out.max_speed * dt / dx;
    d.degenerate_fallbacks = out.flux_diagnostics.degenerate_fallbacks;
    d.bound_enlargements = out.bound_enlargements;
    d.stalled_estimates = out.stalled_estimates;
    primitive_range(cells, model, d.prim_min, d.prim_max, t);
    result.diagnostics.push_back(std::move(d));

    if (hit) {
      const bool requested = std::find(config.snapshot_times.begin(), config.snapshot_times.end(), target) !=
                             config.snapshot_times.end();
      if (requested && n_snapshots_requested > 0) result.snapshots.push_back({target, cells});
      ++target_index;
    }
  }

  result.final_ = std::move(cells);
  result.t_final = t;
  ConservationLedger& ledger = result.ledger;
  ledger.initial = integral(result.initial, dx);
  ledger.final_ = integral(result.final_, dx);
  ledger.boundary_flux = boundary;
  ledger.scale = l1(result.initial, dx).cwiseMax(l1(result.final_, dx));
  return result;
}

}  // namespace hllxw
