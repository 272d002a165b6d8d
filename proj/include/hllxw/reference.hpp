#pragma once

#include "hllxw/core.hpp"
#include "hllxw/timeloop.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace hllxw {

/// The Riemann data produce a vacuum; no star state exists.
class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Primitive Euler state (rho, v, p).
struct EulerPrim {
  double rho = 1.0;
  double v = 0.0;
  double p = 1.0;
};

/// Exact solution of the Euler Riemann problem for an ideal gas.
class ExactSodSolution {
 public:
  ExactSodSolution(double gamma, const EulerPrim& left, const EulerPrim& right);

  /// Primitive (rho, v, p) at x/t.
  EulerPrim sample(double x_over_t) const;

  double gamma() const noexcept { return gamma_; }
  const EulerPrim& left() const noexcept { return left_; }
  const EulerPrim& right() const noexcept { return right_; }
  double p_star() const noexcept { return p_star_; }
  double u_star() const noexcept { return u_star_; }
  double rho_star_left() const noexcept { return rho_star_l_; }
  double rho_star_right() const noexcept { return rho_star_r_; }
  bool left_shock() const noexcept { return p_star_ > left_.p; }
  bool right_shock() const noexcept { return p_star_ > right_.p; }
  /// Head and tail speed of the left wave (equal for a shock).
  double left_head() const noexcept { return left_head_; }
  double left_tail() const noexcept { return left_tail_; }
  double contact() const noexcept { return u_star_; }
  double right_tail() const noexcept { return right_tail_; }
  double right_head() const noexcept { return right_head_; }
  /// Newton iterations used; bisection fallback flag.
  int iterations() const noexcept { return iterations_; }
  bool used_bisection() const noexcept { return used_bisection_; }

 private:
  double pressure_function(double p, const EulerPrim& s, double c, double* derivative) const;

  double gamma_;
  EulerPrim left_;
  EulerPrim right_;
  double c_l_;
  double c_r_;
  double p_star_ = 0.0;
  double u_star_ = 0.0;
  double rho_star_l_ = 0.0;
  double rho_star_r_ = 0.0;
  double left_head_ = 0.0;
  double left_tail_ = 0.0;
  double right_tail_ = 0.0;
  double right_head_ = 0.0;
  int iterations_ = 0;
  bool used_bisection_ = false;
};

EulerPrim sod_exact(double gamma, const EulerPrim& left, const EulerPrim& right, double x_over_t);

/// Conserved Euler cell averages of the exact solution at time t (jump at x0),
/// 16-point Gauss-Legendre on each piece of a cell between wave fronts.
CellStates exact_cell_averages(const ExactSodSolution& solution, const Grid1D& grid, double x0, double t);

/// Runs `config` on n_ref cells with `scheme` and returns the final conserved cells.
CellStates fine_reference(const CaseConfig& config, int n_ref,
                          const FluxScheme& scheme = FluxScheme::simple(SchemeKind::HLL));

/// Block averages of `fine` onto n_coarse cells; fine.size() must be a multiple.
CellStates restrict_cells(const CellStates& fine, int n_coarse);

/// Primitive variable `name` of every cell.
std::vector<double> extract_variable(const CellStates& cells, const Model& model, std::string_view name);

/// (sum |u_i - r_i|^p dx)^(1/p), p in {1, 2}.
double error_norm(const std::vector<double>& solution, const std::vector<double>& reference, double dx, int p);

/// Writes x followed by the primitive variables, 17 significant digits.
void write_profile_csv(std::ostream& out, const Grid1D& grid, const CellStates& cells, const Model& model,
                       const std::vector<std::string>& variables = {});

}  // namespace hllxw
