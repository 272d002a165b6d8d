#pragma once

// Modified-equation view of the upwind / Lax-Wendroff blend on linear
// advection, the non-dimensional Fourier solution of a smeared step and
// per-step overshoot series.

#include "hllxw/timeloop.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace hllxw {

/// Coefficients of u_t + a u_x = d_up u_xx + d3 u_xxx for the first-order
/// upwind (d_up, d_up3) and Lax-Wendroff (d_lw) schemes.
struct ModifiedEqCoeffs {
  double a = 0.0;
  double dx = 0.0;
  double nu = 0.0;
  double d_up = 0.0;   // 1/2 a dx (1 - nu)
  double d_lw = 0.0;   // 1/6 a dx^2 (nu^2 - 1)
  double d_up3 = 0.0;  // -1/6 a dx^2 (1 - nu)(1 - 2 nu), upwind dispersion

  /// Dispersion of the omega-blend omega LW + (1 - omega) upwind.
  double blended_dispersion(double omega) const { return omega * d_lw + (1.0 - omega) * d_up3; }
};

ModifiedEqCoeffs modified_eq_coeffs(double a, double dx, double nu);

/// d_lw = 0: the blend has no dispersive scale.
class DegenerateDispersion : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

struct NondimParams {
  double k0 = 0.0;
  double xi0 = 0.0;
  double d_hat = 0.0;
  /// Orientation: u(xi, t) = orientation * utilde(orientation * xi / xi0, d_hat).
  /// Equals -sign(dispersion coefficient); +1 for the usual negative d_lw.
  double orientation = 1.0;
};

/// Scales for u_t + a u_x = d2 u_xx + d3 u_xxx at time t.
NondimParams nondim(double d2, double d3, double t);

/// Scales with diffusion d_up (1 - omega) and dispersion d_lw.
NondimParams dhat(double d_up, double d_lw, double t, double omega);

struct UtildeOptions {
  /// Absolute tolerance target of the quadrature.
  double tol_damped = 1e-8;
  double tol_undamped = 1e-6;
};

/// (2/pi) int_0^inf exp(-d_hat k^2) sin(k xi_hat + k^3) / k dk.
double utilde(double xi_hat, double d_hat, const UtildeOptions& options = {});

/// The same solution in dimensional form, integrated directly:
/// (2/pi) int_0^inf exp(-d2 t k^2) sin(k xi - d3 t k^3) / k dk, xi = x - a t.
double utilde_dimensional(double xi, double t, double d2, double d3);

/// Per-step maxima of a primitive variable from a run's diagnostics.
std::vector<double> overshoot_series(const RunResult& result, const Model& model, std::string_view variable);

struct DecayReport {
  std::size_t peak_index = 0;
  double peak = 0.0;
  /// series[k+1] <= series[k] for every k after the peak
  bool monotone_after_peak = false;
  /// local maxima after the peak never increase
  bool envelope_decreasing = false;
  /// largest increase between consecutive steps after the peak
  double max_rise = 0.0;
};

/// `baseline` is subtracted first (e.g. 1 for a unit step), so the peak is
/// that of the overshoot.
DecayReport decay_after_peak(const std::vector<double>& series, double baseline = 0.0);

void write_utilde_csv(std::ostream& out, double d_hat, double xi_lo, double xi_hi, int samples);
void write_overshoot_csv(std::ostream& out, const std::vector<double>& series);

/// Max |u_i - utilde| over cells with |xi_hat| <= window for a run of sign
/// data advected with speed a, the jump initially at x0.
struct UtildeComparison {
  double max_error = 0.0;
  int cells_compared = 0;
  NondimParams scales;
};

UtildeComparison compare_with_utilde(const RunResult& result, double a, double x0, double d2, double d3,
                                     double window = 5.0);

}  // namespace hllxw
