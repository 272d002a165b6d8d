#include "hllxw/analysis.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hllxw {

ModifiedEqCoeffs modified_eq_coeffs(double a, double dx, double nu) {
  if (!(std::abs(nu) <= 1.0)) throw ContractViolation("modified_eq_coeffs: |nu| <= 1 required");
  if (!(dx > 0.0)) throw ContractViolation("modified_eq_coeffs: dx > 0 required");
  ModifiedEqCoeffs c;
  c.a = a;
  c.dx = dx;
  c.nu = nu;
  c.d_up = 0.5 * a * dx * (1.0 - nu);
  c.d_lw = a * dx * dx * (nu * nu - 1.0) / 6.0;
  c.d_up3 = -a * dx * dx * (1.0 - nu) * (1.0 - 2.0 * nu) / 6.0;
  return c;
}

NondimParams nondim(double d2, double d3, double t) {
  if (!(t > 0.0)) throw ContractViolation("nondim: t > 0 required");
  if (!(d2 >= 0.0)) throw ContractViolation("nondim: diffusion must be non-negative");
  if (d3 == 0.0) throw DegenerateDispersion("dispersion coefficient is zero: pure diffusion, no cubic scale");
  NondimParams p;
  p.k0 = std::cbrt(1.0 / (std::abs(d3) * t));
  p.xi0 = 1.0 / p.k0;
  p.d_hat = d2 * std::cbrt(t / (d3 * d3));
  p.orientation = d3 < 0.0 ? 1.0 : -1.0;
  return p;
}

NondimParams dhat(double d_up, double d_lw, double t, double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("omega in [0,1] required");
  return nondim(d_up * (1.0 - omega), d_lw, t);
}

// --- utilde -----------------------------------------------------------------

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr double kDampingCut = 27.631021115928547;  // -ln(1e-12)

struct Integrand {
  double xi;
  double damping;
  double operator()(double k) const {
    if (k == 0.0) return xi;
    return std::exp(-damping * k * k) * std::sin(k * xi + k * k * k) / k;
  }
};

// Smallest k in [lo, hi] with k^3 + xi k = target, phase monotone on [lo, hi].
double solve_phase(double xi, double target, double lo, double hi) {
  auto f = [&](double k) {
    return std::make_pair(k * k * k + xi * k - target, 3.0 * k * k + xi);
  };
  const double guess = 0.5 * (lo + hi);
  std::uintmax_t iters = 100;
  return boost::math::tools::newton_raphson_iterate(f, guess, lo, hi, 52, iters);
}

// Panel edges where the phase k xi + k^3 crosses multiples of pi, up to k_max.
std::vector<double> phase_panels(double xi, double k_max) {
  std::vector<double> edges{0.0};
  auto phase = [&](double k) { return k * k * k + xi * k; };
  double start = 0.0;
  if (xi < 0.0) {
    // Decreasing branch on [0, k_turn].
    const double k_turn = std::min(std::sqrt(-xi / 3.0), k_max);
    const double lowest = phase(k_turn);
    for (int m = -1; m * std::numbers::pi > lowest; --m) {
      edges.push_back(solve_phase(xi, m * std::numbers::pi, edges.back(), k_turn));
    }
    if (k_turn > edges.back()) edges.push_back(k_turn);
    start = k_turn;
  }
  const double top = phase(k_max);
  double m = std::floor(phase(start) / std::numbers::pi) + 1.0;
  for (; m * std::numbers::pi < top; m += 1.0) {
    edges.push_back(solve_phase(xi, m * std::numbers::pi, edges.back(), k_max));
  }
  if (k_max > edges.back()) edges.push_back(k_max);
  return edges;
}

struct Partial {
  double value = 0.0;
  double error = 0.0;
};

Partial integrate_to(double xi, double damping, double k_max) {
  const Integrand f{xi, damping};
  const auto edges = phase_panels(xi, k_max);
  Partial out;
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    double err = 0.0;
    out.value += GK::integrate(f, edges[j], edges[j + 1], 2, 1e-12, &err);
    out.error += err;
  }
  return out;
}

// Tail beyond K by two integrations by parts: with g = e^{-D k^2} / (k phi'),
// int_K^inf g phi' sin(phi) dk ~ g cos(phi) - (g' / phi') sin(phi) at K.
double tail_estimate(double xi, double damping, double k) {
  const double phase = k * k * k + xi * k;
  const double slope = 3.0 * k * k + xi;
  const double g = std::exp(-damping * k * k) / (k * slope);
  const double dg = g * (-2.0 * damping * k - 1.0 / k - 6.0 * k / slope);
  return g * std::cos(phase) - dg / slope * std::sin(phase);
}

}  // namespace

double utilde(double xi_hat, double d_hat, const UtildeOptions& options) {
  if (!(d_hat >= 0.0)) throw ContractViolation("utilde: d_hat >= 0 required");
  if (!std::isfinite(xi_hat)) throw ContractViolation("utilde: xi_hat must be finite");
  const double scale = 2.0 / std::numbers::pi;

  // The phase must be past its turning point and growing fast before the
  // tail formula applies.
  const double k_floor = std::max(4.0, 2.0 * std::sqrt(std::abs(xi_hat)));

  if (d_hat > 0.0) {
    const double k_damped = std::sqrt(kDampingCut / d_hat);
    if (k_damped <= 16.0) {
      const Partial p = integrate_to(xi_hat, d_hat, std::max(k_damped, 1e-3));
      if (p.error > options.tol_damped / scale) {
        std::ostringstream msg;
        msg << "utilde: quadrature error " << p.error * scale << " exceeds " << options.tol_damped;
        throw QuadratureError(msg.str(), p.error * scale);
      }
      return scale * p.value;
    }
  }

  // Weak or no damping: successive doubling of the cut-off with tail correction.
  const double tol = d_hat > 0.0 ? options.tol_damped : options.tol_undamped;
  double k_max = k_floor;
  Partial p = integrate_to(xi_hat, d_hat, k_max);
  double previous = p.value + tail_estimate(xi_hat, d_hat, k_max);
  double change = 0.0;
  for (int doubling = 0; doubling < 4; ++doubling) {
    k_max *= 2.0;
    p = integrate_to(xi_hat, d_hat, k_max);
    const double current = p.value + tail_estimate(xi_hat, d_hat, k_max);
    change = std::abs(current - previous) + p.error;
    previous = current;
    if (change * scale <= tol) return scale * current;
  }
  std::ostringstream msg;
  msg << "utilde: no convergence at xi_hat=" << xi_hat << ", d_hat=" << d_hat << "; achieved " << change * scale;
  throw QuadratureError(msg.str(), change * scale);
}

double utilde_dimensional(double xi, double t, double d2, double d3) {
  if (!(t > 0.0) || !(d2 > 0.0)) throw ContractViolation("utilde_dimensional: t > 0 and d2 > 0 required");
  // Substitution-free quadrature in physical wavenumbers, cut where the damping is negligible.
  const double k_max = std::sqrt(kDampingCut / (d2 * t));
  auto f = [&](double k) {
    if (k == 0.0) return xi;
    return std::exp(-d2 * t * k * k) * std::sin(k * xi - d3 * t * k * k * k) / k;
  };
  // Panels of a quarter oscillation of the fastest local phase.
  double sum = 0.0;
  double k = 0.0;
  while (k < k_max) {
    const double rate = std::abs(xi) + 3.0 * std::abs(d3) * t * k * k + 1e-300;
    const double h = std::min(0.5 * std::numbers::pi / rate, k_max - k);
    sum += GK::integrate(f, k, k + h, 2, 1e-12);
    k += h;
  }
  return 2.0 / std::numbers::pi * sum;
}

// --- overshoot ----------------------------------------------------------------

std::vector<double> overshoot_series(const RunResult& result, const Model& model, std::string_view variable) {
  const auto names = model.variable_names();
  const auto it = std::find(names.begin(), names.end(), variable);
  if (it == names.end()) throw ContractViolation("overshoot_series: unknown variable '" + std::string(variable) + "'");
  const auto index = static_cast<Eigen::Index>(it - names.begin());
  std::vector<double> series;
  series.reserve(result.diagnostics.size());
  for (const auto& d : result.diagnostics) series.push_back(d.prim_max[index]);
  return series;
}

DecayReport decay_after_peak(const std::vector<double>& series, double baseline) {
  DecayReport r;
  if (series.empty()) return r;
  const auto peak = std::max_element(series.begin(), series.end());
  r.peak_index = static_cast<std::size_t>(peak - series.begin());
  r.peak = *peak - baseline;
  r.monotone_after_peak = true;
  r.envelope_decreasing = true;
  double last_local_max = r.peak;
  for (std::size_t k = r.peak_index + 1; k < series.size(); ++k) {
    const double rise = series[k] - series[k - 1];
    if (rise > 0.0) {
      r.monotone_after_peak = false;
      r.max_rise = std::max(r.max_rise, rise);
    }
    const bool is_local_max = series[k] >= series[k - 1] && (k + 1 == series.size() || series[k] >= series[k + 1]);
    if (is_local_max && rise > 0.0) {
      const double value = series[k] - baseline;
      if (value > last_local_max) r.envelope_decreasing = false;
      last_local_max = value;
    }
  }
  return r;
}

void write_utilde_csv(std::ostream& out, double d_hat, double xi_lo, double xi_hi, int samples) {
  if (samples < 2) throw ContractViolation("write_utilde_csv: samples >= 2 required");
  out << "xi_hat,u\n" << std::setprecision(17);
  for (int k = 0; k < samples; ++k) {
    const double xi = xi_lo + (xi_hi - xi_lo) * k / (samples - 1);
    out << xi << ',' << utilde(xi, d_hat) << '\n';
  }
}

void write_overshoot_csv(std::ostream& out, const std::vector<double>& series) {
  out << "step,max\n" << std::setprecision(17);
  for (std::size_t k = 0; k < series.size(); ++k) out << k + 1 << ',' << series[k] << '\n';
}

UtildeComparison compare_with_utilde(const RunResult& result, double a, double x0, double d2, double d3,
                                     double window) {
  UtildeComparison c;
  c.scales = nondim(d2, d3, result.t_final);
  const Grid1D& grid = result.grid;
  const double length = grid.x_right() - grid.x_left();
  for (int i = 0; i < grid.n_cells(); ++i) {
    // Distance to the advected jump, wrapped into the periodic domain.
    double xi = grid.center(i) - x0 - a * result.t_final;
    xi -= length * std::round(xi / length);
    const double xi_hat = xi / c.scales.xi0;
    if (std::abs(xi_hat) > window) continue;
    const double exact = c.scales.orientation * utilde(c.scales.orientation * xi_hat, c.scales.d_hat);
    c.max_error = std::max(c.max_error, std::abs(result.final_[i][0] - exact));
    ++c.cells_compared;
  }
  return c;
}

}  // namespace hllxw
