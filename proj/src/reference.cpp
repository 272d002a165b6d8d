#include "hllxw/reference.hpp"

#include "hllxw/models.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hllxw {

namespace {

constexpr double kResidualTol = 1e-12;
constexpr int kMaxNewton = 100;

}  // namespace

// Toro's pressure function for one side: f_K(p) and its derivative.
double ExactSodSolution::pressure_function(double p, const EulerPrim& s, double c, double* derivative) const {
  const double g = gamma_;
  if (p > s.p) {
    const double a = 2.0 / ((g + 1.0) * s.rho);
    const double b = (g - 1.0) / (g + 1.0) * s.p;
    const double root = std::sqrt(a / (p + b));
    *derivative = root * (1.0 - 0.5 * (p - s.p) / (b + p));
    return (p - s.p) * root;
  }
  const double ratio = p / s.p;
  *derivative = std::pow(ratio, -0.5 * (g + 1.0) / g) / (s.rho * c);
  return 2.0 * c / (g - 1.0) * (std::pow(ratio, 0.5 * (g - 1.0) / g) - 1.0);
}

ExactSodSolution::ExactSodSolution(double gamma, const EulerPrim& left, const EulerPrim& right)
    : gamma_(gamma), left_(left), right_(right) {
  if (!(gamma > 1.0)) throw ContractViolation("sod_exact: gamma > 1 required");
  for (const EulerPrim* s : {&left, &right}) {
    if (!(s->rho > 0.0) || !(s->p > 0.0) || !std::isfinite(s->v)) {
      throw ContractViolation("sod_exact: states need rho > 0, p > 0");
    }
  }
  const double g = gamma;
  c_l_ = std::sqrt(g * left.p / left.rho);
  c_r_ = std::sqrt(g * right.p / right.rho);
  const double du = right.v - left.v;
  if (2.0 / (g - 1.0) * (c_l_ + c_r_) <= du) {
    throw VacuumError("sod_exact: data generate vacuum");
  }

  auto residual = [&](double p, double* dfdp) {
    double dl = 0.0;
    double dr = 0.0;
    const double f = pressure_function(p, left_, c_l_, &dl) + pressure_function(p, right_, c_r_, &dr) + du;
    *dfdp = dl + dr;
    return f;
  };

  // Bracket: f is increasing in p, f(0+) < 0 when no vacuum.
  double lo = 0.0;
  double hi = std::max(left.p, right.p);
  double dummy = 0.0;
  while (residual(hi, &dummy) < 0.0) hi *= 2.0;

  // Primitive-variable guess, clipped into the bracket.
  const double p_pv = 0.5 * (left.p + right.p) - 0.125 * du * (left.rho + right.rho) * (c_l_ + c_r_);
  double p = std::clamp(p_pv, 1e-6 * hi, hi);

  bool converged = false;
  for (iterations_ = 0; iterations_ < kMaxNewton; ++iterations_) {
    double dfdp = 0.0;
    const double f = residual(p, &dfdp);
    if (std::abs(f) <= kResidualTol) {
      converged = true;
      break;
    }
    (f < 0.0 ? lo : hi) = p;
    double next = p - f / dfdp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == p) {
      converged = true;
      break;
    }
    p = next;
  }
  if (!converged) {
    used_bisection_ = true;
    for (int it = 0; it < 200; ++it) {
      p = 0.5 * (lo + hi);
      double dfdp = 0.0;
      const double f = residual(p, &dfdp);
      if (std::abs(f) <= kResidualTol || hi - lo <= 1e-15 * hi) break;
      (f < 0.0 ? lo : hi) = p;
    }
  }
  p_star_ = p;
  double dl = 0.0;
  double dr = 0.0;
  const double fl = pressure_function(p, left_, c_l_, &dl);
  const double fr = pressure_function(p, right_, c_r_, &dr);
  u_star_ = 0.5 * (left.v + right.v) + 0.5 * (fr - fl);

  const double gm = (g - 1.0) / (g + 1.0);
  if (left_shock()) {
    const double ratio = p_star_ / left.p;
    rho_star_l_ = left.rho * (ratio + gm) / (gm * ratio + 1.0);
    left_head_ = left_tail_ =
        left.v - c_l_ * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
  } else {
    rho_star_l_ = left.rho * std::pow(p_star_ / left.p, 1.0 / g);
    left_head_ = left.v - c_l_;
    left_tail_ = u_star_ - c_l_ * std::pow(p_star_ / left.p, 0.5 * (g - 1.0) / g);
  }
  if (right_shock()) {
    const double ratio = p_star_ / right.p;
    rho_star_r_ = right.rho * (ratio + gm) / (gm * ratio + 1.0);
    right_head_ = right_tail_ =
        right.v + c_r_ * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
  } else {
    rho_star_r_ = right.rho * std::pow(p_star_ / right.p, 1.0 / g);
    right_head_ = right.v + c_r_;
    right_tail_ = u_star_ + c_r_ * std::pow(p_star_ / right.p, 0.5 * (g - 1.0) / g);
  }
}

EulerPrim ExactSodSolution::sample(double s) const {
  const double g = gamma_;
  if (s <= u_star_) {
    if (s <= left_head_) return left_;
    if (s >= left_tail_) return {rho_star_l_, u_star_, p_star_};
    // Inside the left rarefaction fan.
    const double c = 2.0 / (g + 1.0) * (c_l_ + 0.5 * (g - 1.0) * (left_.v - s));
    const double factor = std::pow(c / c_l_, 2.0 / (g - 1.0));
    return {left_.rho * factor, 2.0 / (g + 1.0) * (c_l_ + 0.5 * (g - 1.0) * left_.v + s),
            left_.p * std::pow(c / c_l_, 2.0 * g / (g - 1.0))};
  }
  if (s >= right_head_) return right_;
  if (s <= right_tail_) return {rho_star_r_, u_star_, p_star_};
  const double c = 2.0 / (g + 1.0) * (c_r_ - 0.5 * (g - 1.0) * (right_.v - s));
  const double factor = std::pow(c / c_r_, 2.0 / (g - 1.0));
  return {right_.rho * factor, 2.0 / (g + 1.0) * (-c_r_ + 0.5 * (g - 1.0) * right_.v + s),
          right_.p * std::pow(c / c_r_, 2.0 * g / (g - 1.0))};
}

EulerPrim sod_exact(double gamma, const EulerPrim& left, const EulerPrim& right, double x_over_t) {
  return ExactSodSolution(gamma, left, right).sample(x_over_t);
}

CellStates exact_cell_averages(const ExactSodSolution& solution, const Grid1D& grid, double x0, double t) {
  if (!(t > 0.0)) throw ContractViolation("exact_cell_averages: t > 0 required");
  const EulerModel model(solution.gamma());
  using Gauss = boost::math::quadrature::gauss<double, 16>;
  // The solution is smooth between wave fronts; split cells there.
  std::vector<double> fronts;
  for (double s : {solution.left_head(), solution.left_tail(), solution.contact(), solution.right_tail(),
                   solution.right_head()}) {
    fronts.push_back(x0 + s * t);
  }
  std::sort(fronts.begin(), fronts.end());
  auto conserved = [&](double x) {
    const EulerPrim w = solution.sample((x - x0) / t);
    StateVec prim(3);
    prim << w.rho, w.v, w.p;
    return model.from_primitive(prim);
  };
  CellStates cells(grid.n_cells());
  for (int i = 0; i < grid.n_cells(); ++i) {
    const double a = grid.interface(i);
    const double b = grid.interface(i + 1);
    std::vector<double> edges{a};
    for (double f : fronts) {
      if (f > a && f < b) edges.push_back(f);
    }
    edges.push_back(b);
    StateVec sum = StateVec::Zero(3);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      for (int c = 0; c < 3; ++c) {
        sum[c] += Gauss::integrate([&](double x) { return conserved(x)[c]; }, edges[k], edges[k + 1]);
      }
    }
    cells[i] = sum / (b - a);
  }
  return cells;
}

CellStates fine_reference(const CaseConfig& config, int n_ref, const FluxScheme& scheme) {
  if (n_ref < config.n_cells || n_ref % config.n_cells != 0) {
    throw ContractViolation("fine_reference: n_ref must be a multiple of n_cells");
  }
  CaseConfig fine = config;
  fine.n_cells = n_ref;
  fine.scheme = scheme;
  fine.snapshot_times.clear();
  return run(fine).final_;
}

CellStates restrict_cells(const CellStates& fine, int n_coarse) {
  const int n_fine = static_cast<int>(fine.size());
  if (n_coarse < 1 || n_fine % n_coarse != 0) {
    throw ContractViolation("restrict_cells: fine cell count must be a multiple of the coarse count");
  }
  const int factor = n_fine / n_coarse;
  CellStates coarse(n_coarse);
  for (int i = 0; i < n_coarse; ++i) {
    StateVec sum = StateVec::Zero(fine.front().size());
    for (int k = 0; k < factor; ++k) sum += fine[i * factor + k];
    coarse[i] = sum / factor;
  }
  return coarse;
}

std::vector<double> extract_variable(const CellStates& cells, const Model& model, std::string_view name) {
  const auto names = model.variable_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw ContractViolation("unknown variable '" + std::string(name) + "' for model " + std::string(model.id()));
  }
  const auto index = static_cast<Eigen::Index>(it - names.begin());
  std::vector<double> out;
  out.reserve(cells.size());
  for (const auto& u : cells) out.push_back(model.to_primitive(u)[index]);
  return out;
}

double error_norm(const std::vector<double>& solution, const std::vector<double>& reference, double dx, int p) {
  if (solution.size() != reference.size()) {
    std::ostringstream msg;
    msg << "error_norm: grid mismatch " << solution.size() << " vs " << reference.size() << " cells";
    throw ContractViolation(msg.str());
  }
  if (p != 1 && p != 2) throw ContractViolation("error_norm: p must be 1 or 2");
  if (!(dx > 0.0)) throw ContractViolation("error_norm: dx must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < solution.size(); ++i) {
    const double d = std::abs(solution[i] - reference[i]);
    sum += (p == 1 ? d : d * d) * dx;
  }
  return p == 1 ? sum : std::sqrt(sum);
}

void write_profile_csv(std::ostream& out, const Grid1D& grid, const CellStates& cells, const Model& model,
                       const std::vector<std::string>& variables) {
  const auto names = model.variable_names();
  std::vector<Eigen::Index> columns;
  if (variables.empty()) {
    for (std::size_t k = 0; k < names.size(); ++k) columns.push_back(static_cast<Eigen::Index>(k));
  } else {
    for (const auto& v : variables) {
      const auto it = std::find(names.begin(), names.end(), v);
      if (it == names.end()) throw ContractViolation("unknown variable '" + v + "'");
      columns.push_back(static_cast<Eigen::Index>(it - names.begin()));
    }
  }
  out << "x";
  for (auto c : columns) out << ',' << names[c];
  out << '\n' << std::setprecision(17);
  for (int i = 0; i < grid.n_cells(); ++i) {
    const StateVec w = model.to_primitive(cells[i]);
    out << grid.center(i);
    for (auto c : columns) out << ',' << w[c];
    out << '\n';
  }
}

}  // namespace hllxw
