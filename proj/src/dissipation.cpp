#include "hllxw/dissipation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hllxw {

namespace {

double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

double d_hll(double nu, const WaveBracket& b) {
  const double nl = b.nu_min;
  const double nr = b.nu_max;
  const double w = nr - nl;
  return (std::abs(nl) * nr - std::abs(nr) * nl) / w + (std::abs(nr) - std::abs(nl)) / w * nu;
}

}  // namespace

OmegaParam::OmegaParam(double omega) : omega_(omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    std::ostringstream msg;
    msg << "omega in [0,1] required, got " << omega;
    throw std::invalid_argument(msg.str());
  }
}

void require_nondegenerate(const WaveBracket& bracket) {
  if (!(bracket.width() >= kDegenerateWidth)) {
    std::ostringstream msg;
    msg << "degenerate wave bracket [" << bracket.nu_min << ", " << bracket.nu_max << "]";
    throw DegenerateBracket(msg.str());
  }
}

double d_classic(ClassicKind kind, double nu, const WaveBracket& bracket) {
  switch (kind) {
    case ClassicKind::LF:
      return 1.0;
    case ClassicKind::LLF:
      return std::max(std::abs(bracket.nu_min), std::abs(bracket.nu_max));
    case ClassicKind::UP:
      return std::abs(nu);
    case ClassicKind::LW:
      return nu * nu;
    case ClassicKind::FORCE:
      return 0.5 * (nu * nu + 1.0);
    case ClassicKind::MUSTA1: {
      const double nu2 = nu * nu;
      return 0.25 + nu2 - 0.25 * nu2 * nu2;
    }
    case ClassicKind::HLL:
      require_nondegenerate(bracket);
      return d_hll(nu, bracket);
  }
  throw ContractViolation("d_classic: unknown kind");
}

double alpha_coeff(const WaveBracket& bracket) {
  require_nondegenerate(bracket);
  const double w = bracket.width();
  return (w - std::abs(std::abs(bracket.nu_max) - std::abs(bracket.nu_min))) / (w * w);
}

HllxCoeffs hllx_coeffs(const WaveBracket& bracket) {
  const double a = alpha_coeff(bracket);
  return {a * std::abs(bracket.nu_min * bracket.nu_max),
          1.0 - a * (std::abs(bracket.nu_max) + std::abs(bracket.nu_min)), a, a};
}

double d_hllx(double nu, const WaveBracket& bracket) {
  const double a = alpha_coeff(bracket);
  return d_hll(nu, bracket) + a * (nu - bracket.nu_min) * (nu - bracket.nu_max);
}

double d_hllx_weighted(double nu, const WaveBracket& bracket) {
  const HllxCoeffs c = hllx_coeffs(bracket);
  return c.alpha0 * 1.0 + c.alpha1 * d_hll(nu, bracket) + c.alpha2 * nu * nu;
}

HllOmegaCoeffs hllomega_coeffs(const WaveBracket& bracket, OmegaParam omega) {
  require_nondegenerate(bracket);
  const double w = omega.value();
  const double nl = bracket.nu_min;
  const double nr = bracket.nu_max;
  const double width = nr - nl;
  const double b0 =
      (nr * (w * nl * nl + (1.0 - w) * std::abs(nl)) - nl * (w * nr * nr + (1.0 - w) * std::abs(nr))) / width;
  const double b1 = ((1.0 - w) * (std::abs(nr) - std::abs(nl)) + w * (nr * nr - nl * nl)) / width;
  return {b0, b1};
}

double d_hllomega(double nu, const WaveBracket& bracket, OmegaParam omega) {
  const HllOmegaCoeffs c = hllomega_coeffs(bracket, omega);
  return c.b0 + c.b1 * nu;
}

HllxOmegaCoeffs beta_coeffs(const WaveBracket& bracket, OmegaParam omega) {
  const HllOmegaCoeffs b = hllomega_coeffs(bracket, omega);
  const double w = omega.value();
  const double abs_sum = std::abs(bracket.nu_min) + std::abs(bracket.nu_max);
  const double blend = (1.0 - w) + w * abs_sum;
  if (!(abs_sum > 0.0) || !(blend > 0.0)) {
    throw DegenerateBracket("beta coefficients undefined for a bracket with |nu_min| + |nu_max| = 0");
  }
  const double beta = w + (1.0 - w) * alpha_coeff(bracket);
  HllxOmegaCoeffs c;
  c.beta = beta;
  c.beta0 = beta * (1.0 - w) * std::abs(bracket.nu_min * bracket.nu_max) / blend;
  c.beta1 = 1.0 - beta / ((1.0 - w) / abs_sum + w);
  c.beta2 = beta;
  c.b0 = b.b0;
  c.b1 = b.b1;
  return c;
}

double d_hllxomega(double nu, const WaveBracket& bracket, OmegaParam omega) {
  const HllOmegaCoeffs b = hllomega_coeffs(bracket, omega);
  const double w = omega.value();
  const double beta = w + (1.0 - w) * alpha_coeff(bracket);
  return b.b0 + b.b1 * nu + beta * (nu - bracket.nu_min) * (nu - bracket.nu_max);
}

double d_hllxomega_weighted(double nu, const WaveBracket& bracket, OmegaParam omega) {
  const HllxOmegaCoeffs c = beta_coeffs(bracket, omega);
  return c.beta0 * 1.0 + c.beta1 * (c.b0 + c.b1 * nu) + c.beta2 * nu * nu;
}

double d_omega(double nu, OmegaParam omega) {
  const double w = omega.value();
  return w * nu * nu + (1.0 - w) * std::abs(nu);
}

double d_omega_slope(double nu, OmegaParam omega) {
  const double w = omega.value();
  return 2.0 * w * nu + (1.0 - w) * sign(nu);
}

double dominant_courant(const WaveBracket& bracket) {
  return std::abs(bracket.nu_max) >= std::abs(bracket.nu_min) ? bracket.nu_max : bracket.nu_min;
}

RegionReport region_check(const DissipationFn& d, const WaveBracket& bracket, int samples) {
  if (samples < 2) {
    throw ContractViolation("region_check: samples >= 2 required");
  }
  constexpr double kTol = 1e-12;
  RegionReport report;
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    const double nu = bracket.nu_min + t * (bracket.nu_max - bracket.nu_min);
    const double value = d(nu);
    const double mono_gap = std::abs(nu) - value;
    const double l2_gap = nu * nu - value;
    if (mono_gap > kTol) report.monotone = false;
    if (l2_gap > kTol) report.l2_stable = false;
    report.max_violation = std::max(report.max_violation, mono_gap);
    report.max_l2_violation = std::max(report.max_l2_violation, l2_gap);
  }
  return report;
}

std::optional<double> monotonicity_threshold(const DissipationFn& d, double nu_hi, int samples, double tol) {
  auto violates = [&](double nu) { return std::abs(nu) - d(nu) > tol; };
  double prev = 0.0;
  for (int k = 1; k < samples; ++k) {
    const double nu = nu_hi * static_cast<double>(k) / (samples - 1);
    if (violates(nu)) {
      double lo = prev;
      double hi = nu;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (violates(mid) ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = nu;
  }
  return std::nullopt;
}

void write_dissipation_csv(std::ostream& out, const DissipationFn& d, double nu_lo, double nu_hi, int samples) {
  if (samples < 2) {
    throw ContractViolation("write_dissipation_csv: samples >= 2 required");
  }
  out << "nu,d\n" << std::setprecision(17);
  for (int k = 0; k < samples; ++k) {
    const double nu = nu_lo + (nu_hi - nu_lo) * static_cast<double>(k) / (samples - 1);
    out << nu << ',' << d(nu) << '\n';
  }
}

}  // namespace hllxw
