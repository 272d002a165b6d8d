#pragma once

// Scalar dissipation functions d(nu) of the classical and hybrid solvers and
// the coefficient algebra of the HLLX / HLLomega / HLLXomega family.
//
// All functions take Courant numbers. A bracket narrower than
// kDegenerateWidth raises DegenerateBracket; flux code falls back to
// upwinding in that case.

#include "hllxw/core.hpp"

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace hllxw {

inline constexpr double kDegenerateWidth = 1e-12;

class DegenerateBracket : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Blend weight between upwind (0) and Lax-Wendroff (1) dissipation.
class OmegaParam {
 public:
  explicit OmegaParam(double omega);

  double value() const noexcept { return omega_; }

  friend bool operator==(const OmegaParam&, const OmegaParam&) = default;

 private:
  double omega_;
};

enum class ClassicKind { LF, LLF, HLL, LW, UP, FORCE, MUSTA1 };

struct HllxCoeffs {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha = 0.0;
};

struct HllOmegaCoeffs {
  double b0 = 0.0;
  double b1 = 0.0;
};

struct HllxOmegaCoeffs {
  double beta = 0.0;
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
};

struct RegionReport {
  bool monotone = true;
  bool l2_stable = true;
  /// max over samples of |nu| - d(nu), clipped at zero
  double max_violation = 0.0;
  /// max over samples of nu^2 - d(nu), clipped at zero
  double max_l2_violation = 0.0;
};

using DissipationFn = std::function<double(double)>;

/// Throws DegenerateBracket when nu_max - nu_min < kDegenerateWidth.
void require_nondegenerate(const WaveBracket& bracket);

double d_classic(ClassicKind kind, double nu, const WaveBracket& bracket);

double alpha_coeff(const WaveBracket& bracket);
HllxCoeffs hllx_coeffs(const WaveBracket& bracket);

/// d_HLL(nu) + alpha (nu - nu_min)(nu - nu_max)
double d_hllx(double nu, const WaveBracket& bracket);
/// alpha0 d_LF + alpha1 d_HLL + alpha2 d_LW
double d_hllx_weighted(double nu, const WaveBracket& bracket);

HllOmegaCoeffs hllomega_coeffs(const WaveBracket& bracket, OmegaParam omega);
double d_hllomega(double nu, const WaveBracket& bracket, OmegaParam omega);

HllxOmegaCoeffs beta_coeffs(const WaveBracket& bracket, OmegaParam omega);
/// d_HLLomega(nu) + beta (nu - nu_min)(nu - nu_max)
double d_hllxomega(double nu, const WaveBracket& bracket, OmegaParam omega);
/// beta0 d_LF + beta1 d_HLLomega + beta2 d_LW
double d_hllxomega_weighted(double nu, const WaveBracket& bracket, OmegaParam omega);

/// omega nu^2 + (1 - omega)|nu|
double d_omega(double nu, OmegaParam omega);
/// Derivative of d_omega; uses sign(0) = 0.
double d_omega_slope(double nu, OmegaParam omega);

/// Courant number of largest magnitude in the bracket (nu_max on ties).
double dominant_courant(const WaveBracket& bracket);

/// Samples d on a uniform grid over [nu_min, nu_max] and compares it with the
/// monotonicity bound |nu| and the L2 bound nu^2.
RegionReport region_check(const DissipationFn& d, const WaveBracket& bracket, int samples);

/// Smallest |nu| in [0, nu_hi] beyond which d(nu) < |nu| - tol, found by a
/// sampled scan and refined by bisection. Empty if d stays monotone.
std::optional<double> monotonicity_threshold(const DissipationFn& d, double nu_hi, int samples = 2001,
                                             double tol = 1e-12);

/// Writes "nu,d" rows, 17 significant digits.
void write_dissipation_csv(std::ostream& out, const DissipationFn& d, double nu_lo, double nu_hi, int samples);

}  // namespace hllxw
