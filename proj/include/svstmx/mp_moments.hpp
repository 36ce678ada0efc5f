#pragma once

#include <stdexcept>

namespace svstmx {

// Marchenko-Pastur law with aspect parameter gamma in (0, 1], unit noise
// variance. Support is [gamma_minus, gamma_plus] with
// gamma_pm = (1 -+ sqrt(gamma))^2.
struct MpParams {
  double gamma;
  double gamma_minus;
  double gamma_plus;

  explicit MpParams(double g);
};

// Density p_gamma(t) = sqrt((gamma_plus - t)(t - gamma_minus)) /
// (2 pi gamma t), zero outside the support. Total function; for gamma = 1
// the integrable 1/sqrt(t) blow-up at t -> 0+ is the caller's to handle
// (the moment routine below integrates through it exactly).
double mp_density(double t, const MpParams& params);

// Complementary incomplete moment P_gamma(x; k) = int_x^{gamma_plus}
// t^k p_gamma(t) dt for k in {0, 1/2, 1}. Cutoffs above gamma_plus
// (including floating-point overshoot) return exactly 0. Absolute
// quadrature error <= 1e-10: the substitution
// t = gamma_minus + (gamma_plus - gamma_minus) sin^2 u removes the
// square-root endpoint behavior (and the t -> 0 corner when gamma = 1),
// leaving a smooth integrand for adaptive Gauss-Kronrod.
double mp_incomplete_moment(double x, double k, const MpParams& params);

// Complementary incomplete moments of the quarter-circle law
// (density sqrt(4 - t^2) / pi on [0, 2]), in closed form:
//   Q0(x) = 1 - x sqrt(4-x^2)/(2 pi) - (2/pi) atan(x / sqrt(4-x^2))
//   Q1(x) = (4 - x^2)^{3/2} / (3 pi)
//   Q2(x) = 1 - x sqrt(4-x^2)(x^2-2)/(4 pi) - (2/pi) asin(x/2)
// Requires k in {0, 1, 2} and x in [0, 2].
double qc_moment(int k, double x);

}  // namespace svstmx
