#include "svstmx/mp_moments.hpp"

#include <algorithm>
#include <cmath>

#include "svstmx/quadrature.hpp"

namespace svstmx {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

MpParams::MpParams(double g) : gamma(g) {
  if (!(g > 0.0) || g > 1.0) {
    throw std::invalid_argument("MpParams: gamma must lie in (0, 1]");
  }
  const double s = std::sqrt(g);
  gamma_minus = (1.0 - s) * (1.0 - s);
  gamma_plus = (1.0 + s) * (1.0 + s);
}

double mp_density(double t, const MpParams& params) {
  if (t <= params.gamma_minus || t >= params.gamma_plus) return 0.0;
  const double num =
      std::sqrt((params.gamma_plus - t) * (t - params.gamma_minus));
  return num / (2.0 * kPi * params.gamma * t);
}

double mp_incomplete_moment(double x, double k, const MpParams& params) {
  if (!(k == 0.0 || k == 0.5 || k == 1.0)) {
    throw std::invalid_argument(
        "mp_incomplete_moment: k must be one of {0, 1/2, 1}");
  }
  const double gm = params.gamma_minus;
  const double gp = params.gamma_plus;
  if (x >= gp) return 0.0;  // includes cutoffs at gamma_plus + ulp

  // t = gm + (gp - gm) sin^2 u turns t^k p(t) dt into
  // D^2 sin^2(u) cos^2(u) t^(k-1) / (pi gamma), smooth on [0, pi/2]
  // including the gamma = 1 corner where gm = 0.
  const double d = gp - gm;
  const double frac = std::clamp((x - gm) / d, 0.0, 1.0);
  const double u0 = std::asin(std::sqrt(frac));
  const double scale = d * d / (kPi * params.gamma);
  const auto integrand = [&](double u) {
    const double s = std::sin(u);
    const double c = std::cos(u);
    const double s2 = s * s;
    const double t = gm + d * s2;
    // s^2 * t^(k-1), written to stay finite as t -> 0 when gm = 0.
    double core;
    if (k == 0.0) {
      core = s2 / t;
    } else if (k == 1.0) {
      core = s2;
    } else {
      core = s2 / std::sqrt(t);
    }
    return scale * core * c * c;
  };
  const double v = integrate(integrand, u0, 0.5 * kPi, 1e-11);
  return std::max(v, 0.0);
}

double qc_moment(int k, double x) {
  if (k < 0 || k > 2) {
    throw std::invalid_argument("qc_moment: k must be one of {0, 1, 2}");
  }
  if (!(x >= 0.0) || x > 2.0) {
    throw std::invalid_argument("qc_moment: x must lie in [0, 2]");
  }
  if (x == 2.0) return 0.0;
  const double root = std::sqrt(4.0 - x * x);
  switch (k) {
    case 0:
      return 1.0 - x * root / (2.0 * kPi) - (2.0 / kPi) * std::atan(x / root);
    case 1:
      return root * root * root / (3.0 * kPi);
    default:
      return 1.0 - x * root * (x * x - 2.0) / (4.0 * kPi) -
             (2.0 / kPi) * std::asin(0.5 * x);
  }
}

}  // namespace svstmx
