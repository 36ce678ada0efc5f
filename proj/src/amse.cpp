#include "svstmx/amse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svstmx/mp_moments.hpp"

namespace svstmx {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_rho(double rho) {
  if (!(rho >= 0.0) || rho > 1.0) {
    throw std::invalid_argument("rho must lie in [0, 1]");
  }
}

// P(L^2; 1) - 2 L P(L^2; 1/2) + L^2 P(L^2; 0) = int (sqrt(t) - L)^2 dP,
// clamped at 0 against rounding.
double moment_combo(double Lambda, const MpParams& mp) {
  const double x = Lambda * Lambda;
  const double p1 = mp_incomplete_moment(x, 1.0, mp);
  const double ph = mp_incomplete_moment(x, 0.5, mp);
  const double p0 = mp_incomplete_moment(x, 0.0, mp);
  return std::max(p1 - 2.0 * Lambda * ph + Lambda * Lambda * p0, 0.0);
}

double worst_case_amse_impl(double Lambda, double rho, double rho_tilde,
                            double alpha, double gamma) {
  if (!(Lambda >= 0.0)) {
    throw std::invalid_argument("worst_case_amse: Lambda must be >= 0");
  }
  const double base = rho + rho_tilde - rho * rho_tilde;
  const double coef = alpha * (1.0 - rho) * (1.0 - rho_tilde);
  double bracket = rho * Lambda * Lambda * (1.0 - rho_tilde);
  if (coef > 0.0 && gamma > 0.0) {
    bracket += coef * moment_combo(Lambda, MpParams(gamma));
  }
  return base + bracket;
}

}  // namespace

MatrixClass MatrixClass::mat(double beta) {
  if (!(beta > 0.0) || beta > 1.0) {
    throw std::invalid_argument("MatrixClass: beta must lie in (0, 1]");
  }
  return {MatrixKind::Mat, beta};
}

MatrixClass MatrixClass::sym() { return {MatrixKind::Sym, 1.0}; }

double gamma_of(double rho, double rho_tilde) {
  if (!(rho > 0.0) || rho > 1.0) {
    throw std::invalid_argument("gamma_of: rho must lie in (0, 1]");
  }
  if (rho == 1.0) return 0.0;
  return rho_tilde * (1.0 - rho) / (rho * (1.0 - rho_tilde));
}

double gamma_of(const MatrixClass& cls, double rho) {
  check_rho(rho);
  if (rho == 1.0) return 0.0;
  if (cls.kind == MatrixKind::Sym) return 1.0;
  return cls.beta * (1.0 - rho) / (1.0 - cls.beta * rho);
}

double worst_case_amse(double Lambda, double rho, const MatrixClass& cls) {
  check_rho(rho);
  return worst_case_amse_impl(Lambda, rho, cls.rho_tilde(rho), cls.alpha(),
                              gamma_of(cls, rho));
}

double worst_case_amse(double Lambda, double rho, double rho_tilde,
                       double alpha) {
  check_rho(rho);
  const double gamma = rho > 0.0 ? gamma_of(rho, rho_tilde) : 0.0;
  return worst_case_amse_impl(Lambda, rho, rho_tilde, alpha, gamma);
}

double minimax_threshold(const MatrixClass& cls, double rho) {
  check_rho(rho);
  if (rho == 0.0) return 1.0 + std::sqrt(cls.beta);
  if (rho == 1.0) return 0.0;
  const double alpha = cls.alpha();
  const MpParams mp(gamma_of(cls, rho));
  const double rhs_slope = rho / (alpha * (1.0 - rho));
  const auto g = [&](double L) {
    const double x = L * L;
    return mp_incomplete_moment(x, 0.5, mp) -
           L * mp_incomplete_moment(x, 0.0, mp) - L * rhs_slope;
  };
  double lo = 0.0;
  double hi = std::sqrt(mp.gamma_plus);
  // g(0) = P(0; 1/2) > 0 and g(sqrt(gamma_plus)) < 0; g is decreasing.
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double minimax_threshold_square(double rho, double alpha) {
  if (alpha != 0.5 && alpha != 1.0) {
    throw std::invalid_argument(
        "minimax_threshold_square: alpha must be 1/2 or 1");
  }
  check_rho(rho);
  if (rho == 0.0) return 2.0;
  if (rho == 1.0) return 0.0;
  const double rhs =
      kPi * (1.0 + rho / alpha - rho) / (2.0 * (1.0 - rho));
  const auto lhs = [](double th) {
    const double c = std::cos(th);
    return th + (c / std::sin(th)) * (1.0 - c * c / 3.0);
  };
  double lo = 1e-12;  // lhs -> infinity as theta -> 0+
  double hi = 0.5 * kPi;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lhs(mid) > rhs ? lo : hi) = mid;
  }
  return 2.0 * std::sin(0.5 * (lo + hi));
}

AmsePoint minimax_amse(const MatrixClass& cls, double rho) {
  check_rho(rho);
  AmsePoint pt;
  pt.rho = rho;
  pt.cls = cls;
  pt.gamma = gamma_of(cls, rho);
  const double rho_tilde = cls.rho_tilde(rho);
  if (rho == 0.0) {
    pt.lambda_star = 1.0 + std::sqrt(cls.beta);
    pt.amse = 0.0;
  } else if (rho == 1.0) {
    pt.lambda_star = 0.0;
    pt.amse = 1.0;
  } else {
    pt.lambda_star = minimax_threshold(cls, rho);
    pt.amse = worst_case_amse(pt.lambda_star, rho, cls);
  }
  pt.tuning_scale = std::sqrt(1.0 - rho_tilde) * pt.lambda_star;
  return pt;
}

std::vector<ParametricPoint> parametric_curve(const MatrixClass& cls,
                                              std::span<const double> thetas) {
  if (cls.beta != 1.0) {
    throw std::invalid_argument("parametric_curve: requires beta = 1");
  }
  double prev = 0.0;
  for (double th : thetas) {
    if (!(th > 0.0) || !(th < 0.5 * kPi)) {
      throw std::invalid_argument(
          "parametric_curve: theta must lie strictly inside (0, pi/2)");
    }
    if (th <= prev) {
      throw std::invalid_argument(
          "parametric_curve: theta grid must be strictly increasing");
    }
    prev = th;
  }
  std::vector<ParametricPoint> out;
  out.reserve(thetas.size());
  const bool sym = cls.kind == MatrixKind::Sym;
  for (double th : thetas) {
    const double c = std::cos(th);
    const double s = std::sin(th);
    const double big_t = th + (c / s) * (1.0 - c * c / 3.0);
    const double rho = sym ? (big_t - 0.5 * kPi) / (big_t + 0.5 * kPi)
                           : 1.0 - (0.5 * kPi) / big_t;
    const double bracket = (kPi - 2.0 * th) * (1.25 - c * c) +
                           std::sin(2.0 * th) / 12.0 *
                               (std::cos(2.0 * th) - 14.0);
    const double coef = (sym ? 2.0 : 4.0) / kPi;
    const double one_m = 1.0 - rho;
    const double amse = 2.0 * rho - rho * rho +
                        4.0 * rho * one_m * s * s +
                        coef * one_m * one_m * bracket;
    out.push_back({th, rho, amse});
  }
  return out;
}

double small_rho_slope(const MatrixClass& cls) {
  if (cls.kind == MatrixKind::Sym) return 6.0;
  return 2.0 * (1.0 + std::sqrt(cls.beta) + cls.beta);
}

double global_lower_bound(double rho, const MatrixClass& cls) {
  check_rho(rho);
  const double rho_tilde = cls.rho_tilde(rho);
  return rho + rho_tilde - rho * rho_tilde;
}

double global_lower_bound(int r, int m, int n) {
  const double rd = r;
  const double md = m;
  const double nd = n;
  return rd / md + rd / nd - (rd * rd + rd) / (md * nd);
}

double amse_ratio_bound(double beta) {
  return 2.0 * (1.0 + std::sqrt(beta) / (1.0 + beta));
}

double phase_transition_delta(double rho, double beta) {
  return minimax_amse(MatrixClass::mat(beta), rho).amse;
}

CurveTable tabulate_curve(const MatrixClass& cls, std::span<const double> rhos,
                          std::string grid_desc) {
  double prev = -1.0;
  for (double r : rhos) {
    if (r <= prev) {
      throw std::invalid_argument(
          "tabulate_curve: rho grid must be strictly increasing");
    }
    prev = r;
  }
  CurveTable table;
  table.cls = cls;
  table.grid_desc = std::move(grid_desc);
  table.rows.reserve(rhos.size());
  for (double rho : rhos) {
    const AmsePoint pt = minimax_amse(cls, rho);
    table.rows.push_back({rho, pt.gamma, pt.lambda_star, pt.amse,
                          pt.tuning_scale, global_lower_bound(rho, cls)});
  }
  return table;
}

std::vector<double> default_rho_grid() {
  std::vector<double> grid;
  // geometric refinement 1e-4 .. 1e-2 (four points per decade)
  for (double r = 1e-4; r < 0.01 * (1.0 - 1e-12); r *= std::pow(10.0, 0.25)) {
    grid.push_back(r);
  }
  for (int i = 0; i <= 100; ++i) grid.push_back(0.01 * i);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace svstmx
