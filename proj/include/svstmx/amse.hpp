#pragma once

#include <span>
#include <string>
#include <vector>

namespace svstmx {

enum class MatrixKind { Mat, Sym };

// Which minimax problem: general rectangular matrices with aspect ratio
// beta = m/n in (0, 1], or symmetric positive-semidefinite (square,
// alpha = 1/2). Sym behaves as the square case beta = 1 throughout.
struct MatrixClass {
  MatrixKind kind = MatrixKind::Mat;
  double beta = 1.0;

  static MatrixClass mat(double beta);
  static MatrixClass sym();

  double alpha() const { return kind == MatrixKind::Sym ? 0.5 : 1.0; }
  double rho_tilde(double rho) const {
    return kind == MatrixKind::Sym ? rho : beta * rho;
  }
  const char* name() const { return kind == MatrixKind::Sym ? "sym" : "mat"; }
};

// One solved point of the minimax problem.
struct AmsePoint {
  double rho;
  MatrixClass cls;
  double gamma;         // MP aspect parameter gamma(rho)
  double lambda_star;   // minimax threshold on the Lambda scale
  double amse;          // minimax AMSE, in [0, 1]
  double tuning_scale;  // sqrt(1 - rho_tilde) * lambda_star = lim lambda*/sqrt(n)
};

struct CurveRow {
  double rho;
  double gamma;
  double lambda_star;
  double amse;
  double tuning_scale;
  double lower_bound;  // global-minimax lower bound at this rho
};

struct CurveTable {
  MatrixClass cls;
  std::vector<CurveRow> rows;
  std::string grid_desc;
};

struct ParametricPoint {
  double theta;
  double rho;
  double amse;
};

// gamma(rho, rho_tilde) = rho_tilde (1 - rho) / (rho (1 - rho_tilde)),
// for rho in (0, 1]; returns 0 at rho = 1.
double gamma_of(double rho, double rho_tilde);

// Continuous extension over the class: beta (1 - rho) / (1 - beta rho)
// for Mat (so gamma(0) = beta and gamma(1) = 0); identically 1 for Sym on
// rho < 1, 0 at rho = 1.
double gamma_of(const MatrixClass& cls, double rho);

// Asymptotic worst-case MSE of SVST at threshold Lambda:
//   M(Lambda; rho, rho_tilde, alpha) = rho + rho_tilde - rho rho_tilde
//     + (1 - rho_tilde) [ rho Lambda^2
//       + alpha (1 - rho) (P(L^2;1) - 2 L P(L^2;1/2) + L^2 P(L^2;0)) ]
// Moment terms vanish for Lambda >= sqrt(gamma_plus); Lambda < 0 rejected.
double worst_case_amse(double Lambda, double rho, const MatrixClass& cls);
// Raw overload for rho in (0, 1]; gamma comes from gamma_of(rho, rho_tilde).
double worst_case_amse(double Lambda, double rho, double rho_tilde,
                       double alpha);

// The unique minimizer Lambda*(rho) of the worst-case AMSE: root of
//   P_gamma(L^2; 1/2) - L P_gamma(L^2; 0) = L rho / (alpha (1 - rho))
// found by bisection (interval width <= 1e-12). Endpoints short-circuit:
// rho = 0 -> 1 + sqrt(beta), rho = 1 -> 0.
double minimax_threshold(const MatrixClass& cls, double rho);

// Square-case (beta = 1) solver: Lambda* = 2 sin(theta) where theta in
// [0, pi/2] solves theta + cot(theta)(1 - cos^2(theta)/3)
//   = pi (1 + rho/alpha - rho) / (2 (1 - rho)),
// by bisection to 1e-14. alpha must be 1/2 or 1.
double minimax_threshold_square(double rho, double alpha);

AmsePoint minimax_amse(const MatrixClass& cls, double rho);

// Parametric representation of the square-case minimax curves: for theta
// in (0, pi/2), with T = theta + cot(theta)(1 - cos^2(theta)/3) and
// B = (pi - 2 theta)(5/4 - cos^2 theta) + sin(2 theta)(cos(2 theta) - 14)/12,
//   Mat: rho = 1 - (pi/2)/T,           M = base + (4/pi)(1-rho)^2 B
//   Sym: rho = (T - pi/2)/(T + pi/2),  M = base + (2/pi)(1-rho)^2 B
// where base = 2 rho - rho^2 + 4 rho (1-rho) sin^2(theta).
// Requires beta = 1; theta grid strictly increasing inside (0, pi/2).
std::vector<ParametricPoint> parametric_curve(const MatrixClass& cls,
                                              std::span<const double> thetas);

// First-order slope of the minimax AMSE at rho = 0:
// 2 (1 + sqrt(beta) + beta) for Mat, 6 for Sym.
double small_rho_slope(const MatrixClass& cls);

// Lower bound on the asymptotic global minimax MSE over all denoisers:
// rho + rho_tilde - rho rho_tilde.
double global_lower_bound(double rho, const MatrixClass& cls);
// Finite-n variant: r/m + r/n - (r^2 + r)/(m n).
double global_lower_bound(int r, int m, int n);

// Upper bound on minimax AMSE / lower bound: 2 (1 + sqrt(beta)/(1+beta)),
// attained in the limit rho -> 0.
double amse_ratio_bound(double beta);

// Critical sampling rate for nuclear-norm recovery from Gaussian
// measurements; coincides with the minimax AMSE.
double phase_transition_delta(double rho, double beta);

// Tabulates (rho, gamma, Lambda*, M, tuning scale, lower bound) rows over
// a rho grid, sorted strictly increasing.
CurveTable tabulate_curve(const MatrixClass& cls, std::span<const double> rhos,
                          std::string grid_desc = {});

// Default grid: 0 to 1 step 0.01 plus geometric refinement 1e-4 .. 1e-2.
std::vector<double> default_rho_grid();

}  // namespace svstmx
