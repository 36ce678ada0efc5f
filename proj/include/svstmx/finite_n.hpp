#pragma once

#include <cstdint>
#include <vector>

#include "svstmx/amse.hpp"

namespace svstmx {

// A finite-size instance for the finite-n worst-case MSE formula.
// Requires 1 <= r <= m <= n; Sym requires m = n.
struct FiniteProblem {
  int r;
  int m;
  int n;
  MatrixClass cls;

  void validate() const;
  double alpha() const { return cls.alpha(); }
};

struct WishartMomentEstimate {
  double lambda;
  double value;      // estimate of sum_i w_i(Lambda; m, n)
  double std_error;
  int trials;
  std::uint64_t seed;
};

// Which spectral ensemble the Monte Carlo draws from. Wishart: singular
// values of an i.i.d. N(0,1) matrix Z/sqrt(n). Wigner: absolute
// eigenvalues of (Z + Z')/sqrt(2)/sqrt(n), the symmetric-noise analogue
// with the same bulk (requires m = n).
enum class SpectralEnsemble { Wishart, Wigner };

// Monte Carlo estimate of sum_{i=1}^{m} w_i(Lambda; m, n), the combined
// complementary incomplete moments of the ordered eigenvalues: per trial,
// accumulate sum_i (s_i - Lambda)_+^2 over the trial's spectrum.
// Deterministic given seed; trials are independent substreams.
WishartMomentEstimate wishart_moment_sum(
    double Lambda, int m, int n, int trials, std::uint64_t seed,
    SpectralEnsemble ensemble = SpectralEnsemble::Wishart);

// Finite-n worst-case MSE of SVST:
//   MSE_n(Lambda; r, m, alpha) = r/m + r/n - r^2/(mn)
//     + (r (n-r)/(mn)) Lambda^2
//     + alpha ((n-r)/(mn)) sum_{i=1}^{m-r} w_i(Lambda; m-r, n-r)
// with the moment sum estimated by Monte Carlo at the reduced size
// (empty when r = m, which is not an error).
double finite_n_mse(double Lambda, const FiniteProblem& prob, int trials,
                    std::uint64_t seed);

struct FiniteMinimax {
  double lambda_star_n;     // minimizing Lambda
  double mse;               // minimax MSE estimate
  double mse_std_error;     // Monte Carlo std error of the mse estimate
  double data_scale_lambda; // Lambda * sqrt(1 - r/n)
};

// Minimizes finite_n_mse over Lambda in [0, 1 + sqrt(m/n) + 10/sqrt(n)]
// by golden-section search with common random numbers (one spectrum set,
// reused for every Lambda probe), to Lambda-tolerance 1e-4.
FiniteMinimax finite_n_minimax(const FiniteProblem& prob, int trials,
                               std::uint64_t seed);

namespace detail {
// The per-trial reduced-size spectra behind finite_n_mse/finite_n_minimax;
// exposed for tests that need the common-random-numbers sample path.
std::vector<std::vector<double>> reduced_spectra(const FiniteProblem& prob,
                                                 int trials,
                                                 std::uint64_t seed);
}  // namespace detail

}  // namespace svstmx
