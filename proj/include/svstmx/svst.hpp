#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "svstmx/finite_n.hpp"

namespace svstmx {

// Thrown when a spectrum is too close to degenerate (tied or zero
// singular values) for the SURE divergence term; callers resample.
struct DegenerateSpectrumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Soft thresholding of the singular values: Y = U diag(y) V' maps to
// U diag((y - lambda)_+) V'. Well defined regardless of which SVD is
// chosen. Rejects nonfinite entries.
Eigen::MatrixXd svst_denoise(const Eigen::MatrixXd& Y, double lambda);

// Class-dispatched variant. Sym symmetrizes first and soft-thresholds the
// absolute eigenvalues keeping signs, U diag(sign(d)(|d|-lambda)_+) U',
// which is SVST of the symmetrized matrix.
Eigen::MatrixXd svst_denoise(const Eigen::MatrixXd& Y, double lambda,
                             const MatrixClass& cls);

// The positive-semidefinite-cone solution of nuclear-norm penalization:
// symmetrize, then U diag((d - lambda)_+) U'. This is the estimator whose
// worst-case risk the Sym minimax curves describe (negative eigenvalues
// are killed, so only the upper spectral tail of the noise leaks through).
Eigen::MatrixXd psd_denoise(const Eigen::MatrixXd& Y, double lambda);

// Stein unbiased risk estimate for SVST on m-by-n data (m <= n), noise
// scale sigma^2 = 1/n:
//   SURE = -m + sum_i min(y_i, lambda)^2
//        + (2/n) [ #{y_i > lambda}
//                  + (n - m) sum_i (1 - min(y_i, lambda)/y_i)
//                  + 2 sum_{i != j} y_i (y_i - lambda)_+ / (y_i^2 - y_j^2) ]
// Requires pairwise-distinct nonzero singular values (probability-one
// event); throws DegenerateSpectrumError otherwise. SURE/m estimates the
// risk R = (1/m) E||Xhat - X0||_F^2.
double sure_svst(const Eigen::MatrixXd& Y, double lambda);

// SURE for the PSD-cone denoiser on symmetric data with Wigner noise
// (Z + Z')/sqrt(2)/sqrt(n):
//   SURE = sum_i min(e_i, lambda)^2 - (n + 1)
//        + (4/n) [ #{e_i > lambda}
//                  + sum_{i<j} ((e_i-lambda)_+ - (e_j-lambda)_+)/(e_i - e_j) ]
// SURE/n estimates the risk. Throws DegenerateSpectrumError on (near-)tied
// eigenvalues.
double sure_psd(const Eigen::MatrixXd& Y, double lambda);

// Canonical least-favorable signal: rank-r with all nonzero singular
// values equal to mu (first r canonical directions; Sym: PSD with r unit
// eigenvalues scaled by mu).
Eigen::MatrixXd least_favorable_matrix(const FiniteProblem& prob, double mu);

}  // namespace svstmx
