#include "svstmx/svst.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace svstmx {

namespace {

void check_finite(const Eigen::MatrixXd& Y) {
  if (!Y.allFinite()) {
    throw std::invalid_argument("matrix has nonfinite entries");
  }
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("lambda must be >= 0");
  }
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& Y) {
  if (Y.rows() != Y.cols()) {
    throw std::invalid_argument("Sym denoiser requires a square matrix");
  }
  return 0.5 * (Y + Y.transpose());
}

// Shared eigen-thresholding path; f maps an eigenvalue to its shrunk value.
template <typename F>
Eigen::MatrixXd eigen_threshold(const Eigen::MatrixXd& S, F&& f) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(d(i));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::MatrixXd svst_denoise(const Eigen::MatrixXd& Y, double lambda) {
  check_finite(Y);
  check_lambda(lambda);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      Y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    s(i) = std::max(s(i) - lambda, 0.0);
  }
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

Eigen::MatrixXd svst_denoise(const Eigen::MatrixXd& Y, double lambda,
                             const MatrixClass& cls) {
  if (cls.kind == MatrixKind::Mat) return svst_denoise(Y, lambda);
  check_finite(Y);
  check_lambda(lambda);
  return eigen_threshold(symmetrize(Y), [lambda](double e) {
    const double mag = std::max(std::abs(e) - lambda, 0.0);
    return e < 0.0 ? -mag : mag;
  });
}

Eigen::MatrixXd psd_denoise(const Eigen::MatrixXd& Y, double lambda) {
  check_finite(Y);
  check_lambda(lambda);
  return eigen_threshold(symmetrize(Y), [lambda](double e) {
    return std::max(e - lambda, 0.0);
  });
}

double sure_svst(const Eigen::MatrixXd& Y, double lambda) {
  check_finite(Y);
  check_lambda(lambda);
  const Eigen::Index m = std::min(Y.rows(), Y.cols());
  const Eigen::Index n = std::max(Y.rows(), Y.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(Y);
  const Eigen::VectorXd y = svd.singularValues();

  const double top = y(0);
  const double gap_floor = 1e-10 * top * top;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (y(i) <= 0.0) throw DegenerateSpectrumError("zero singular value");
    if (i + 1 < m && y(i) * y(i) - y(i + 1) * y(i + 1) < gap_floor) {
      throw DegenerateSpectrumError("near-tied singular values");
    }
  }

  double fit = 0.0;
  double div = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double yi = y(i);
    const double clipped = std::min(yi, lambda);
    fit += clipped * clipped;
    if (yi > lambda) div += 1.0;
    div += static_cast<double>(n - m) * (1.0 - clipped / yi);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const double num = y(i) * std::max(y(i) - lambda, 0.0);
    if (num == 0.0) continue;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == i) continue;
      div += 2.0 * num / (y(i) * y(i) - y(j) * y(j));
    }
  }
  return -static_cast<double>(m) + fit +
         2.0 / static_cast<double>(n) * div;
}

double sure_psd(const Eigen::MatrixXd& Y, double lambda) {
  check_finite(Y);
  check_lambda(lambda);
  const Eigen::MatrixXd S = symmetrize(Y);
  const Eigen::Index n = S.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd e = es.eigenvalues();

  const double scale = std::max(std::abs(e(0)), std::abs(e(n - 1)));
  const double gap_floor = 1e-10 * scale;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (e(i + 1) - e(i) < gap_floor) {
      throw DegenerateSpectrumError("near-tied eigenvalues");
    }
  }

  double fit = 0.0;
  double div = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double clipped = std::min(e(i), lambda);
    fit += clipped * clipped;
    if (e(i) > lambda) div += 1.0;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double fi = std::max(e(i) - lambda, 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double fj = std::max(e(j) - lambda, 0.0);
      if (fi == fj) continue;
      div += (fi - fj) / (e(i) - e(j));
    }
  }
  return fit - static_cast<double>(n + 1) +
         4.0 / static_cast<double>(n) * div;
}

Eigen::MatrixXd least_favorable_matrix(const FiniteProblem& prob, double mu) {
  prob.validate();
  if (!(mu >= 0.0)) {
    throw std::invalid_argument("least_favorable_matrix: mu must be >= 0");
  }
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(prob.m, prob.n);
  for (int i = 0; i < prob.r; ++i) x(i, i) = mu;
  return x;
}

}  // namespace svstmx
