#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "svstmx/rng.hpp"
#include "svstmx/svst.hpp"

using namespace svstmx;

namespace {

Eigen::MatrixXd random_orthogonal(int n, TrialRng& rng) {
  const Eigen::MatrixXd z = gaussian_matrix(n, n, rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(z).householderQ();
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  return Eigen::BDCSVD<Eigen::MatrixXd>(a).singularValues();
}

}  // namespace

TEST_CASE("full thresholding maps below-lambda matrices to zero") {
  TrialRng rng(1, 0);
  Eigen::MatrixXd y = 0.1 * gaussian_matrix(6, 9, rng);
  const double top = singular_values(y)(0);
  const Eigen::MatrixXd out = svst_denoise(y, top + 0.5);
  CHECK(out.norm() == 0.0);
}

TEST_CASE("rank-one closed form") {
  Eigen::VectorXd u(3), v(4);
  u << 1.0, 2.0, -2.0;
  v << 0.5, -0.5, 0.5, 0.5;
  u.normalize();
  v.normalize();
  const double s = 3.0;
  const Eigen::MatrixXd y = s * u * v.transpose();
  const Eigen::MatrixXd out = svst_denoise(y, 1.0);
  CHECK((out - 2.0 * u * v.transpose()).norm() <= 1e-12);
}

TEST_CASE("zero threshold is the identity (Sym: symmetrization)") {
  TrialRng rng(2, 0);
  const Eigen::MatrixXd y = gaussian_matrix(5, 7, rng);
  CHECK((svst_denoise(y, 0.0) - y).norm() <= 1e-10);

  const Eigen::MatrixXd q = gaussian_matrix(6, 6, rng);
  const Eigen::MatrixXd sym = 0.5 * (q + q.transpose());
  CHECK((svst_denoise(q, 0.0, MatrixClass::sym()) - sym).norm() <= 1e-10);
}

TEST_CASE("nonfinite input is rejected") {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(3, 3);
  y(1, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(svst_denoise(y, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(psd_denoise(y, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(svst_denoise(Eigen::MatrixXd::Ones(3, 3), -1.0),
                  std::invalid_argument);
}

TEST_CASE("orthogonal invariance") {
  for (std::uint64_t t = 0; t < 6; ++t) {
    TrialRng rng(3, t);
    const Eigen::MatrixXd y = gaussian_matrix(8, 12, rng);
    const Eigen::MatrixXd u = random_orthogonal(8, rng);
    const Eigen::MatrixXd v = random_orthogonal(12, rng);
    const Eigen::MatrixXd lhs = svst_denoise(u * y * v.transpose(), 0.6);
    const Eigen::MatrixXd rhs = u * svst_denoise(y, 0.6) * v.transpose();
    CHECK((lhs - rhs).norm() <= 1e-10);
  }
}

TEST_CASE("nonexpansiveness") {
  for (std::uint64_t t = 0; t < 8; ++t) {
    TrialRng rng(4, t);
    const Eigen::MatrixXd y1 = gaussian_matrix(7, 10, rng);
    const Eigen::MatrixXd y2 = gaussian_matrix(7, 10, rng);
    const double lam = 0.3 + 0.2 * static_cast<double>(t);
    CHECK((svst_denoise(y1, lam) - svst_denoise(y2, lam)).norm() <=
          (y1 - y2).norm() + 1e-12);

    const Eigen::MatrixXd s1 = 0.5 * (y1.topLeftCorner(7, 7) +
                                      y1.topLeftCorner(7, 7).transpose());
    const Eigen::MatrixXd s2 = 0.5 * (y2.topLeftCorner(7, 7) +
                                      y2.topLeftCorner(7, 7).transpose());
    CHECK((psd_denoise(s1, lam) - psd_denoise(s2, lam)).norm() <=
          (s1 - s2).norm() + 1e-12);
  }
}

TEST_CASE("shrinkage identity on the spectrum") {
  for (std::uint64_t t = 0; t < 6; ++t) {
    TrialRng rng(5, t);
    const Eigen::MatrixXd y = gaussian_matrix(9, 9, rng);
    const double lam = 0.5;
    const Eigen::VectorXd before = singular_values(y);
    const Eigen::VectorXd after = singular_values(svst_denoise(y, lam));
    for (int i = 0; i < 9; ++i) {
      CHECK(std::abs(after(i) - std::max(before(i) - lam, 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("sym denoiser preserves eigenvalue signs") {
  TrialRng rng(6, 0);
  const Eigen::MatrixXd z = gaussian_matrix(8, 8, rng);
  const Eigen::MatrixXd s = 0.5 * (z + z.transpose());
  const double lam = 0.4;
  const Eigen::MatrixXd out = svst_denoise(s, lam, MatrixClass::sym());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> in_es(s), out_es(out);
  for (int i = 0; i < 8; ++i) {
    const double e = in_es.eigenvalues()(i);
    const double want = (e < 0.0 ? -1.0 : 1.0) *
                        std::max(std::abs(e) - lam, 0.0);
    CHECK(out_es.eigenvalues()(i) == doctest::Approx(want).epsilon(1e-10));
  }
  // identical to plain SVST on the symmetric input
  CHECK((out - svst_denoise(s, lam)).norm() <= 1e-10);
}

TEST_CASE("psd denoiser kills negative eigenvalues") {
  TrialRng rng(7, 0);
  const Eigen::MatrixXd z = gaussian_matrix(8, 8, rng);
  const double lam = 0.4;
  const Eigen::MatrixXd out = psd_denoise(z, lam);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> in_es(
      0.5 * (z + z.transpose()));
  for (int i = 0; i < 8; ++i) {
    const double want = std::max(in_es.eigenvalues()(i) - lam, 0.0);
    CHECK(std::abs(es.eigenvalues()(i) - want) <= 1e-10);
  }
}

TEST_CASE("SURE analytic endpoints") {
  TrialRng rng(8, 0);
  const int m = 20;
  const int n = 30;
  const Eigen::MatrixXd y =
      gaussian_matrix(m, n, rng) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(sure_svst(y, 0.0) - m) <= 1e-9);
  const Eigen::VectorXd sv = singular_values(y);
  const double expect = -m + sv.squaredNorm();
  CHECK(std::abs(sure_svst(y, 1e9) - expect) <= 1e-9);

  // Sym/PSD variant: lambda -> infinity gives sum e_i^2 - (n + 1)
  const Eigen::MatrixXd w =
      wigner_matrix(n, rng) / std::sqrt(static_cast<double>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
  const double expect_sym = es.eigenvalues().squaredNorm() - (n + 1);
  CHECK(std::abs(sure_psd(w, 1e9) - expect_sym) <= 1e-9);
}

TEST_CASE("SURE rejects degenerate spectra") {
  Eigen::MatrixXd tied = Eigen::MatrixXd::Zero(4, 6);
  tied(0, 0) = tied(1, 1) = 2.0;
  tied(2, 2) = 1.0;
  tied(3, 3) = 0.5;
  CHECK_THROWS_AS(sure_svst(tied, 0.3), DegenerateSpectrumError);

  Eigen::MatrixXd with_zero = Eigen::MatrixXd::Zero(3, 3);
  with_zero(0, 0) = 1.0;
  with_zero(1, 1) = 0.5;
  CHECK_THROWS_AS(sure_svst(with_zero, 0.3), DegenerateSpectrumError);

  CHECK_THROWS_AS(sure_psd(Eigen::MatrixXd::Identity(4, 4), 0.3),
                  DegenerateSpectrumError);
}

TEST_CASE("least favorable matrix construction") {
  const FiniteProblem p1{1, 2, 3, MatrixClass::mat(2.0 / 3.0)};
  const Eigen::MatrixXd x1 = least_favorable_matrix(p1, 7.0);
  const Eigen::VectorXd s1 = singular_values(x1);
  CHECK(s1(0) == doctest::Approx(7.0));
  CHECK(s1.tail(1)(0) <= 1e-12);

  const FiniteProblem p2{4, 4, 4, MatrixClass::sym()};
  const Eigen::MatrixXd x2 = least_favorable_matrix(p2, 1.0);
  CHECK((x2 - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);

  for (std::uint64_t t = 0; t < 4; ++t) {
    TrialRng rng(9, t);
    const int r = 1 + static_cast<int>(rng.uniform() * 4);
    const int m = r + static_cast<int>(rng.uniform() * 5);
    const int n = m + static_cast<int>(rng.uniform() * 5);
    const FiniteProblem p{r, m, n,
                          MatrixClass::mat(static_cast<double>(m) / n)};
    const Eigen::MatrixXd x = least_favorable_matrix(p, 3.5);
    CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(x).rank() == r);
  }
}
