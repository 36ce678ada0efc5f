#include "svstmx/finite_n.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "svstmx/rng.hpp"

namespace svstmx {

namespace {

std::vector<double> one_spectrum(int m, int n, SpectralEnsemble ensemble,
                                 std::uint64_t seed, std::uint64_t trial) {
  TrialRng rng(seed, trial);
  std::vector<double> s(static_cast<std::size_t>(m));
  if (ensemble == SpectralEnsemble::Wishart) {
    Eigen::MatrixXd z = gaussian_matrix(m, n, rng);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(z);
    const auto& sv = svd.singularValues();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = sv(i) * scale;
  } else {
    Eigen::MatrixXd w = wigner_matrix(n, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
      s[static_cast<std::size_t>(i)] = std::abs(ev(i)) * scale;
  }
  return s;
}

double tail_sum(const std::vector<double>& spectrum, double Lambda) {
  double acc = 0.0;
  for (double s : spectrum) {
    const double d = s - Lambda;
    if (d > 0.0) acc += d * d;
  }
  return acc;
}

struct MomentSum {
  double mean;
  double std_error;
};

MomentSum moment_over(const std::vector<std::vector<double>>& spectra,
                      double Lambda) {
  double sum = 0.0;
  double sumsq = 0.0;
  for (const auto& s : spectra) {
    const double v = tail_sum(s, Lambda);
    sum += v;
    sumsq += v * v;
  }
  const double t = static_cast<double>(spectra.size());
  const double mean = sum / t;
  const double var = std::max(sumsq / t - mean * mean, 0.0);
  const double se = t > 1.0 ? std::sqrt(var / (t - 1.0)) : 0.0;
  return {mean, se};
}

}  // namespace

void FiniteProblem::validate() const {
  if (r < 1 || r > m || m > n) {
    throw std::invalid_argument("FiniteProblem: requires 1 <= r <= m <= n");
  }
  if (cls.kind == MatrixKind::Sym && m != n) {
    throw std::invalid_argument("FiniteProblem: Sym requires m = n");
  }
}

WishartMomentEstimate wishart_moment_sum(double Lambda, int m, int n,
                                         int trials, std::uint64_t seed,
                                         SpectralEnsemble ensemble) {
  if (trials < 1) {
    throw std::invalid_argument("wishart_moment_sum: trials must be >= 1");
  }
  if (m > n || m < 1) {
    throw std::invalid_argument("wishart_moment_sum: requires 1 <= m <= n");
  }
  if (ensemble == SpectralEnsemble::Wigner && m != n) {
    throw std::invalid_argument("wishart_moment_sum: Wigner requires m = n");
  }
  std::vector<std::vector<double>> spectra;
  spectra.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    spectra.push_back(
        one_spectrum(m, n, ensemble, seed, static_cast<std::uint64_t>(t)));
  }
  const MomentSum ms = moment_over(spectra, Lambda);
  return {Lambda, ms.mean, ms.std_error, trials, seed};
}

namespace detail {

std::vector<std::vector<double>> reduced_spectra(const FiniteProblem& prob,
                                                 int trials,
                                                 std::uint64_t seed) {
  prob.validate();
  if (trials < 1) {
    throw std::invalid_argument("reduced_spectra: trials must be >= 1");
  }
  std::vector<std::vector<double>> spectra;
  spectra.reserve(static_cast<std::size_t>(trials));
  const int qm = prob.m - prob.r;
  const int qn = prob.n - prob.r;
  const SpectralEnsemble ens = prob.cls.kind == MatrixKind::Sym
                                   ? SpectralEnsemble::Wigner
                                   : SpectralEnsemble::Wishart;
  for (int t = 0; t < trials; ++t) {
    if (qm == 0) {
      spectra.emplace_back();  // r = m: empty moment sum
    } else {
      spectra.push_back(
          one_spectrum(qm, qn, ens, seed, static_cast<std::uint64_t>(t)));
    }
  }
  return spectra;
}

}  // namespace detail

namespace {

double mse_from_spectra(double Lambda, const FiniteProblem& prob,
                        const std::vector<std::vector<double>>& spectra,
                        double* std_error = nullptr) {
  const double r = prob.r;
  const double m = prob.m;
  const double n = prob.n;
  const double fixed = r / m + r / n - r * r / (m * n) +
                       (r * (n - r) / (m * n)) * Lambda * Lambda;
  const double coef = prob.alpha() * (n - r) / (m * n);
  const MomentSum ms = moment_over(spectra, Lambda);
  if (std_error != nullptr) *std_error = coef * ms.std_error;
  return fixed + coef * ms.mean;
}

}  // namespace

double finite_n_mse(double Lambda, const FiniteProblem& prob, int trials,
                    std::uint64_t seed) {
  prob.validate();
  if (!(Lambda >= 0.0)) {
    throw std::invalid_argument("finite_n_mse: Lambda must be >= 0");
  }
  const auto spectra = detail::reduced_spectra(prob, trials, seed);
  return mse_from_spectra(Lambda, prob, spectra);
}

FiniteMinimax finite_n_minimax(const FiniteProblem& prob, int trials,
                               std::uint64_t seed) {
  prob.validate();
  if (prob.r == prob.m) {
    // Moment sum is empty; the remaining Lambda^2 term is minimized at 0.
    const double r = prob.r;
    const double m = prob.m;
    const double n = prob.n;
    FiniteMinimax out;
    out.lambda_star_n = 0.0;
    out.mse = r / m + r / n - r * r / (m * n);
    out.mse_std_error = 0.0;
    out.data_scale_lambda = 0.0;
    return out;
  }
  const auto spectra = detail::reduced_spectra(prob, trials, seed);
  const auto mse = [&](double L) {
    return mse_from_spectra(L, prob, spectra);
  };
  // Golden-section on the convex common-random-numbers sample path.
  const double ratio = std::sqrt(static_cast<double>(prob.m) / prob.n);
  double a = 0.0;
  double b = 1.0 + ratio + 10.0 / std::sqrt(static_cast<double>(prob.n));
  constexpr double phi = 0.6180339887498948482;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = mse(c);
  double fd = mse(d);
  while (b - a > 1e-4) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = mse(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = mse(d);
    }
  }
  FiniteMinimax out;
  out.lambda_star_n = 0.5 * (a + b);
  out.mse = mse_from_spectra(out.lambda_star_n, prob, spectra,
                             &out.mse_std_error);
  out.data_scale_lambda =
      out.lambda_star_n *
      std::sqrt(1.0 - static_cast<double>(prob.r) / prob.n);
  return out;
}

}  // namespace svstmx
