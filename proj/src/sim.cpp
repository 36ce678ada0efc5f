#include "svstmx/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "svstmx/rng.hpp"
#include "svstmx/svst.hpp"

namespace svstmx {

namespace {

SimStats stats_of(const std::vector<double>& vals) {
  double sum = 0.0;
  double sumsq = 0.0;
  for (double v : vals) {
    sum += v;
    sumsq += v * v;
  }
  const double t = static_cast<double>(vals.size());
  const double mean = sum / t;
  const double var = std::max(sumsq / t - mean * mean, 0.0);
  const double se = t > 1.0 ? std::sqrt(var / (t - 1.0)) : 0.0;
  return {mean, se, static_cast<int>(vals.size())};
}

Eigen::MatrixXd draw_noise(const FiniteProblem& prob, TrialRng& rng) {
  if (prob.cls.kind == MatrixKind::Sym) return wigner_matrix(prob.n, rng);
  return gaussian_matrix(prob.m, prob.n, rng);
}

// Per-trial loss of the class's minimax denoiser at the least-favorable
// signal: SVST for Mat, the PSD-cone denoiser for Sym.
double one_loss(const FiniteProblem& prob, const Eigen::MatrixXd& x0,
                const Eigen::MatrixXd& noise, double lambda) {
  const double sigma = 1.0 / std::sqrt(static_cast<double>(prob.n));
  const Eigen::MatrixXd y = x0 + sigma * noise;
  const Eigen::MatrixXd xhat = prob.cls.kind == MatrixKind::Sym
                                   ? psd_denoise(y, lambda)
                                   : svst_denoise(y, lambda);
  return (xhat - x0).squaredNorm() / static_cast<double>(prob.m);
}

}  // namespace

void SimConfig::validate() const {
  prob.validate();
  if (!(mu >= 0.0)) throw std::invalid_argument("SimConfig: mu must be >= 0");
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("SimConfig: lambda must be >= 0");
  }
  if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
}

SimStats monte_carlo_risk(const SimConfig& config) {
  config.validate();
  const Eigen::MatrixXd x0 = least_favorable_matrix(config.prob, config.mu);
  std::vector<double> losses;
  losses.reserve(static_cast<std::size_t>(config.trials));
  for (int t = 0; t < config.trials; ++t) {
    TrialRng rng(config.seed, static_cast<std::uint64_t>(t));
    const Eigen::MatrixXd noise = draw_noise(config.prob, rng);
    losses.push_back(one_loss(config.prob, x0, noise, config.lambda));
  }
  return stats_of(losses);
}

std::vector<SimStats> risk_monotonicity_check(const FiniteProblem& prob,
                                              double lambda,
                                              std::span<const double> mus,
                                              int trials, std::uint64_t seed) {
  prob.validate();
  if (mus.empty()) {
    throw std::invalid_argument("risk_monotonicity_check: empty mu list");
  }
  for (std::size_t i = 1; i < mus.size(); ++i) {
    if (!(mus[i] > mus[i - 1])) {
      throw std::invalid_argument(
          "risk_monotonicity_check: mu list must be strictly increasing");
    }
  }
  if (trials < 1) {
    throw std::invalid_argument("risk_monotonicity_check: trials must be >= 1");
  }
  std::vector<Eigen::MatrixXd> signals;
  signals.reserve(mus.size());
  for (double mu : mus) signals.push_back(least_favorable_matrix(prob, mu));

  std::vector<std::vector<double>> losses(mus.size());
  for (auto& l : losses) l.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    TrialRng rng(seed, static_cast<std::uint64_t>(t));
    const Eigen::MatrixXd noise = draw_noise(prob, rng);  // shared across mu
    for (std::size_t k = 0; k < mus.size(); ++k) {
      losses[k].push_back(one_loss(prob, signals[k], noise, lambda));
    }
  }
  std::vector<SimStats> out;
  out.reserve(mus.size());
  for (const auto& l : losses) out.push_back(stats_of(l));
  return out;
}

SureCheckResult sure_vs_empirical(const SimConfig& config) {
  config.validate();
  const FiniteProblem& prob = config.prob;
  const bool sym = prob.cls.kind == MatrixKind::Sym;
  const Eigen::MatrixXd x0 = least_favorable_matrix(prob, config.mu);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(prob.n));
  const double denom = static_cast<double>(prob.m);

  std::vector<double> sures;
  std::vector<double> risks;
  sures.reserve(static_cast<std::size_t>(config.trials));
  risks.reserve(static_cast<std::size_t>(config.trials));
  int resampled = 0;
  std::uint64_t substream = 0;
  for (int t = 0; t < config.trials; ++t) {
    for (;;) {
      TrialRng rng(config.seed, substream++);
      const Eigen::MatrixXd y = x0 + sigma * draw_noise(prob, rng);
      try {
        const double sure =
            sym ? sure_psd(y, config.lambda) : sure_svst(y, config.lambda);
        const Eigen::MatrixXd xhat = sym ? psd_denoise(y, config.lambda)
                                         : svst_denoise(y, config.lambda);
        sures.push_back(sure / denom);
        risks.push_back((xhat - x0).squaredNorm() / denom);
        break;
      } catch (const DegenerateSpectrumError&) {
        ++resampled;
        if (resampled > config.trials + 100) {
          throw std::runtime_error(
              "sure_vs_empirical: degeneracy resample budget exceeded");
        }
      }
    }
  }

  std::vector<double> diffs(sures.size());
  for (std::size_t i = 0; i < sures.size(); ++i) diffs[i] = sures[i] - risks[i];
  const SimStats dstats = stats_of(diffs);
  SureCheckResult out;
  out.sure_mean = stats_of(sures);
  out.risk_mean = stats_of(risks);
  out.discrepancy_z =
      dstats.std_error > 0.0 ? dstats.mean / dstats.std_error : 0.0;
  out.resampled = resampled;
  return out;
}

}  // namespace svstmx
