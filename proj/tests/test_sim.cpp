#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "svstmx/amse.hpp"
#include "svstmx/rng.hpp"
#include "svstmx/sim.hpp"
#include "svstmx/svst.hpp"

using namespace svstmx;

TEST_CASE("identity-threshold risk is one (Mat)") {
  const SimConfig cfg{{4, 40, 40, MatrixClass::mat(1.0)}, 5.0, 0.0, 300, 21};
  const SimStats st = monte_carlo_risk(cfg);
  CHECK(std::abs(st.mean - 1.0) <= 3.0 * st.std_error);
}

TEST_CASE("zero signal with a huge threshold has no risk") {
  const SimConfig cfg{{4, 40, 40, MatrixClass::mat(1.0)}, 0.0, 50.0, 50, 22};
  const SimStats st = monte_carlo_risk(cfg);
  CHECK(st.mean <= 1e-12);
}

TEST_CASE("Sym risk at lambda = 0 matches the asymptotic formula") {
  // The PSD denoiser keeps the positive bulk; its risk at Lambda = 0 is
  // rho(2 - rho) + (1-rho)^2 / 2 in the large-n limit.
  const SimConfig cfg{{6, 60, 60, MatrixClass::sym()}, 50.0, 0.0, 300, 23};
  const SimStats st = monte_carlo_risk(cfg);
  const double target = worst_case_amse(0.0, 0.1, MatrixClass::sym());
  CHECK(std::abs(st.mean - target) <= 0.05);
}

TEST_CASE("risk simulation is deterministic in the seed") {
  const SimConfig cfg{{3, 25, 30, MatrixClass::mat(25.0 / 30.0)},
                      8.0, 0.6, 40, 77};
  const SimStats a = monte_carlo_risk(cfg);
  const SimStats b = monte_carlo_risk(cfg);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK_THROWS_AS(monte_carlo_risk(SimConfig{cfg.prob, -1.0, 0.6, 10, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo_risk(SimConfig{cfg.prob, 1.0, 0.6, 0, 1}),
                  std::invalid_argument);
}

TEST_CASE("risk is nondecreasing in the signal strength") {
  const FiniteProblem prob{5, 50, 50, MatrixClass::mat(1.0)};
  const std::vector<double> mus{0.0, 1.0, 5.0, 20.0, 100.0};
  const auto stats = risk_monotonicity_check(prob, 0.8, mus, 200, 31);
  REQUIRE(stats.size() == mus.size());
  for (std::size_t i = 1; i < stats.size(); ++i) {
    const double se = std::hypot(stats[i].std_error, stats[i - 1].std_error);
    CHECK(stats[i].mean >= stats[i - 1].mean - 4.0 * se);
  }
}

TEST_CASE("single-element mu list gives a single estimate") {
  const FiniteProblem prob{2, 12, 16, MatrixClass::mat(0.75)};
  const auto stats =
      risk_monotonicity_check(prob, 0.5, std::vector<double>{3.0}, 30, 5);
  CHECK(stats.size() == 1);
  CHECK(stats[0].trials == 30);
}

TEST_CASE("mu list validation") {
  const FiniteProblem prob{2, 12, 16, MatrixClass::mat(0.75)};
  CHECK_THROWS_AS(
      risk_monotonicity_check(prob, 0.5, std::vector<double>{}, 10, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      risk_monotonicity_check(prob, 0.5, std::vector<double>{1.0, 1.0}, 10, 1),
      std::invalid_argument);
}

TEST_CASE("SURE tracks the empirical risk (Mat and Sym)") {
  const SimConfig mat_cfg{{5, 50, 50, MatrixClass::mat(1.0)}, 10.0, 0.5,
                          400, 41};
  const auto mat_res = sure_vs_empirical(mat_cfg);
  CHECK(std::abs(mat_res.discrepancy_z) <= 4.0);
  CHECK(std::abs(mat_res.sure_mean.mean - mat_res.risk_mean.mean) <=
        4.0 * std::hypot(mat_res.sure_mean.std_error,
                         mat_res.risk_mean.std_error));

  const SimConfig sym_cfg{{5, 50, 50, MatrixClass::sym()}, 10.0, 0.5, 400, 42};
  const auto sym_res = sure_vs_empirical(sym_cfg);
  CHECK(std::abs(sym_res.discrepancy_z) <= 4.0);
  CHECK(sym_res.resampled >= 0);
}

TEST_CASE("scale contract: sigma = 1 pipeline matches the scaled risk") {
  const FiniteProblem prob{3, 20, 30, MatrixClass::mat(20.0 / 30.0)};
  const double mu = 6.0;
  const double lambda = 0.7;
  const int trials = 60;
  const std::uint64_t seed = 55;
  const Eigen::MatrixXd x0 = least_favorable_matrix(prob, mu);
  const double sqn = std::sqrt(static_cast<double>(prob.n));

  std::vector<double> native;
  std::vector<double> rescaled;
  for (int t = 0; t < trials; ++t) {
    TrialRng rng(seed, static_cast<std::uint64_t>(t));
    const Eigen::MatrixXd z = gaussian_matrix(prob.m, prob.n, rng);
    const Eigen::MatrixXd y = x0 + z / sqn;
    native.push_back((svst_denoise(y, lambda) - x0).squaredNorm() / prob.m);
    const Eigen::MatrixXd y1 = sqn * x0 + z;  // sigma = 1 units
    rescaled.push_back(
        (svst_denoise(y1, lambda * sqn) - sqn * x0).squaredNorm() /
        (static_cast<double>(prob.m) * prob.n));
  }
  double mean_n = 0.0;
  double mean_r = 0.0;
  double var = 0.0;
  for (int t = 0; t < trials; ++t) {
    mean_n += native[static_cast<std::size_t>(t)];
    mean_r += rescaled[static_cast<std::size_t>(t)];
  }
  mean_n /= trials;
  mean_r /= trials;
  for (int t = 0; t < trials; ++t) {
    const double d = native[static_cast<std::size_t>(t)] -
                     rescaled[static_cast<std::size_t>(t)];
    var += d * d;
  }
  const double se = std::sqrt(var / trials / trials);
  CHECK(std::abs(mean_n - mean_r) <= 4.0 * se + 1e-10);
}
