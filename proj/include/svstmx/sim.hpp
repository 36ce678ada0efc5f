#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "svstmx/finite_n.hpp"

namespace svstmx {

// Monte Carlo experiment description. The risk convention is
// R = (1/m) E || Xhat(X0 + Z/sqrt(n)) - X0 ||_F^2 with X0 the
// least-favorable matrix of strength mu; Sym uses Wigner noise
// (Z + Z')/sqrt(2) and the PSD-cone denoiser.
struct SimConfig {
  FiniteProblem prob;
  double mu;
  double lambda;  // threshold on the scaled-data scale
  int trials;
  std::uint64_t seed;

  void validate() const;
};

struct SimStats {
  double mean;
  double std_error;
  int trials;
};

SimStats monte_carlo_risk(const SimConfig& config);

// Risk estimates over an increasing mu list with common random numbers
// (trial t uses the same noise draw for every mu).
std::vector<SimStats> risk_monotonicity_check(const FiniteProblem& prob,
                                              double lambda,
                                              std::span<const double> mus,
                                              int trials, std::uint64_t seed);

struct SureCheckResult {
  SimStats sure_mean;   // per-trial SURE / m
  SimStats risk_mean;   // per-trial realized loss / m
  double discrepancy_z; // paired-difference mean over its std error
  int resampled;        // degenerate-spectrum trials that were redrawn
};

// Pairs per-trial SURE with the realized loss on the same draw; degenerate
// spectra are resampled (counted in `resampled`).
SureCheckResult sure_vs_empirical(const SimConfig& config);

}  // namespace svstmx
