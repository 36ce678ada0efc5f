#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace svstmx {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic per-trial substream: the stream for (seed, trial) does not
// depend on how many other trials ran or on scheduling. Gaussians use an
// explicit Box-Muller so output is identical across standard libraries.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (trial + 1));
    const std::uint64_t a = splitmix64(s);
    const std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    eng_.seed(seq);
  }

  // Uniform on (0, 1].
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  void fill_gaussian(Eigen::Ref<Eigen::MatrixXd> m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = gaussian();
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// i.i.d. N(0,1) matrix.
Eigen::MatrixXd gaussian_matrix(int rows, int cols, TrialRng& rng);

// Symmetric Wigner matrix (Z + Z')/sqrt(2) for i.i.d. N(0,1) Z, normalized
// so the bulk of eigenvalues of W/sqrt(n) matches the square-Wishart
// singular-value bulk (edge at 2).
Eigen::MatrixXd wigner_matrix(int n, TrialRng& rng);

}  // namespace svstmx
