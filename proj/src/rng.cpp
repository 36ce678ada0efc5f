#include "svstmx/rng.hpp"

namespace svstmx {

Eigen::MatrixXd gaussian_matrix(int rows, int cols, TrialRng& rng) {
  Eigen::MatrixXd m(rows, cols);
  rng.fill_gaussian(m);
  return m;
}

Eigen::MatrixXd wigner_matrix(int n, TrialRng& rng) {
  Eigen::MatrixXd z = gaussian_matrix(n, n, rng);
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  return inv_sqrt2 * (z + z.transpose());
}

}  // namespace svstmx
