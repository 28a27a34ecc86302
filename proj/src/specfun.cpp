#include "iongate/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace iongate {

double laguerre(const LaguerreSpec& spec) {
  const int n = spec.degree;
  const int alpha = spec.order;
  const double x = spec.x;
  if (n < 0 || alpha < 0 || !(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("laguerre: requires n >= 0, alpha >= 0, finite x >= 0 (got n=" +
                            std::to_string(n) + ", alpha=" + std::to_string(alpha) +
                            ", x=" + std::to_string(x) + ")");
  }
  if (n == 0) return 1.0;

  double prev = 1.0;
  double curr = 1.0 + alpha - x;
  // (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double sqrt_factorial_ratio(int n_lo, int n_hi) {
  if (n_lo < 0 || n_lo > n_hi) {
    throw std::domain_error("sqrt_factorial_ratio: requires 0 <= n_lo <= n_hi (got " +
                            std::to_string(n_lo) + ", " + std::to_string(n_hi) + ")");
  }
  double ratio = 1.0;
  for (int j = n_lo + 1; j <= n_hi; ++j) ratio /= std::sqrt(static_cast<double>(j));
  return ratio;
}

}  // namespace iongate
