#pragma once

namespace iongate {

/// Degree, order and argument of a generalized Laguerre polynomial L_n^alpha(x).
/// Only integer, nonnegative orders are supported.
struct LaguerreSpec {
  int degree = 0;
  int order = 0;
  double x = 0.0;
};

/// Evaluates L_n^alpha(x) by upward three-term recurrence in n.
/// Throws std::domain_error for negative degree, order or argument.
double laguerre(const LaguerreSpec& spec);

inline double laguerre(int degree, int order, double x) {
  return laguerre(LaguerreSpec{degree, order, x});
}

/// sqrt(n_lo! / n_hi!) as a running product of inverse square roots.
/// Throws std::domain_error unless 0 <= n_lo <= n_hi.
double sqrt_factorial_ratio(int n_lo, int n_hi);

}  // namespace iongate
