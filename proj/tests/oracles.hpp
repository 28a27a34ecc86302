#pragma once

// Independent reference computations used only by the test suites.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace iongate::testing {

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int j = 2; j <= n; ++j) f *= static_cast<std::uint64_t>(j);
  return f;
}

inline std::uint64_t binomial(int n, int k) {
  std::uint64_t c = 1;
  for (int j = 1; j <= k; ++j) c = c * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
  return c;
}

/// exp(A) by scaling and squaring with a Taylor series.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
  const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int j = 1; j <= 30; ++j) {
    term = term * scaled / static_cast<double>(j);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// exp(i eta (a + a^dagger)) on a Fock ladder truncated at `cutoff`.
inline Eigen::MatrixXcd displacement_by_expm(double eta, int cutoff) {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 0; n + 1 < cutoff; ++n) {
    x(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    x(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
  }
  return expm(std::complex<double>(0.0, eta) * x);
}

/// Real roots of sum_j c_j x^j (c given lowest order first) via the
/// eigenvalues of the companion matrix.
inline std::vector<double> real_polynomial_roots(const std::vector<double>& coeffs,
                                                 double imag_tol = 1e-9) {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[i] / coeffs[degree];
  const Eigen::VectorXcd eig = companion.eigenvalues();
  std::vector<double> roots;
  for (const auto& z : eig) {
    if (std::abs(z.imag()) < imag_tol) roots.push_back(z.real());
  }
  return roots;
}

}  // namespace iongate::testing
