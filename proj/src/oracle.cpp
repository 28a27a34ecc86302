#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "iongate/dynamics.hpp"

namespace iongate {

namespace {

// Plain complex product; std::complex's operator* takes the slow
// NaN-recovering path in the inner loop.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// One coupling |row> <- |col> of the time-dependent Hamiltonian; the
// Hermitian partner is applied alongside it.
struct Coupling {
  std::size_t row;  // |n', up>
  std::size_t col;  // |n, down>
  Complex coef;     // -g D_{n',n} e^{-i phi}
  int detuning;     // (n' - n) - s, in units of omega
};

class RotatingFrameHamiltonian {
 public:
  RotatingFrameHamiltonian(const Pulse& pulse, const JointSpace& space, double omega)
      : omega_(omega) {
    const CouplingContext& ctx = pulse.coupling();
    const int cutoff = space.fock_cutoff();
    const ComplexMatrix d = displacement_matrix(ctx.eta(), cutoff);
    const Complex laser = -ctx.g() * std::polar(1.0, -pulse.phase());
    const unsigned target_bit = 1u << pulse.target_ion();
    for (unsigned spins = 0; spins < space.spin_states(); ++spins) {
      if (spins & target_bit) continue;
      for (int n = 0; n < cutoff; ++n) {
        for (int n_to = 0; n_to < cutoff; ++n_to) {
          const Complex coef = laser * d(n_to, n);
          if (coef == Complex{}) continue;
          const int detuning = (n_to - n) - pulse.sideband_order();
          max_detuning_ = std::max(max_detuning_, std::abs(detuning));
          couplings_.push_back(
              {space.index(n_to, spins | target_bit), space.index(n, spins), coef, detuning});
        }
      }
    }
    phases_.resize(2 * static_cast<std::size_t>(max_detuning_) + 1);
  }

  // out = -i H(t) x, with x and out row-major dim x cols.
  void apply(double t, const std::vector<Complex>& x, std::vector<Complex>& out,
             std::size_t cols) {
    update_phases(t);
    std::fill(out.begin(), out.end(), Complex{});
    for (const Coupling& c : couplings_) {
      const Complex w = mul(c.coef, phases_[static_cast<std::size_t>(c.detuning + max_detuning_)]);
      const Complex w_conj = std::conj(w);
      Complex* up = &out[c.row * cols];
      Complex* down = &out[c.col * cols];
      const Complex* x_up = &x[c.row * cols];
      const Complex* x_down = &x[c.col * cols];
      for (std::size_t k = 0; k < cols; ++k) {
        up[k] += mul(w, x_down[k]);
        down[k] += mul(w_conj, x_up[k]);
      }
    }
    for (Complex& v : out) v = {v.imag(), -v.real()};  // times -i
  }

 private:
  void update_phases(double t) {
    const Complex base = std::polar(1.0, omega_ * t);
    const auto mid = static_cast<std::size_t>(max_detuning_);
    phases_[mid] = 1.0;
    Complex power{1.0, 0.0};
    for (int d = 1; d <= max_detuning_; ++d) {
      power = mul(power, base);
      phases_[mid + d] = power;
      phases_[mid - d] = std::conj(power);
    }
  }

  double omega_;
  int max_detuning_ = 0;
  std::vector<Coupling> couplings_;
  std::vector<Complex> phases_;
};

std::vector<Complex> integrate(RotatingFrameHamiltonian& h, const ComplexMatrix& initial,
                               double duration, long steps) {
  const auto rows = static_cast<std::size_t>(initial.rows());
  const auto cols = static_cast<std::size_t>(initial.cols());
  std::vector<Complex> x(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      x[r * cols + c] = initial(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  std::vector<Complex> k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
  const double step = duration / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const double t = step * static_cast<double>(i);
    h.apply(t, x, k1, cols);
    for (std::size_t j = 0; j < x.size(); ++j) tmp[j] = x[j] + 0.5 * step * k1[j];
    h.apply(t + 0.5 * step, tmp, k2, cols);
    for (std::size_t j = 0; j < x.size(); ++j) tmp[j] = x[j] + 0.5 * step * k2[j];
    h.apply(t + 0.5 * step, tmp, k3, cols);
    for (std::size_t j = 0; j < x.size(); ++j) tmp[j] = x[j] + step * k3[j];
    h.apply(t + step, tmp, k4, cols);
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] += (step / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
  }
  return x;
}

ComplexMatrix to_matrix(const std::vector<Complex>& x, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = x[static_cast<std::size_t>(r * cols + c)];
  }
  return m;
}

ComplexMatrix hermitian_power(const ComplexMatrix& m, double power) {
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m);
  const Eigen::VectorXd scaled = eig.eigenvalues().array().pow(power).matrix();
  return eig.eigenvectors() * scaled.asDiagonal() * eig.eigenvectors().adjoint();
}

// Restores the Gram matrix of the initial columns, which exact evolution
// preserves, by the closest (Lowdin) correction. Returns max |X^dagger X - G0|
// before the correction.
double restore_gram(ComplexMatrix& states, const ComplexMatrix& initial) {
  const ComplexMatrix g0 = initial.adjoint() * initial;
  const ComplexMatrix s = states.adjoint() * states;
  const double defect = (s - g0).cwiseAbs().maxCoeff();
  if (states.cols() == 0) return defect;
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(g0);
  if (!(eig.eigenvalues().minCoeff() > 1e-12)) return defect;
  states = states * hermitian_power(s, -0.5) * hermitian_power(g0, 0.5);
  return defect;
}

double top_level_leakage(const JointSpace& space, const ComplexMatrix& initial,
                         const ComplexMatrix& final_states, int monitored_fock) {
  const int cutoff = space.fock_cutoff();
  if (cutoff < 3) return 0.0;
  double leakage = 0.0;
  for (Eigen::Index c = 0; c < initial.cols(); ++c) {
    int highest = -1;
    for (Eigen::Index r = 0; r < initial.rows(); ++r) {
      if (initial(r, c) != Complex{}) {
        highest = std::max(highest, space.fock_of(static_cast<std::size_t>(r)));
      }
    }
    if (highest < 0 || highest > monitored_fock) continue;
    double top = 0.0;
    for (Eigen::Index r = 0; r < final_states.rows(); ++r) {
      if (space.fock_of(static_cast<std::size_t>(r)) >= cutoff - 2) top += std::norm(final_states(r, c));
    }
    leakage = std::max(leakage, top);
  }
  return leakage;
}

}  // namespace

OracleEvolution numeric_evolve(const Pulse& pulse, const JointSpace& space,
                               const ComplexMatrix& initial, const OracleOptions& options) {
  if (pulse.target_ion() >= space.n_ions()) {
    throw std::out_of_range("numeric_evolve: target ion is not in the space");
  }
  if (!(options.omega_over_g > 0.0) || !std::isfinite(options.omega_over_g)) {
    throw std::domain_error("numeric_evolve: omega_over_g must be positive");
  }
  if (options.steps_per_trap_period < 1) {
    throw std::domain_error("numeric_evolve: steps_per_trap_period must be >= 1");
  }
  if (static_cast<std::size_t>(initial.rows()) != space.dim()) {
    throw std::invalid_argument("numeric_evolve: initial states do not match the space");
  }

  const double omega = options.omega_over_g * pulse.coupling().g();
  const double duration = pulse.duration();
  const double max_step = (2.0 * std::numbers::pi / omega) / options.steps_per_trap_period;
  const long steps = std::max(1L, static_cast<long>(std::ceil(duration / max_step)));

  RotatingFrameHamiltonian hamiltonian(pulse, space, omega);
  OracleEvolution result;
  result.steps = steps;
  result.states = to_matrix(integrate(hamiltonian, initial, duration, steps), initial.rows(),
                            initial.cols());
  result.integrator_defect = restore_gram(result.states, initial);
  if (options.check_convergence) {
    ComplexMatrix refined = to_matrix(integrate(hamiltonian, initial, duration, 2 * steps),
                                      initial.rows(), initial.cols());
    restore_gram(refined, initial);
    result.step_change = (refined - result.states).cwiseAbs().maxCoeff();
    result.converged = result.step_change <= options.convergence_tol;
  }
  const int monitored = options.monitored_fock >= 0
                            ? options.monitored_fock
                            : std::max(0, (space.fock_cutoff() - 10) / 2);
  result.top_leakage = top_level_leakage(space, initial, result.states, monitored);
  return result;
}

OracleResult numeric_propagator(const Pulse& pulse, const JointSpace& space,
                                const OracleOptions& options) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  OracleEvolution evo = numeric_evolve(pulse, space, ComplexMatrix::Identity(d, d), options);
  return OracleResult{Propagator{space, std::move(evo.states)}, evo.steps, evo.step_change,
                      evo.converged, evo.top_leakage, evo.integrator_defect};
}

}  // namespace iongate
