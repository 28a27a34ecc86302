#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "iongate/coupling.hpp"

namespace iongate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class Spin : unsigned { down = 0, up = 1 };

/// N-ion spin register tensored with a truncated COM Fock ladder.
///
/// Basis index = fock * 2^n_ions + spin_bits, where bit j of spin_bits is the
/// state of ion j (0 = down, 1 = up). For one ion and two Fock levels the order
/// is {0d, 0u, 1d, 1u}.
///
/// Labels are the Fock number followed by one spin character per ion, ion 0
/// first: "1u" or "0du". 'd'/'u' and the arrows "↓"/"↑" are accepted.
class JointSpace {
 public:
  /// Throws std::domain_error unless 1 <= n_ions <= 16 and fock_cutoff >= 1.
  JointSpace(int n_ions, int fock_cutoff);

  int n_ions() const { return n_ions_; }
  int fock_cutoff() const { return fock_cutoff_; }
  std::size_t spin_states() const { return std::size_t{1} << n_ions_; }
  std::size_t dim() const { return spin_states() * static_cast<std::size_t>(fock_cutoff_); }

  std::size_t index(int fock, unsigned spin_bits) const;
  int fock_of(std::size_t index) const { return static_cast<int>(index / spin_states()); }
  unsigned spins_of(std::size_t index) const {
    return static_cast<unsigned>(index % spin_states());
  }

  std::string label(std::size_t index) const;
  /// Throws std::invalid_argument for malformed or out-of-range labels.
  std::size_t parse_label(std::string_view label) const;

  friend bool operator==(const JointSpace&, const JointSpace&) = default;

 private:
  int n_ions_;
  int fock_cutoff_;
};

/// Unitary over a JointSpace.
struct Propagator {
  JointSpace space;
  ComplexMatrix matrix;

  static Propagator identity(const JointSpace& space);

  /// max |(U^dagger U - I)_ij|
  double unitarity_error() const;
};

/// Unit-norm complex amplitudes over a JointSpace.
class StateVector {
 public:
  /// Throws std::invalid_argument on size mismatch or norm off by more than 1e-12.
  StateVector(const JointSpace& space, ComplexVector amplitudes);

  static StateVector basis(const JointSpace& space, std::size_t index);
  static StateVector basis(const JointSpace& space, std::string_view label);

  const JointSpace& space() const { return space_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  double population(std::size_t index) const { return std::norm(amplitudes_(index)); }
  /// Total population of Fock level n, summed over spin configurations.
  double fock_population(int n) const;

  /// In-place left multiplication. Throws std::invalid_argument on space mismatch.
  void apply(const Propagator& propagator);

 private:
  JointSpace space_;
  ComplexVector amplitudes_;
};

/// One laser pulse on one ion.
///
/// Sideband order s couples |n>|down> to |n+s>|up>: 0 is the carrier, -1 the
/// red and +1 the blue sideband. The pulse area is Omega_{0,|s|} * tau, so a
/// carrier of area m*pi spends tau = m*pi / Omega_{0,0}.
class Pulse {
 public:
  /// Phase is reduced to [0, 2pi). Throws std::domain_error for a negative or
  /// non-finite area, or a negative target ion.
  Pulse(int target_ion, int sideband_order, double phase, double pulse_area, CouplingContext ctx);

  int target_ion() const { return target_ion_; }
  int sideband_order() const { return sideband_order_; }
  double phase() const { return phase_; }
  double pulse_area() const { return pulse_area_; }
  const CouplingContext& coupling() const { return ctx_; }

  /// Omega_{0,|s|}, the rate that converts pulse area to duration.
  double reference_rabi() const;
  double duration() const { return pulse_area_ / reference_rabi(); }

 private:
  int target_ion_;
  int sideband_order_;
  double phase_;
  double pulse_area_;
  CouplingContext ctx_;
};

/// <n_to| exp(i eta (a + a^dagger)) |n_from>
///   = e^{-eta^2/2} (i eta)^{|dn|} sqrt(n_<!/n_>!) L_{n_<}^{|dn|}(eta^2)
Complex displacement_element(int n_to, int n_from, double eta);

/// N x N matrix of displacement_element, row = n_to.
ComplexMatrix displacement_matrix(double eta, int fock_cutoff);

/// Resonant two-level evolution on {|n,down>, |n,up>} under
/// H = -hbar g [S+ e^{i eta (a + a^dagger)} e^{-i phi} + h.c.] for the pulse duration.
/// With c = g D_{n,n} e^{-i phi}:
///   U = cos(|c| tau) I + i sin(|c| tau) (c^ |up><down| + c^* |down><up|),  c^ = c/|c|.
/// Throws std::invalid_argument for a sideband pulse.
Eigen::Matrix2cd carrier_block_unitary(int n, const Pulse& pulse);

/// Same closed form on {|n,down>, |n+s,up>} with c = g D_{n+s,n} e^{-i phi}; the
/// i^{|s|} phase of D enters through c. Returns the 1x1 identity when n+s lies
/// outside [0, fock_cutoff). Throws std::invalid_argument for a carrier pulse.
ComplexMatrix sideband_block_unitary(int n, const Pulse& pulse, int fock_cutoff = 1 << 30);

/// Full-space rotating-wave propagator: direct sum of resonant blocks on the
/// target ion, identity on every other ion. Throws std::out_of_range if the
/// target ion is not in the space.
Propagator rwa_propagator(const Pulse& pulse, const JointSpace& space);

/// Settings for the time-dependent oracle integrator.
struct OracleOptions {
  double omega_over_g = 1000.0;
  int steps_per_trap_period = 128;
  bool check_convergence = true;
  double convergence_tol = 1e-8;
  /// Highest Fock level treated as populated when measuring truncation
  /// leakage; negative means (fock_cutoff - 10) / 2.
  int monitored_fock = -1;
};

struct OracleEvolution {
  ComplexMatrix states;  // one evolved column per initial column
  long steps = 0;
  double step_change = 0.0;  // max entry change on halving the step, 0 if unchecked
  bool converged = true;
  double top_leakage = 0.0;  // max population in the two highest Fock levels
  double integrator_defect = 0.0;  // max |X^dagger X - X0^dagger X0| before re-orthonormalization
};

struct OracleResult {
  Propagator propagator;
  long steps = 0;
  double step_change = 0.0;
  bool converged = true;
  double top_leakage = 0.0;
  double integrator_defect = 0.0;
};

/// Default Fock cutoff for the oracle given the highest level in play.
inline int default_oracle_cutoff(int max_fock) { return 2 * max_fock + 10; }

/// Integrates i dU/dt = H(t) U with classical fixed-step RK4 for the pulse
/// duration, where in the frame rotating with the laser and the trap
///
///   H(t) = -g sum_{n,n'} D_{n',n}(eta) e^{i[(n'-n)-s] omega t} e^{-i phi} S+ |n'><n| + h.c.
///
/// keeps every motional order and drops only optical counter-rotating terms.
/// The step is (2 pi / omega) / steps_per_trap_period, shortened so a whole
/// number of steps spans the pulse. RK4 is not norm-conserving, so the evolved
/// columns are re-orthonormalized (nearest set with the initial Gram matrix);
/// the size of that correction is reported as integrator_defect.
OracleEvolution numeric_evolve(const Pulse& pulse, const JointSpace& space,
                               const ComplexMatrix& initial, const OracleOptions& options = {});

OracleResult numeric_propagator(const Pulse& pulse, const JointSpace& space,
                                const OracleOptions& options = {});

}  // namespace iongate
