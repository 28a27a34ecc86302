#pragma once

#include <optional>

namespace iongate {

/// Reduced Planck constant in J*s (CODATA 2018, exact in SI).
inline constexpr double kHbar = 1.054571817e-34;

/// Two-photon stimulated Raman drive through a far-detuned virtual level.
struct RamanBeams {
  double g1 = 0.0;        // rad/s, single-beam resonant Rabi frequency
  double g2 = 0.0;        // rad/s
  double detuning = 0.0;  // rad/s, from the virtual level
};

/// Trap and laser parameters for one ion string, in SI units.
///
/// `wavevector` is |k.z| for a single travelling-wave beam or |k1 - k2| for a
/// Raman pair. When `raman` is set, `dipole_coupling` is ignored and the
/// effective coupling is g1*g2/detuning. When `rf_drive` is set the COM mode
/// is taken to be rf-confined and the Lamb-Dicke parameter gets the
/// micromotion correction.
struct PhysicalParams {
  double mass = 0.0;                // kg, total mass of the ion collection
  double trap_frequency = 0.0;      // rad/s
  double internal_splitting = 0.0;  // rad/s
  double wavevector = 0.0;          // 1/m
  double dipole_coupling = 0.0;     // rad/s
  std::optional<RamanBeams> raman;
  std::optional<double> rf_drive;  // rad/s

  /// Throws std::domain_error naming the first violated constraint.
  void validate() const;
};

/// Lamb-Dicke parameter and base Rabi frequency for one ion. In dimensionless
/// mode g is 1 and every duration is a pulse area.
class CouplingContext {
 public:
  /// Throws std::domain_error unless eta and g are finite and positive.
  CouplingContext(double eta, double g = 1.0);

  double eta() const { return eta_; }
  double g() const { return g_; }

 private:
  double eta_;
  double g_;
};

/// z0 = sqrt(hbar / (2 M omega)).
double zero_point_spread(double mass, double trap_frequency);

/// eta = |dk| * z0. Throws std::domain_error if the wavevector is zero.
double lamb_dicke(const PhysicalParams& params);

/// g1*g2/detuning. Throws std::domain_error on zero detuning.
double raman_effective_g(double g1, double g2, double detuning);

/// eta * [1 - omega / (2 sqrt(2) omega_rf)], valid in the pseudopotential
/// regime. Only meaningful for rf-confined modes; statically confined modes
/// have no correction and must not call this.
double micromotion_corrected_eta(double eta, double trap_frequency, double rf_drive);

/// Builds the coupling context implied by physical parameters: Raman
/// substitution for g when present, micromotion correction for eta when an
/// rf drive is given.
CouplingContext coupling_context(const PhysicalParams& params);

/// Magnitude of the Rabi frequency between |n_from>|down> and |n_to>|up>:
///
///   g e^{-eta^2/2} eta^{|dn|} sqrt(n_<! / n_>!) L_{n_<}^{|dn|}(eta^2)
///
/// Symmetric in its Fock arguments. Flip probability is sin^2(Omega t).
double rabi_frequency(int n_from, int n_to, const CouplingContext& ctx);

/// Same as rabi_frequency but keeping the sign of the Laguerre factor, so
/// that carrier frequencies past a Laguerre zero come out negative.
double signed_rabi_frequency(int n_from, int n_to, const CouplingContext& ctx);

}  // namespace iongate
