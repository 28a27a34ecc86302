#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "iongate/dynamics.hpp"
#include "iongate/magic.hpp"

namespace iongate {

/// An ordered list of pulses over one joint space.
struct Schedule {
  JointSpace space;
  std::vector<Pulse> pulses;

  /// Throws std::out_of_range if a pulse targets an ion outside the space.
  void validate() const;
};

struct TruthTableRow {
  std::string input;
  std::vector<std::pair<std::string, double>> outputs;  // population per logical label
  double leakage = 0.0;                                  // population outside the logical set
};

struct TruthTableReport {
  std::vector<std::string> labels;
  std::vector<TruthTableRow> rows;
  double max_leakage = 0.0;

  /// Largest |population - expected| where `expected` maps each input label to
  /// the single output label that should hold all of its population.
  double max_deviation(const std::map<std::string, std::string>& expected) const;
};

struct FidelityReport {
  std::string target_name;
  double fidelity = 0.0;
  double infidelity = 1.0;
  double max_deviation = 0.0;  // entrywise, after global phase removal where defined
};

/// Carrier pulse realizing the single-pulse reduced CN for `entry`: area set so
/// Omega_{a,a} tau = m pi, which makes Omega_{b,b} tau = (k + 1/2) pi.
/// Throws std::domain_error if the entry is invalid.
Pulse reduced_cn_pulse(const MagicEntry& entry, double phase, double g = 1.0, int ion = 0);

/// Red-sideband pi-transfer |up,0> <-> |down,1> on `ion` (Omega_{0,1} tau = pi/2).
/// The inverse map adds pi to the phase so forward followed by inverse is the
/// identity on every coupled block.
Pulse map_pulse(int ion, const CouplingContext& ctx, double phase, bool inverse);

/// Three-pulse two-ion CN: map the control onto the COM mode, apply the
/// reduced CN to the target, map back. The control's coupled state is |up>.
/// All pulses share the mode's coupling, so ctx.eta() must equal entry.eta.
Schedule compose_cn(int control_ion, int target_ion, const MagicEntry& entry,
                    const CouplingContext& ctx, const JointSpace& space, double gate_phase = 0.0);

/// Product of the rotating-wave propagators, last pulse leftmost.
Propagator schedule_propagator(const Schedule& schedule);

/// Diagnostics accumulated when the time-dependent oracle is used.
struct OracleDiagnostics {
  long steps = 0;
  double step_change = 0.0;
  bool converged = true;
  double top_leakage = 0.0;
  double integrator_defect = 0.0;
};

/// Evolves each column of `initial` through the schedule, using the RWA
/// propagators or, when `oracle` is set, the RK4 integrator.
ComplexMatrix evolve_columns(const Schedule& schedule, ComplexMatrix initial,
                             const std::optional<OracleOptions>& oracle = std::nullopt,
                             OracleDiagnostics* diagnostics = nullptr);

/// Throws std::invalid_argument if the state lives on a different space.
StateVector apply_schedule(const Schedule& schedule, const StateVector& state,
                           const std::optional<OracleOptions>& oracle = std::nullopt);

/// Throws std::invalid_argument for labels that do not resolve.
TruthTableReport truth_table(const Schedule& schedule, std::span<const std::string> logical_labels,
                             const std::optional<OracleOptions>& oracle = std::nullopt);

/// |Tr(target^dagger actual)| / dim.
double gate_fidelity(const ComplexMatrix& target, const ComplexMatrix& actual);

/// Rows and columns of `full` at `indices`.
ComplexMatrix restrict_to(const ComplexMatrix& full, std::span<const std::size_t> indices);

/// Basis indices {a d, a u, b d, b u} of the reduced-CN logical subspace for
/// a single-ion space; for the (0,1) pair this is {0d, 0u, 1d, 1u}.
std::vector<std::size_t> reduced_cn_indices(const MagicEntry& entry, const JointSpace& space);

/// Ideal reduced CN in the {a d, a u, b d, b u} basis with the (-1)^m global
/// phase removed:
///
///   [[1,0,0,0],[0,1,0,0],[0,0,0, i e^{i phi} (-1)^{k-m}],[0,0, i e^{-i phi} (-1)^{k-m},0]]
///
/// (-1)^{k-m} equals (-1)^{k+m}. `flip_sign` is the sign of L_b(eta^2), +1 for
/// every (0,1) entry.
Eigen::Matrix4cd reduced_cn_target(int k, int m, double phase, double flip_sign = 1.0);

/// Compares a 4x4 logical unitary against reduced_cn_target after dividing
/// out (-1)^m.
FidelityReport verify_reduced_cn(const ComplexMatrix& logical, int k, int m, double phase,
                                 double flip_sign = 1.0);

/// Runs a single-ion schedule under the RWA and compares its {0d,0u,1d,1u}
/// block with the ideal reduced CN. Throws std::invalid_argument unless the
/// space has one ion and at least two Fock levels.
FidelityReport verify_eq6(const Schedule& schedule, int k, int m, double phase);

struct SensitivityPoint {
  double delta_eta = 0.0;
  double infidelity = 0.0;
};

/// Gate infidelity when the true Lamb-Dicke parameter is eta + delta while the
/// pulse duration stays tuned for the nominal eta.
std::vector<SensitivityPoint> eta_sensitivity(const MagicEntry& entry,
                                              std::span<const double> deltas,
                                              const CouplingContext& ctx, double phase = 0.0);

/// Logical target of compose_cn on the four motional-ground states, ordered by
/// basis index, with the (-1)^m global phase removed: identity when the
/// control is down, the reduced-CN flip block on the target when it is up.
ComplexMatrix two_ion_cn_target(int control_ion, int target_ion, const MagicEntry& entry,
                                const JointSpace& space, double gate_phase = 0.0);

/// Basis indices of the four motional-ground logical states of a two-qubit
/// register, sorted ascending.
std::vector<std::size_t> two_ion_logical_indices(int control_ion, int target_ion,
                                                 const JointSpace& space);

/// Classical CNOT expectation over the motional-ground logical labels.
std::map<std::string, std::string> cnot_truth(int control_ion, int target_ion,
                                              const JointSpace& space);

/// Classical truth table of the single-ion reduced CN: the no-op level keeps
/// its spin, the flip level swaps it.
std::map<std::string, std::string> reduced_cn_truth(const MagicEntry& entry,
                                                    const JointSpace& space);

/// Oracle check of the single-pulse gate at one trap frequency.
struct RwaValidityPoint {
  double omega_over_g = 0.0;
  double infidelity = 0.0;
  double step_change = 0.0;
  double top_leakage = 0.0;
  long steps = 0;
  bool converged = true;
};

/// Integrates the reduced-CN pulse for `entry` with the oracle on a single-ion
/// space of `fock_cutoff` levels (default from default_oracle_cutoff) and
/// reports its infidelity against reduced_cn_target.
RwaValidityPoint rwa_validity(const MagicEntry& entry, double phase, const OracleOptions& options,
                              int fock_cutoff = -1);

}  // namespace iongate
