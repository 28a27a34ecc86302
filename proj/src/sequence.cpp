#include "iongate/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "iongate/specfun.hpp"

namespace iongate {

namespace {

constexpr double kPi = std::numbers::pi;

double parity(int exponent) { return (exponent % 2 == 0) ? 1.0 : -1.0; }

double flip_sign_of(const MagicEntry& entry) {
  return laguerre(entry.flip_level, 0, entry.eta * entry.eta) < 0.0 ? -1.0 : 1.0;
}

ComplexMatrix basis_columns(const JointSpace& space, std::span<const std::size_t> indices) {
  ComplexMatrix cols = ComplexMatrix::Zero(static_cast<Eigen::Index>(space.dim()),
                                           static_cast<Eigen::Index>(indices.size()));
  for (std::size_t c = 0; c < indices.size(); ++c) {
    cols(static_cast<Eigen::Index>(indices[c]), static_cast<Eigen::Index>(c)) = 1.0;
  }
  return cols;
}

ComplexMatrix restrict_rows(const ComplexMatrix& states, std::span<const std::size_t> indices) {
  ComplexMatrix out(static_cast<Eigen::Index>(indices.size()), states.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = states.row(static_cast<Eigen::Index>(indices[r]));
  }
  return out;
}

}  // namespace

void Schedule::validate() const {
  for (const Pulse& p : pulses) {
    if (p.target_ion() >= space.n_ions()) {
      throw std::out_of_range("schedule: pulse targets ion " + std::to_string(p.target_ion()) +
                              " but the space has " + std::to_string(space.n_ions()) + " ions");
    }
  }
}

double TruthTableReport::max_deviation(const std::map<std::string, std::string>& expected) const {
  double worst = 0.0;
  for (const TruthTableRow& row : rows) {
    const auto it = expected.find(row.input);
    if (it == expected.end()) {
      throw std::invalid_argument("truth table: no expectation for input '" + row.input + "'");
    }
    for (const auto& [label, population] : row.outputs) {
      const double want = label == it->second ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(population - want));
    }
  }
  return worst;
}

Pulse reduced_cn_pulse(const MagicEntry& entry, double phase, double g, int ion) {
  validate(entry);
  if (std::abs(entry.noop_pulse_area - entry.m * kPi) > 1e-12 * entry.m) {
    throw std::domain_error("reduced_cn_pulse: no-op pulse area must be m*pi");
  }
  const CouplingContext ctx(entry.eta, g);
  // Omega_{0,0} tau with Omega_{a,a} tau = m pi.
  const double area = entry.noop_pulse_area * rabi_frequency(0, 0, ctx) /
                      rabi_frequency(entry.noop_level, entry.noop_level, ctx);
  return Pulse(ion, 0, phase, area, ctx);
}

Pulse map_pulse(int ion, const CouplingContext& ctx, double phase, bool inverse) {
  return Pulse(ion, -1, inverse ? phase + kPi : phase, kPi / 2.0, ctx);
}

Schedule compose_cn(int control_ion, int target_ion, const MagicEntry& entry,
                    const CouplingContext& ctx, const JointSpace& space, double gate_phase) {
  if (space.n_ions() < 2) throw std::invalid_argument("compose_cn: space needs at least two ions");
  if (space.fock_cutoff() < 2) throw std::invalid_argument("compose_cn: fock cutoff must be >= 2");
  if (control_ion == target_ion) throw std::invalid_argument("compose_cn: control equals target");
  if (control_ion < 0 || target_ion < 0 || control_ion >= space.n_ions() ||
      target_ion >= space.n_ions()) {
    throw std::out_of_range("compose_cn: ion index out of range");
  }
  if (std::abs(ctx.eta() - entry.eta) > 1e-12 * entry.eta) {
    throw std::domain_error("compose_cn: mapping and gate pulses must share the mode's eta");
  }
  Schedule schedule{space,
                    {map_pulse(control_ion, ctx, 0.0, false),
                     reduced_cn_pulse(entry, gate_phase, ctx.g(), target_ion),
                     map_pulse(control_ion, ctx, 0.0, true)}};
  schedule.validate();
  return schedule;
}

Propagator schedule_propagator(const Schedule& schedule) {
  schedule.validate();
  Propagator total = Propagator::identity(schedule.space);
  for (const Pulse& p : schedule.pulses) {
    total.matrix = rwa_propagator(p, schedule.space).matrix * total.matrix;
  }
  return total;
}

ComplexMatrix evolve_columns(const Schedule& schedule, ComplexMatrix initial,
                             const std::optional<OracleOptions>& oracle,
                             OracleDiagnostics* diagnostics) {
  schedule.validate();
  if (static_cast<std::size_t>(initial.rows()) != schedule.space.dim()) {
    throw std::invalid_argument("evolve: state dimension does not match the schedule's space");
  }
  OracleDiagnostics diag;
  for (const Pulse& p : schedule.pulses) {
    if (oracle) {
      OracleEvolution evo = numeric_evolve(p, schedule.space, initial, *oracle);
      initial = std::move(evo.states);
      diag.steps += evo.steps;
      diag.step_change = std::max(diag.step_change, evo.step_change);
      diag.converged = diag.converged && evo.converged;
      diag.top_leakage = std::max(diag.top_leakage, evo.top_leakage);
      diag.integrator_defect = std::max(diag.integrator_defect, evo.integrator_defect);
    } else {
      initial = rwa_propagator(p, schedule.space).matrix * initial;
    }
  }
  if (diagnostics) *diagnostics = diag;
  return initial;
}

StateVector apply_schedule(const Schedule& schedule, const StateVector& state,
                           const std::optional<OracleOptions>& oracle) {
  if (!(state.space() == schedule.space)) {
    throw std::invalid_argument("apply_schedule: state space does not match the schedule");
  }
  ComplexMatrix evolved = evolve_columns(schedule, state.amplitudes(), oracle);
  return StateVector(schedule.space, evolved.col(0));
}

TruthTableReport truth_table(const Schedule& schedule, std::span<const std::string> logical_labels,
                             const std::optional<OracleOptions>& oracle) {
  TruthTableReport report;
  std::vector<std::size_t> indices;
  for (const std::string& label : logical_labels) {
    indices.push_back(schedule.space.parse_label(label));
    report.labels.push_back(schedule.space.label(indices.back()));
  }
  const ComplexMatrix out = evolve_columns(schedule, basis_columns(schedule.space, indices), oracle);
  for (std::size_t c = 0; c < indices.size(); ++c) {
    TruthTableRow row;
    row.input = report.labels[c];
    double total = 0.0;
    for (std::size_t r = 0; r < indices.size(); ++r) {
      const double p = std::norm(out(static_cast<Eigen::Index>(indices[r]), static_cast<Eigen::Index>(c)));
      row.outputs.emplace_back(report.labels[r], p);
      total += p;
    }
    const double norm2 = out.col(static_cast<Eigen::Index>(c)).squaredNorm();
    row.leakage = std::max(0.0, norm2 - total);
    report.max_leakage = std::max(report.max_leakage, row.leakage);
    report.rows.push_back(std::move(row));
  }
  return report;
}

double gate_fidelity(const ComplexMatrix& target, const ComplexMatrix& actual) {
  if (target.rows() != actual.rows() || target.cols() != actual.cols() || target.rows() == 0) {
    throw std::invalid_argument("gate_fidelity: shape mismatch");
  }
  return std::abs((target.adjoint() * actual).trace()) / static_cast<double>(target.rows());
}

ComplexMatrix restrict_to(const ComplexMatrix& full, std::span<const std::size_t> indices) {
  const auto n = static_cast<Eigen::Index>(indices.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(r, c) = full(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(r)]),
                       static_cast<Eigen::Index>(indices[static_cast<std::size_t>(c)]));
    }
  }
  return out;
}

std::vector<std::size_t> reduced_cn_indices(const MagicEntry& entry, const JointSpace& space) {
  if (space.n_ions() != 1) throw std::invalid_argument("reduced CN: space must hold one ion");
  return {space.index(entry.noop_level, 0), space.index(entry.noop_level, 1),
          space.index(entry.flip_level, 0), space.index(entry.flip_level, 1)};
}

Eigen::Matrix4cd reduced_cn_target(int k, int m, double phase, double flip_sign) {
  const double sign = parity(k - m) * flip_sign;
  const Complex i{0.0, 1.0};
  Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
  t(0, 0) = 1.0;
  t(1, 1) = 1.0;
  t(2, 3) = i * std::polar(1.0, phase) * sign;
  t(3, 2) = i * std::polar(1.0, -phase) * sign;
  return t;
}

FidelityReport verify_reduced_cn(const ComplexMatrix& logical, int k, int m, double phase,
                                 double flip_sign) {
  if (logical.rows() != 4 || logical.cols() != 4) {
    throw std::invalid_argument("verify_reduced_cn: expected a 4x4 logical unitary");
  }
  const ComplexMatrix target = reduced_cn_target(k, m, phase, flip_sign);
  FidelityReport report;
  report.target_name = "reduced-cn(k=" + std::to_string(k) + ",m=" + std::to_string(m) + ")";
  report.fidelity = gate_fidelity(target, logical);
  report.infidelity = 1.0 - report.fidelity;
  report.max_deviation = (logical * parity(m) - target).cwiseAbs().maxCoeff();
  return report;
}

FidelityReport verify_eq6(const Schedule& schedule, int k, int m, double phase) {
  if (schedule.space.n_ions() != 1 || schedule.space.fock_cutoff() < 2) {
    throw std::invalid_argument("verify_eq6: needs a single-ion space with at least two Fock levels");
  }
  const std::vector<std::size_t> indices{0, 1, 2, 3};
  return verify_reduced_cn(restrict_to(schedule_propagator(schedule).matrix, indices), k, m, phase);
}

std::vector<SensitivityPoint> eta_sensitivity(const MagicEntry& entry,
                                              std::span<const double> deltas,
                                              const CouplingContext& ctx, double phase) {
  validate(entry);
  const CouplingContext nominal(entry.eta, ctx.g());
  const double tau =
      entry.noop_pulse_area / rabi_frequency(entry.noop_level, entry.noop_level, nominal);
  const JointSpace space(1, std::max(entry.noop_level, entry.flip_level) + 1);
  const std::vector<std::size_t> indices = reduced_cn_indices(entry, space);
  const ComplexMatrix target = reduced_cn_target(entry.k, entry.m, phase, flip_sign_of(entry));

  std::vector<SensitivityPoint> points;
  for (double delta : deltas) {
    const CouplingContext actual(entry.eta + delta, ctx.g());
    const Pulse pulse(0, 0, phase, tau * rabi_frequency(0, 0, actual), actual);
    const ComplexMatrix logical = restrict_to(rwa_propagator(pulse, space).matrix, indices);
    points.push_back({delta, 1.0 - gate_fidelity(target, logical)});
  }
  return points;
}

std::vector<std::size_t> two_ion_logical_indices(int control_ion, int target_ion,
                                                 const JointSpace& space) {
  std::vector<std::size_t> indices;
  for (unsigned c = 0; c < 2; ++c) {
    for (unsigned t = 0; t < 2; ++t) {
      indices.push_back(space.index(0, (c << control_ion) | (t << target_ion)));
    }
  }
  std::sort(indices.begin(), indices.end());
  return indices;
}

ComplexMatrix two_ion_cn_target(int control_ion, int target_ion, const MagicEntry& entry,
                                const JointSpace& space, double gate_phase) {
  const std::vector<std::size_t> indices = two_ion_logical_indices(control_ion, target_ion, space);
  const Eigen::Matrix4cd flip =
      reduced_cn_target(entry.k, entry.m, gate_phase, flip_sign_of(entry));
  const unsigned control_bit = 1u << control_ion;
  const unsigned target_bit = 1u << target_ion;
  ComplexMatrix t = ComplexMatrix::Zero(4, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    const unsigned spins = space.spins_of(indices[c]);
    if (!(spins & control_bit)) {
      t(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c)) = 1.0;
      continue;
    }
    const unsigned flipped = spins ^ target_bit;
    const auto r = static_cast<Eigen::Index>(
        std::find(indices.begin(), indices.end(), space.index(0, flipped)) - indices.begin());
    // down -> up picks the (3,2) entry of the single-ion block, up -> down the (2,3) entry.
    t(r, static_cast<Eigen::Index>(c)) = (spins & target_bit) ? flip(2, 3) : flip(3, 2);
  }
  return t;
}

std::map<std::string, std::string> cnot_truth(int control_ion, int target_ion,
                                              const JointSpace& space) {
  std::map<std::string, std::string> table;
  for (std::size_t index : two_ion_logical_indices(control_ion, target_ion, space)) {
    const unsigned spins = space.spins_of(index);
    const unsigned out = (spins >> control_ion) & 1u ? spins ^ (1u << target_ion) : spins;
    table[space.label(index)] = space.label(space.index(0, out));
  }
  return table;
}

std::map<std::string, std::string> reduced_cn_truth(const MagicEntry& entry,
                                                    const JointSpace& space) {
  const std::vector<std::size_t> idx = reduced_cn_indices(entry, space);
  return {{space.label(idx[0]), space.label(idx[0])},
          {space.label(idx[1]), space.label(idx[1])},
          {space.label(idx[2]), space.label(idx[3])},
          {space.label(idx[3]), space.label(idx[2])}};
}

RwaValidityPoint rwa_validity(const MagicEntry& entry, double phase, const OracleOptions& options,
                              int fock_cutoff) {
  const int top = std::max(entry.noop_level, entry.flip_level);
  const JointSpace space(1, fock_cutoff > 0 ? fock_cutoff : default_oracle_cutoff(top));
  const std::vector<std::size_t> indices = reduced_cn_indices(entry, space);
  const Pulse pulse = reduced_cn_pulse(entry, phase);
  OracleEvolution evo = numeric_evolve(pulse, space, basis_columns(space, indices), options);
  const ComplexMatrix logical = restrict_rows(evo.states, indices);
  const ComplexMatrix target = reduced_cn_target(entry.k, entry.m, phase, flip_sign_of(entry));
  return RwaValidityPoint{options.omega_over_g, 1.0 - gate_fidelity(target, logical),
                          evo.step_change,      evo.top_leakage,
                          evo.steps,            evo.converged};
}

}  // namespace iongate
