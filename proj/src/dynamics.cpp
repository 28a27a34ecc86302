#include "iongate/dynamics.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "iongate/specfun.hpp"

namespace iongate {

JointSpace::JointSpace(int n_ions, int fock_cutoff) : n_ions_(n_ions), fock_cutoff_(fock_cutoff) {
  if (n_ions < 1 || n_ions > 16) throw std::domain_error("JointSpace: n_ions must be in [1, 16]");
  if (fock_cutoff < 1) throw std::domain_error("JointSpace: fock_cutoff must be >= 1");
}

std::size_t JointSpace::index(int fock, unsigned spin_bits) const {
  if (fock < 0 || fock >= fock_cutoff_ || spin_bits >= spin_states()) {
    throw std::out_of_range("JointSpace: basis state out of range");
  }
  return static_cast<std::size_t>(fock) * spin_states() + spin_bits;
}

std::string JointSpace::label(std::size_t index) const {
  std::string out = std::to_string(fock_of(index));
  const unsigned spins = spins_of(index);
  for (int j = 0; j < n_ions_; ++j) out += ((spins >> j) & 1u) ? 'u' : 'd';
  return out;
}

std::size_t JointSpace::parse_label(std::string_view label) const {
  auto fail = [&]() -> std::size_t {
    throw std::invalid_argument("unknown basis label '" + std::string(label) + "'");
  };
  std::size_t pos = 0;
  long fock = 0;
  while (pos < label.size() && label[pos] >= '0' && label[pos] <= '9') {
    fock = fock * 10 + (label[pos] - '0');
    if (fock > 1'000'000) return fail();
    ++pos;
  }
  if (pos == 0) return fail();

  unsigned spins = 0;
  int ion = 0;
  constexpr std::string_view kDownArrow = "↓";
  constexpr std::string_view kUpArrow = "↑";
  while (pos < label.size()) {
    const std::string_view rest = label.substr(pos);
    bool up = false;
    if (rest[0] == 'd' || rest[0] == 'D') {
      pos += 1;
    } else if (rest[0] == 'u' || rest[0] == 'U') {
      up = true;
      pos += 1;
    } else if (rest.starts_with(kDownArrow)) {
      pos += kDownArrow.size();
    } else if (rest.starts_with(kUpArrow)) {
      up = true;
      pos += kUpArrow.size();
    } else {
      return fail();
    }
    if (ion >= n_ions_) return fail();
    if (up) spins |= 1u << ion;
    ++ion;
  }
  if (ion != n_ions_ || fock >= fock_cutoff_) return fail();
  return index(static_cast<int>(fock), spins);
}

Propagator Propagator::identity(const JointSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return Propagator{space, ComplexMatrix::Identity(d, d)};
}

double Propagator::unitarity_error() const {
  const ComplexMatrix defect =
      matrix.adjoint() * matrix - ComplexMatrix::Identity(matrix.rows(), matrix.cols());
  return defect.cwiseAbs().maxCoeff();
}

StateVector::StateVector(const JointSpace& space, ComplexVector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
    throw std::invalid_argument("StateVector: amplitude count does not match the space");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("StateVector: amplitudes must have unit norm");
  }
}

StateVector StateVector::basis(const JointSpace& space, std::size_t index) {
  if (index >= space.dim()) throw std::out_of_range("StateVector: basis index out of range");
  ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(space.dim()));
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(space, std::move(amps));
}

StateVector StateVector::basis(const JointSpace& space, std::string_view label) {
  return basis(space, space.parse_label(label));
}

double StateVector::fock_population(int n) const {
  double total = 0.0;
  for (unsigned s = 0; s < space_.spin_states(); ++s) total += population(space_.index(n, s));
  return total;
}

void StateVector::apply(const Propagator& propagator) {
  if (!(propagator.space == space_)) {
    throw std::invalid_argument("StateVector: propagator acts on a different space");
  }
  amplitudes_ = propagator.matrix * amplitudes_;
}

Pulse::Pulse(int target_ion, int sideband_order, double phase, double pulse_area,
             CouplingContext ctx)
    : target_ion_(target_ion), sideband_order_(sideband_order), pulse_area_(pulse_area),
      ctx_(ctx) {
  if (target_ion < 0) throw std::domain_error("Pulse: target ion must be >= 0");
  if (!std::isfinite(pulse_area) || pulse_area < 0.0) {
    throw std::domain_error("Pulse: pulse area must be finite and >= 0");
  }
  if (!std::isfinite(phase)) throw std::domain_error("Pulse: phase must be finite");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  phase_ = std::fmod(phase, kTwoPi);
  if (phase_ < 0.0) phase_ += kTwoPi;
  if (phase_ >= kTwoPi) phase_ = 0.0;
}

double Pulse::reference_rabi() const {
  return rabi_frequency(0, std::abs(sideband_order_), ctx_);
}

Complex displacement_element(int n_to, int n_from, double eta) {
  const int n_lo = std::min(n_to, n_from);
  const int n_hi = std::max(n_to, n_from);
  const int dn = n_hi - n_lo;
  const double eta2 = eta * eta;
  const double magnitude = std::exp(-0.5 * eta2) * std::pow(eta, dn) *
                           sqrt_factorial_ratio(n_lo, n_hi) * laguerre(n_lo, dn, eta2);
  // i^dn
  static constexpr Complex kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowersOfI[dn % 4] * magnitude;
}

ComplexMatrix displacement_matrix(double eta, int fock_cutoff) {
  if (fock_cutoff < 1) throw std::domain_error("displacement_matrix: cutoff must be >= 1");
  if (!(eta >= 0.0)) throw std::domain_error("displacement_matrix: eta must be >= 0");
  ComplexMatrix d(fock_cutoff, fock_cutoff);
  for (int r = 0; r < fock_cutoff; ++r) {
    for (int c = 0; c < fock_cutoff; ++c) d(r, c) = displacement_element(r, c, eta);
  }
  return d;
}

namespace {

// exp(i tau (c S+ + c^* S-)) on {down, up}, with c the coupling rate.
Eigen::Matrix2cd two_level_unitary(Complex coupling, double tau) {
  const double rate = std::abs(coupling);
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  if (rate == 0.0) return u;
  const double angle = rate * tau;
  const Complex unit = coupling / rate;
  const Complex i_sin{0.0, std::sin(angle)};
  u(0, 0) = std::cos(angle);
  u(1, 1) = std::cos(angle);
  u(1, 0) = i_sin * unit;
  u(0, 1) = i_sin * std::conj(unit);
  return u;
}

Complex block_coupling(int n_from, int n_to, const Pulse& pulse) {
  const CouplingContext& ctx = pulse.coupling();
  return ctx.g() * displacement_element(n_to, n_from, ctx.eta()) *
         std::polar(1.0, -pulse.phase());
}

}  // namespace

Eigen::Matrix2cd carrier_block_unitary(int n, const Pulse& pulse) {
  if (pulse.sideband_order() != 0) {
    throw std::invalid_argument("carrier_block_unitary: pulse is not a carrier pulse");
  }
  if (n < 0) throw std::domain_error("carrier_block_unitary: Fock level must be >= 0");
  return two_level_unitary(block_coupling(n, n, pulse), pulse.duration());
}

ComplexMatrix sideband_block_unitary(int n, const Pulse& pulse, int fock_cutoff) {
  const int s = pulse.sideband_order();
  if (s == 0) throw std::invalid_argument("sideband_block_unitary: pulse is a carrier pulse");
  if (n < 0) throw std::domain_error("sideband_block_unitary: Fock level must be >= 0");
  const int partner = n + s;
  if (partner < 0 || partner >= fock_cutoff) return ComplexMatrix::Identity(1, 1);
  return two_level_unitary(block_coupling(n, partner, pulse), pulse.duration());
}

Propagator rwa_propagator(const Pulse& pulse, const JointSpace& space) {
  if (pulse.target_ion() >= space.n_ions()) {
    throw std::out_of_range("rwa_propagator: target ion " + std::to_string(pulse.target_ion()) +
                            " is not in a space of " + std::to_string(space.n_ions()) + " ions");
  }
  Propagator prop = Propagator::identity(space);
  const unsigned target_bit = 1u << pulse.target_ion();
  const int cutoff = space.fock_cutoff();
  const int s = pulse.sideband_order();

  for (int n = 0; n < cutoff; ++n) {
    const int partner = n + s;
    if (partner < 0 || partner >= cutoff) continue;
    const Eigen::Matrix2cd block =
        s == 0 ? carrier_block_unitary(n, pulse)
               : Eigen::Matrix2cd(sideband_block_unitary(n, pulse, cutoff));
    for (unsigned spins = 0; spins < space.spin_states(); ++spins) {
      if (spins & target_bit) continue;
      const auto lo = static_cast<Eigen::Index>(space.index(n, spins));
      const auto hi = static_cast<Eigen::Index>(space.index(partner, spins | target_bit));
      prop.matrix(lo, lo) = block(0, 0);
      prop.matrix(lo, hi) = block(0, 1);
      prop.matrix(hi, lo) = block(1, 0);
      prop.matrix(hi, hi) = block(1, 1);
    }
  }
  return prop;
}

}  // namespace iongate
