#include "iongate/coupling.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "iongate/specfun.hpp"

namespace iongate {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

void PhysicalParams::validate() const {
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  require(std::isfinite(trap_frequency) && trap_frequency > 0.0,
          "trap_frequency must be positive");
  require(std::isfinite(internal_splitting) && internal_splitting > 0.0,
          "internal_splitting must be positive");
  require(std::isfinite(wavevector) && wavevector >= 0.0, "wavevector must be nonnegative");
  if (raman) require(raman->detuning != 0.0, "raman detuning must be nonzero");
  if (rf_drive) require(*rf_drive > trap_frequency, "rf_drive must exceed trap_frequency");
}

CouplingContext::CouplingContext(double eta, double g) : eta_(eta), g_(g) {
  require(std::isfinite(eta) && eta > 0.0, "coupling context: eta must be finite and positive");
  require(std::isfinite(g) && g > 0.0, "coupling context: g must be finite and positive");
}

double zero_point_spread(double mass, double trap_frequency) {
  require(std::isfinite(mass) && mass > 0.0, "zero_point_spread: mass must be positive");
  require(std::isfinite(trap_frequency) && trap_frequency > 0.0,
          "zero_point_spread: trap_frequency must be positive");
  return std::sqrt(kHbar / (2.0 * mass * trap_frequency));
}

double lamb_dicke(const PhysicalParams& params) {
  params.validate();
  require(params.wavevector > 0.0, "lamb_dicke: wavevector must be nonzero for motional coupling");
  return params.wavevector * zero_point_spread(params.mass, params.trap_frequency);
}

double raman_effective_g(double g1, double g2, double detuning) {
  require(detuning != 0.0, "raman_effective_g: detuning must be nonzero");
  return g1 * g2 / detuning;
}

double micromotion_corrected_eta(double eta, double trap_frequency, double rf_drive) {
  require(trap_frequency > 0.0, "micromotion_corrected_eta: trap_frequency must be positive");
  require(rf_drive > trap_frequency, "micromotion_corrected_eta: rf_drive must exceed trap_frequency");
  return eta * (1.0 - trap_frequency / (2.0 * std::numbers::sqrt2 * rf_drive));
}

CouplingContext coupling_context(const PhysicalParams& params) {
  double eta = lamb_dicke(params);
  if (params.rf_drive) eta = micromotion_corrected_eta(eta, params.trap_frequency, *params.rf_drive);
  const double g = params.raman
                       ? std::abs(raman_effective_g(params.raman->g1, params.raman->g2,
                                                    params.raman->detuning))
                       : params.dipole_coupling;
  return CouplingContext(eta, g);
}

double signed_rabi_frequency(int n_from, int n_to, const CouplingContext& ctx) {
  if (n_from < 0 || n_to < 0) throw std::domain_error("rabi_frequency: Fock levels must be >= 0");
  const int n_lo = std::min(n_from, n_to);
  const int n_hi = std::max(n_from, n_to);
  const int dn = n_hi - n_lo;
  const double eta2 = ctx.eta() * ctx.eta();
  return ctx.g() * std::exp(-0.5 * eta2) * std::pow(ctx.eta(), dn) *
         sqrt_factorial_ratio(n_lo, n_hi) * laguerre(n_lo, dn, eta2);
}

double rabi_frequency(int n_from, int n_to, const CouplingContext& ctx) {
  return std::abs(signed_rabi_frequency(n_from, n_to, ctx));
}

}  // namespace iongate
