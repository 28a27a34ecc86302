#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <doctest.h>
#include <json.hpp>

#include "iongate/dynamics.hpp"
#include "iongate/sequence.hpp"

using namespace iongate;

namespace {

constexpr double kPi = std::numbers::pi;

nlohmann::json golden_point(double omega_over_g) {
  std::ifstream in(std::string(IONGATE_TEST_DATA) + "/rwa_validity.json");
  REQUIRE(in);
  const nlohmann::json doc = nlohmann::json::parse(in);
  for (const auto& p : doc["points"]) {
    if (p["omega_over_g"].get<double>() == omega_over_g) return p;
  }
  FAIL("no golden point");
  return {};
}

}  // namespace

TEST_CASE("oracle: vanishing motional coupling reproduces the RWA carrier") {
  const JointSpace space(1, 4);
  const Pulse pulse(0, 0, 0.3, kPi, CouplingContext(1e-6));
  OracleOptions options;
  options.omega_over_g = 100.0;
  const OracleResult numeric = numeric_propagator(pulse, space, options);
  const Propagator rwa = rwa_propagator(pulse, space);
  CHECK((numeric.propagator.matrix - rwa.matrix).cwiseAbs().maxCoeff() < 1e-7);
  CHECK(numeric.converged);
}

TEST_CASE("oracle: full propagator stays unitary and near the RWA result") {
  const JointSpace space(1, 6);
  const Pulse pulse(0, 0, 0.0, kPi, CouplingContext(std::sqrt(0.5)));
  OracleOptions options;
  options.omega_over_g = 200.0;
  const OracleResult numeric = numeric_propagator(pulse, space, options);
  CHECK(numeric.propagator.unitarity_error() < 1e-12);
  CHECK(numeric.integrator_defect > 0.0);
  CHECK(numeric.integrator_defect < 1e-6);
  const Propagator rwa = rwa_propagator(pulse, space);
  const double diff = (numeric.propagator.matrix - rwa.matrix).topLeftCorner(4, 4).cwiseAbs().maxCoeff();
  CHECK(diff < 0.05);
  CHECK(diff > 1e-6);  // the oracle does keep the off-resonant terms
}

TEST_CASE("oracle: reduced CN at omega/g = 1000 matches its golden value") {
  const MagicEntry entry{0, 1, 0, 1, magic_eta_01(0, 1), kPi};
  const nlohmann::json golden = golden_point(1000.0);
  OracleOptions options;
  options.omega_over_g = 1000.0;
  options.steps_per_trap_period = golden["steps_per_trap_period"].get<int>();
  const RwaValidityPoint point = rwa_validity(entry, 0.0, options);
  CHECK(point.infidelity < 1e-4);
  CHECK(point.infidelity ==
        doctest::Approx(golden["infidelity"].get<double>()).epsilon(1e-6));
  CHECK(point.step_change < 1e-9);
  CHECK(point.top_leakage < 1e-10);
  CHECK(point.converged);
}

TEST_CASE("oracle: infidelity falls as the trap frequency grows") {
  const MagicEntry entry{0, 1, 0, 1, magic_eta_01(0, 1), kPi};
  OracleOptions slow;
  slow.omega_over_g = 20.0;
  OracleOptions fast;
  fast.omega_over_g = 100.0;
  CHECK(rwa_validity(entry, 0.0, fast).infidelity < rwa_validity(entry, 0.0, slow).infidelity);
}

TEST_CASE("oracle: red-sideband map pulse transfers |0,u> to |1,d>") {
  const JointSpace space(1, default_oracle_cutoff(1));
  const Pulse pulse(0, -1, 0.0, kPi / 2, CouplingContext(0.1));
  ComplexMatrix initial = ComplexMatrix::Zero(static_cast<Eigen::Index>(space.dim()), 1);
  initial(static_cast<Eigen::Index>(space.parse_label("0u")), 0) = 1.0;
  OracleOptions options;
  options.omega_over_g = 1000.0;
  options.check_convergence = false;
  const OracleEvolution evo = numeric_evolve(pulse, space, initial, options);
  CHECK(std::norm(evo.states(static_cast<Eigen::Index>(space.parse_label("1d")), 0)) > 0.99);
  CHECK(std::abs(evo.states.col(0).norm() - 1.0) < 1e-10);
}

TEST_CASE("oracle: a coarse step is flagged as unconverged") {
  const JointSpace space(1, 4);
  const Pulse pulse(0, 0, 0.0, kPi, CouplingContext(0.7));
  OracleOptions options;
  options.omega_over_g = 50.0;
  options.steps_per_trap_period = 3;
  const OracleResult r = numeric_propagator(pulse, space, options);
  CHECK_FALSE(r.converged);
  CHECK(r.step_change > 1e-8);
}

TEST_CASE("oracle: argument validation") {
  const JointSpace space(1, 4);
  const Pulse pulse(0, 0, 0.0, kPi, CouplingContext(0.7));
  OracleOptions bad;
  bad.omega_over_g = 0.0;
  CHECK_THROWS_AS(numeric_propagator(pulse, space, bad), std::domain_error);
  bad = OracleOptions{};
  bad.steps_per_trap_period = 0;
  CHECK_THROWS_AS(numeric_propagator(pulse, space, bad), std::domain_error);
  CHECK_THROWS_AS(numeric_propagator(Pulse(2, 0, 0.0, 1.0, CouplingContext(0.7)), space),
                  std::out_of_range);
  CHECK_THROWS_AS(numeric_evolve(pulse, space, ComplexMatrix::Identity(3, 3)), std::invalid_argument);
}
