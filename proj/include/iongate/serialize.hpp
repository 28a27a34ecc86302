#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iongate/magic.hpp"
#include "iongate/sequence.hpp"

namespace iongate {

inline constexpr const char* kSchema = "ion-gate-lab/1";

/// Row-major list of rows, each entry a [re, im] pair.
nlohmann::json matrix_to_json(const ComplexMatrix& matrix);
/// Throws std::invalid_argument on ragged or malformed input.
ComplexMatrix matrix_from_json(const nlohmann::json& doc);

/// A schedule file: the space, the ordered pulses, and optionally the basis
/// label of the input state.
struct ScheduleDocument {
  Schedule schedule;
  std::optional<std::string> input;
};

/// {"schema", "space": {"n_ions", "fock_cutoff"}, "pulses": [{"ion",
/// "sideband_order", "phase_rad", "pulse_area_rad", "eta", "g"}], "input"?}
nlohmann::json schedule_to_json(const Schedule& schedule,
                                const std::optional<std::string>& input = std::nullopt);
/// Throws std::invalid_argument naming the offending field.
ScheduleDocument schedule_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const MagicEntry& entry);
nlohmann::json to_json(const TruthTableReport& report);
nlohmann::json to_json(const FidelityReport& report);

}  // namespace iongate
