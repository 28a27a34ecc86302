#include "iongate/serialize.hpp"

#include <stdexcept>

namespace iongate {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw std::invalid_argument(std::string("schedule: missing field '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("schedule: field '") + key + "' has the wrong type");
  }
}

}  // namespace

json matrix_to_json(const ComplexMatrix& matrix) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      row.push_back({matrix(r, c).real(), matrix(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& doc) {
  if (!doc.is_array()) throw std::invalid_argument("matrix: expected a list of rows");
  const auto rows = static_cast<Eigen::Index>(doc.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(doc.at(0).size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = doc.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix: rows must be lists of equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row.at(static_cast<std::size_t>(c));
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw std::invalid_argument("matrix: entries must be [re, im] pairs");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json schedule_to_json(const Schedule& schedule, const std::optional<std::string>& input) {
  json pulses = json::array();
  for (const Pulse& p : schedule.pulses) {
    pulses.push_back({{"ion", p.target_ion()},
                      {"sideband_order", p.sideband_order()},
                      {"phase_rad", p.phase()},
                      {"pulse_area_rad", p.pulse_area()},
                      {"eta", p.coupling().eta()},
                      {"g", p.coupling().g()}});
  }
  json doc = {{"schema", kSchema},
              {"space",
               {{"n_ions", schedule.space.n_ions()}, {"fock_cutoff", schedule.space.fock_cutoff()}}},
              {"pulses", std::move(pulses)}};
  if (input) doc["input"] = *input;
  return doc;
}

ScheduleDocument schedule_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("schedule: document must be an object");
  if (doc.contains("schema") && doc["schema"] != kSchema) {
    throw std::invalid_argument("schedule: unsupported schema " + doc["schema"].dump());
  }
  const json& space_doc = doc.contains("space") ? doc["space"] : json();
  const JointSpace space(field<int>(space_doc, "n_ions"), field<int>(space_doc, "fock_cutoff"));

  std::vector<Pulse> pulses;
  if (!doc.contains("pulses") || !doc["pulses"].is_array()) {
    throw std::invalid_argument("schedule: missing field 'pulses'");
  }
  for (const json& p : doc["pulses"]) {
    pulses.emplace_back(field<int>(p, "ion"), field<int>(p, "sideband_order"),
                        field<double>(p, "phase_rad"), field<double>(p, "pulse_area_rad"),
                        CouplingContext(field<double>(p, "eta"),
                                        p.contains("g") ? field<double>(p, "g") : 1.0));
  }
  ScheduleDocument out{Schedule{space, std::move(pulses)}, std::nullopt};
  out.schedule.validate();
  if (doc.contains("input")) out.input = field<std::string>(doc, "input");
  return out;
}

json to_json(const MagicEntry& entry) {
  return {{"k", entry.k},
          {"m", entry.m},
          {"n_a", entry.noop_level},
          {"n_b", entry.flip_level},
          {"rotation_a_pi", 2 * entry.m},
          {"rotation_b_pi", 2 * entry.k + 1},
          {"eta", entry.eta},
          {"noop_pulse_area_rad", entry.noop_pulse_area}};
}

json to_json(const TruthTableReport& report) {
  json rows = json::array();
  for (const TruthTableRow& row : report.rows) {
    json outputs = json::object();
    for (const auto& [label, p] : row.outputs) outputs[label] = p;
    rows.push_back({{"input", row.input}, {"populations", std::move(outputs)}, {"leakage", row.leakage}});
  }
  return {{"labels", report.labels}, {"rows", std::move(rows)}, {"max_leakage", report.max_leakage}};
}

json to_json(const FidelityReport& report) {
  return {{"target", report.target_name},
          {"fidelity", report.fidelity},
          {"infidelity", report.infidelity},
          {"max_deviation", report.max_deviation}};
}

}  // namespace iongate
