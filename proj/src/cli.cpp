#include "iongate/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "iongate/coupling.hpp"
#include "iongate/magic.hpp"
#include "iongate/sequence.hpp"
#include "iongate/serialize.hpp"

namespace iongate::cli {

using nlohmann::json;

namespace {

// A user-facing input problem detected after parsing; reported with exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { text, csv, structured };

struct Common {
  Format format = Format::text;
  std::string output_path;
  int precision = 6;
};

struct Emitted {
  std::string document;
  int status = kOk;
};

class Printer {
 public:
  explicit Printer(int precision) : precision_(precision) {}

  std::string fixed(double v) const { return format(v, std::ios::fixed); }
  std::string sci(double v) const { return format(v, std::ios::scientific); }

 private:
  std::string format(double v, std::ios::fmtflags flags) const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.setf(flags, std::ios::floatfield);
    os << std::setprecision(precision_) << (v == 0.0 ? 0.0 : v);
    return os.str();
  }

  int precision_;
};

// Right-aligned columns separated by two spaces.
std::string aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += "  ";
      out += std::string(widths[c] - row[c].size(), ' ') + row[c];
    }
    out += '\n';
  }
  return out;
}

std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

std::string table(const Common& common, const std::vector<std::vector<std::string>>& rows) {
  return common.format == Format::csv ? csv(rows) : aligned(rows);
}

std::string structured(const std::string& command, json body) {
  json doc = {{"schema", kSchema}, {"command", command}};
  doc.update(body);
  return doc.dump(2) + "\n";
}

std::string pi_multiple(int n) { return std::to_string(n) + "pi"; }

double angle_flag(const std::string& text, const char* flag) {
  try {
    return parse_angle(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": '" + text + "' is not an angle");
  }
}

MagicEntry table_entry(int k, int m) {
  if (k >= m) throw UsageError("--k: must be smaller than --m");
  return MagicEntry{k, m, 0, 1, magic_eta_01(k, m), m * std::numbers::pi};
}

std::vector<std::vector<std::string>> matrix_rows(const ComplexMatrix& u, const Printer& p) {
  std::vector<std::vector<std::string>> rows{{"row", "col", "re", "im"}};
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      rows.push_back({std::to_string(r), std::to_string(c), p.fixed(u(r, c).real()),
                      p.fixed(u(r, c).imag())});
    }
  }
  return rows;
}

std::string truth_table_text(const Common& common, const TruthTableReport& report,
                             const Printer& p) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"input"};
  header.insert(header.end(), report.labels.begin(), report.labels.end());
  header.push_back("leakage");
  rows.push_back(std::move(header));
  for (const TruthTableRow& row : report.rows) {
    std::vector<std::string> line{row.input};
    for (const auto& entry : row.outputs) line.push_back(p.fixed(entry.second));
    line.push_back(p.sci(row.leakage));
    rows.push_back(std::move(line));
  }
  return table(common, rows);
}

// magic-table ---------------------------------------------------------------

struct MagicTableArgs {
  int k_max = 0;
  int m_max = 1;
  std::vector<int> pair;
  bool swapped = false;
  int span = 0;
  double search_max = kDefaultSearchMax;
};

Emitted run_magic_table(const MagicTableArgs& a, const Common& common) {
  std::vector<MagicEntry> entries;
  if (a.pair.empty()) {
    entries = magic_table(a.k_max, a.m_max, a.swapped);
  } else {
    if (a.pair[0] == a.pair[1]) throw UsageError("--pair: levels must differ");
    const int noop = a.swapped ? a.pair[1] : a.pair[0];
    const int flip = a.swapped ? a.pair[0] : a.pair[1];
    entries = magic_table_pair(noop, flip, a.k_max, a.m_max, a.search_max);
  }
  if (a.span > 0) {
    std::erase_if(entries, [&](const MagicEntry& e) { return e.m - e.k > a.span; });
  }

  const Printer p(common.precision);
  if (common.format == Format::structured) {
    json list = json::array();
    for (const MagicEntry& e : entries) list.push_back(to_json(e));
    return {structured("magic-table", {{"entries", std::move(list)}})};
  }
  std::vector<std::vector<std::string>> rows{
      {"k", "rotation_b", "m", "rotation_a", "n_a", "n_b", "eta"}};
  const Printer eta_printer(6);
  for (const MagicEntry& e : entries) {
    rows.push_back({std::to_string(e.k), pi_multiple(2 * e.k + 1), std::to_string(e.m),
                    pi_multiple(2 * e.m), std::to_string(e.noop_level),
                    std::to_string(e.flip_level), eta_printer.fixed(e.eta)});
  }
  return {table(common, rows)};
}

// rabi ----------------------------------------------------------------------

struct RabiArgs {
  std::optional<double> eta;
  int n = 0;
  int n_prime = 0;
  std::optional<double> g;
  std::optional<double> mass, trap_frequency, wavevector, splitting, rf_drive;
  std::optional<double> raman_g1, raman_g2, raman_detuning;
};

Emitted run_rabi(const RabiArgs& a, const Common& common) {
  const bool physical = a.mass || a.trap_frequency || a.wavevector;
  if (physical == a.eta.has_value()) {
    throw UsageError("--eta: give either --eta or --mass/--trap-freq/--wavevector/--splitting");
  }
  std::optional<CouplingContext> ctx;
  if (a.eta) {
    if (!(*a.eta > 0.0)) throw UsageError("--eta: must be positive");
    ctx.emplace(*a.eta, a.g.value_or(1.0));
  } else {
    if (!a.mass || !a.trap_frequency || !a.wavevector || !a.splitting) {
      throw UsageError("--mass: physical mode needs --mass, --trap-freq, --wavevector and --splitting");
    }
    PhysicalParams params;
    params.mass = *a.mass;
    params.trap_frequency = *a.trap_frequency;
    params.wavevector = *a.wavevector;
    params.internal_splitting = *a.splitting;
    params.dipole_coupling = a.g.value_or(1.0);
    params.rf_drive = a.rf_drive;
    const int raman_flags = !!a.raman_g1 + !!a.raman_g2 + !!a.raman_detuning;
    if (raman_flags != 0 && raman_flags != 3) {
      throw UsageError("--raman-g1: Raman mode needs --raman-g1, --raman-g2 and --raman-detuning");
    }
    if (raman_flags == 3) params.raman = RamanBeams{*a.raman_g1, *a.raman_g2, *a.raman_detuning};
    if (params.rf_drive && !(*params.rf_drive > params.trap_frequency)) {
      throw UsageError("--rf-drive: must exceed --trap-freq");
    }
    if (params.raman && params.raman->detuning == 0.0) {
      throw UsageError("--raman-detuning: must be nonzero");
    }
    if (!(params.wavevector > 0.0)) throw UsageError("--wavevector: must be positive");
    ctx.emplace(coupling_context(params));
  }

  const double omega = rabi_frequency(a.n, a.n_prime, *ctx);
  const Printer p(common.precision);
  if (common.format == Format::structured) {
    return {structured("rabi", {{"eta", ctx->eta()},
                                {"g", ctx->g()},
                                {"n", a.n},
                                {"nprime", a.n_prime},
                                {"rabi_frequency", omega}})};
  }
  return {table(common, {{"eta", "g", "n", "nprime", "rabi_frequency"},
                         {p.fixed(ctx->eta()), p.fixed(ctx->g()), std::to_string(a.n),
                          std::to_string(a.n_prime), p.fixed(omega)}})};
}

// gate ----------------------------------------------------------------------

struct GateArgs {
  int k = 0;
  int m = 1;
  std::string phi = "0";
  std::optional<double> eta;
  double tol = 1e-12;
};

Emitted run_gate(const GateArgs& a, const Common& common) {
  const MagicEntry entry = table_entry(a.k, a.m);
  const double phi = angle_flag(a.phi, "--phi");
  const double eta = a.eta.value_or(entry.eta);
  if (!(eta > 0.0)) throw UsageError("--eta: must be positive");

  // Nominal pulse (Omega_{0,0} tau = m pi) at the requested eta.
  const Pulse pulse(0, 0, phi, entry.noop_pulse_area, CouplingContext(eta));
  const Schedule schedule{JointSpace(1, 2), {pulse}};
  const ComplexMatrix u = schedule_propagator(schedule).matrix;
  const FidelityReport report = verify_eq6(schedule, a.k, a.m, phi);
  const bool ok = report.max_deviation <= a.tol;

  const Printer p(common.precision);
  std::string doc;
  if (common.format == Format::structured) {
    doc = structured("gate", {{"k", a.k},
                              {"m", a.m},
                              {"phi_rad", phi},
                              {"eta", eta},
                              {"basis", {"0d", "0u", "1d", "1u"}},
                              {"unitary", matrix_to_json(u)},
                              {"report", to_json(report)},
                              {"tolerance", a.tol},
                              {"pass", ok}});
  } else {
    std::vector<std::vector<std::string>> summary{
        {"k", "m", "phi_rad", "eta", "fidelity", "max_deviation", "pass"},
        {std::to_string(a.k), std::to_string(a.m), p.fixed(phi), p.fixed(eta),
         p.fixed(report.fidelity), p.sci(report.max_deviation), ok ? "true" : "false"}};
    doc = table(common, summary) + (common.format == Format::csv ? "" : "\n") +
          table(common, matrix_rows(u, p));
  }
  return {doc, ok ? kOk : kVerificationFailed};
}

// sequence ------------------------------------------------------------------

struct OracleArgs {
  bool oracle = false;
  double omega_over_g = 1000.0;
  int steps_per_period = OracleOptions{}.steps_per_trap_period;

  std::optional<OracleOptions> options() const {
    if (!oracle) return std::nullopt;
    OracleOptions o;
    o.omega_over_g = omega_over_g;
    o.steps_per_trap_period = steps_per_period;
    return o;
  }
};

struct SequenceArgs {
  std::string file;
  std::string input;
  OracleArgs oracle;
};

Emitted run_sequence(const SequenceArgs& a, const Common& common) {
  std::ifstream in(a.file);
  if (!in) throw UsageError("--file: cannot open '" + a.file + "'");
  std::optional<ScheduleDocument> parsed;
  try {
    parsed = schedule_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw UsageError("--file: " + std::string(e.what()));
  } catch (const std::exception& e) {
    throw UsageError("--file: " + std::string(e.what()));
  }
  const ScheduleDocument& doc = *parsed;
  const std::string input = !a.input.empty() ? a.input : doc.input.value_or("");
  if (input.empty()) throw UsageError("--input: no input basis label given");
  std::size_t index = 0;
  try {
    index = doc.schedule.space.parse_label(input);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--input: " + std::string(e.what()));
  }

  const JointSpace& space = doc.schedule.space;
  ComplexMatrix initial = ComplexMatrix::Zero(static_cast<Eigen::Index>(space.dim()), 1);
  initial(static_cast<Eigen::Index>(index), 0) = 1.0;
  OracleDiagnostics diag;
  const ComplexMatrix final_state = evolve_columns(doc.schedule, initial, a.oracle.options(), &diag);
  const bool ok = !a.oracle.oracle || (diag.converged && diag.top_leakage < 1e-10);

  const Printer p(common.precision);
  if (common.format == Format::structured) {
    json amps = json::array();
    for (Eigen::Index r = 0; r < final_state.rows(); ++r) {
      const Complex v = final_state(r, 0);
      amps.push_back({{"label", space.label(static_cast<std::size_t>(r))},
                      {"amplitude", {v.real(), v.imag()}},
                      {"population", std::norm(v)}});
    }
    json body = {{"input", space.label(index)},
                 {"propagation", a.oracle.oracle ? "oracle" : "rwa"},
                 {"state", std::move(amps)},
                 {"norm", final_state.col(0).norm()}};
    if (a.oracle.oracle) {
      body["oracle"] = {{"omega_over_g", a.oracle.omega_over_g},
                        {"steps", diag.steps},
                        {"step_change", diag.step_change},
                        {"converged", diag.converged},
                        {"top_leakage", diag.top_leakage},
                        {"integrator_defect", diag.integrator_defect}};
    }
    return {structured("sequence", std::move(body)), ok ? kOk : kVerificationFailed};
  }
  std::vector<std::vector<std::string>> rows{{"label", "re", "im", "population"}};
  for (Eigen::Index r = 0; r < final_state.rows(); ++r) {
    const Complex v = final_state(r, 0);
    rows.push_back({space.label(static_cast<std::size_t>(r)), p.fixed(v.real()), p.fixed(v.imag()),
                    p.fixed(std::norm(v))});
  }
  std::string text = table(common, rows);
  if (a.oracle.oracle && common.format == Format::text) {
    text += "\noracle steps=" + std::to_string(diag.steps) + " step_change=" +
            p.sci(diag.step_change) + " top_leakage=" + p.sci(diag.top_leakage) +
            " converged=" + (diag.converged ? "true" : "false") + "\n";
  }
  return {text, ok ? kOk : kVerificationFailed};
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  int k = 0;
  int m = 1;
  std::string phi = "0";
  bool two_ion = false;
  int fock = 0;
  double tol = 1e-12;
  OracleArgs oracle;
};

Emitted run_verify(const VerifyArgs& a, const Common& common) {
  const MagicEntry entry = table_entry(a.k, a.m);
  const double phi = angle_flag(a.phi, "--phi");
  Schedule schedule{JointSpace(1, 2), {}};
  std::map<std::string, std::string> expected;
  std::vector<std::string> labels;
  if (a.two_ion) {
    const JointSpace space(2, a.fock > 0 ? a.fock : 3);
    if (space.fock_cutoff() < 2) throw UsageError("--fock: must be >= 2");
    schedule = compose_cn(0, 1, entry, CouplingContext(entry.eta), space, phi);
    expected = cnot_truth(0, 1, space);
    for (std::size_t i : two_ion_logical_indices(0, 1, space)) labels.push_back(space.label(i));
  } else {
    const JointSpace space(1, a.fock > 0 ? a.fock : 2);
    if (space.fock_cutoff() < 2) throw UsageError("--fock: must be >= 2");
    schedule = Schedule{space, {reduced_cn_pulse(entry, phi)}};
    expected = reduced_cn_truth(entry, space);
    for (std::size_t i : reduced_cn_indices(entry, space)) labels.push_back(space.label(i));
  }
  const TruthTableReport report = truth_table(schedule, labels, a.oracle.options());
  const double deviation = report.max_deviation(expected);
  const bool ok = deviation <= a.tol;

  const Printer p(common.precision);
  if (common.format == Format::structured) {
    return {structured("verify", {{"k", a.k},
                                  {"m", a.m},
                                  {"phi_rad", phi},
                                  {"gate", a.two_ion ? "two-ion-cn" : "reduced-cn"},
                                  {"truth_table", to_json(report)},
                                  {"max_deviation", deviation},
                                  {"tolerance", a.tol},
                                  {"pass", ok}}),
            ok ? kOk : kVerificationFailed};
  }
  std::string text = truth_table_text(common, report, p);
  if (common.format == Format::text) {
    text += "\nmax_deviation=" + p.sci(deviation) + " pass=" + (ok ? "true" : "false") + "\n";
  }
  return {text, ok ? kOk : kVerificationFailed};
}

// sensitivity ---------------------------------------------------------------

struct SensitivityArgs {
  int k = 0;
  int m = 1;
  std::string phi = "0";
  std::vector<double> deltas;
};

Emitted run_sensitivity(const SensitivityArgs& a, const Common& common) {
  const MagicEntry entry = table_entry(a.k, a.m);
  const double phi = angle_flag(a.phi, "--phi");
  for (double d : a.deltas) {
    if (!std::isfinite(d) || !(entry.eta + d > 0.0)) {
      throw UsageError("--deltas: eta + delta must stay positive");
    }
  }
  const auto points = eta_sensitivity(entry, a.deltas, CouplingContext(entry.eta), phi);
  const Printer p(common.precision);
  if (common.format == Format::structured) {
    json list = json::array();
    for (const auto& pt : points) list.push_back({{"delta_eta", pt.delta_eta}, {"infidelity", pt.infidelity}});
    return {structured("sensitivity",
                       {{"k", a.k}, {"m", a.m}, {"eta", entry.eta}, {"points", std::move(list)}})};
  }
  std::vector<std::vector<std::string>> rows{{"delta_eta", "infidelity"}};
  for (const auto& pt : points) rows.push_back({p.sci(pt.delta_eta), p.sci(pt.infidelity)});
  return {table(common, rows)};
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty angle");

  double scale = 1.0;
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    scale = std::numbers::pi;
    s.remove_suffix(2);
    if (!s.empty() && s.back() == '*') s.remove_suffix(1);
    if (s.empty() || s == "+") return scale;
    if (s == "-") return -scale;
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw std::invalid_argument("bad angle '" + std::string(text) + "'");
  }
  return value * scale;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-pulse trapped-ion quantum logic toolkit", "iongate"};
  app.require_subcommand(1);

  Common common;
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "structured"}));
  app.add_option("--output", common.output_path, "Write the document to this file");
  app.add_option("--precision", common.precision, "Digits after the decimal point")
      ->check(CLI::Range(1, 17));

  auto add_oracle = [](CLI::App* sub, OracleArgs& o) {
    sub->add_flag("--oracle", o.oracle, "Use the time-dependent RK4 oracle");
    sub->add_option("--omega-over-g", o.omega_over_g, "Trap frequency over g for the oracle")
        ->check(CLI::PositiveNumber);
    sub->add_option("--steps-per-period", o.steps_per_period, "RK4 steps per trap period")
        ->check(CLI::Range(1, 1 << 20));
  };

  MagicTableArgs magic_args;
  auto* magic = app.add_subcommand("magic-table", "Magic Lamb-Dicke parameters");
  magic->add_option("--kmax", magic_args.k_max, "Largest k")->required()->check(CLI::Range(0, 1000));
  magic->add_option("--mmax", magic_args.m_max, "Largest m")->required()->check(CLI::Range(1, 1000));
  magic->add_option("--pair", magic_args.pair, "No-op and flip Fock levels")
      ->expected(2)
      ->check(CLI::Range(0, 30));
  magic->add_flag("--swapped", magic_args.swapped, "Swap the roles of the two Fock levels");
  magic->add_option("--span", magic_args.span, "Keep only m - k <= span")->check(CLI::Range(1, 1000));
  magic->add_option("--search-max", magic_args.search_max, "Upper end of the eta search")
      ->check(CLI::Range(1e-3, 10.0));

  RabiArgs rabi_args;
  auto* rabi = app.add_subcommand("rabi", "Fock-state dependent Rabi frequency");
  rabi->add_option("--eta", rabi_args.eta, "Lamb-Dicke parameter");
  rabi->add_option("--n", rabi_args.n, "Initial Fock level")->required()->check(CLI::Range(0, 150));
  rabi->add_option("--nprime", rabi_args.n_prime, "Final Fock level")
      ->required()
      ->check(CLI::Range(0, 150));
  rabi->add_option("--g", rabi_args.g, "Base Rabi frequency (rad/s)")->check(CLI::PositiveNumber);
  rabi->add_option("--mass", rabi_args.mass, "Total ion mass (kg)")->check(CLI::PositiveNumber);
  rabi->add_option("--trap-freq", rabi_args.trap_frequency, "Trap frequency (rad/s)")
      ->check(CLI::PositiveNumber);
  rabi->add_option("--wavevector", rabi_args.wavevector, "Effective wavevector (1/m)")
      ->check(CLI::PositiveNumber);
  rabi->add_option("--splitting", rabi_args.splitting, "Internal splitting (rad/s)")
      ->check(CLI::PositiveNumber);
  rabi->add_option("--rf-drive", rabi_args.rf_drive, "rf drive frequency (rad/s)")
      ->check(CLI::PositiveNumber);
  rabi->add_option("--raman-g1", rabi_args.raman_g1, "Raman beam 1 Rabi frequency (rad/s)");
  rabi->add_option("--raman-g2", rabi_args.raman_g2, "Raman beam 2 Rabi frequency (rad/s)");
  rabi->add_option("--raman-detuning", rabi_args.raman_detuning, "Raman detuning (rad/s)");

  GateArgs gate_args;
  auto* gate = app.add_subcommand("gate", "Simulate the single-pulse reduced CN unitary");
  gate->add_option("--k", gate_args.k, "Flip-level half rotations")->required()->check(CLI::Range(0, 1000));
  gate->add_option("--m", gate_args.m, "No-op level full rotations")->required()->check(CLI::Range(1, 1000));
  gate->add_option("--phi", gate_args.phi, "Laser phase (radians, 'pi' multiplier allowed)");
  gate->add_option("--eta", gate_args.eta, "Override the magic eta")->check(CLI::PositiveNumber);
  gate->add_option("--tol", gate_args.tol, "Allowed entrywise deviation")->check(CLI::PositiveNumber);

  SequenceArgs seq_args;
  auto* seq = app.add_subcommand("sequence", "Run a serialized pulse schedule");
  seq->add_option("--file", seq_args.file, "Schedule document")->required();
  seq->add_option("--input", seq_args.input, "Input basis label, e.g. 1d or 0ud");
  add_oracle(seq, seq_args.oracle);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Truth table of the reduced or two-ion CN");
  verify->add_option("--k", verify_args.k, "Flip-level half rotations")->required()->check(CLI::Range(0, 1000));
  verify->add_option("--m", verify_args.m, "No-op level full rotations")->required()->check(CLI::Range(1, 1000));
  verify->add_option("--phi", verify_args.phi, "Laser phase (radians, 'pi' multiplier allowed)");
  verify->add_flag("--two-ion", verify_args.two_ion, "Verify the three-pulse two-ion CN");
  verify->add_option("--fock", verify_args.fock, "Fock cutoff")->check(CLI::Range(2, 200));
  verify->add_option("--tol", verify_args.tol, "Allowed population deviation")->check(CLI::PositiveNumber);
  add_oracle(verify, verify_args.oracle);

  SensitivityArgs sens_args;
  auto* sens = app.add_subcommand("sensitivity", "Gate infidelity versus eta error");
  sens->add_option("--k", sens_args.k, "Flip-level half rotations")->required()->check(CLI::Range(0, 1000));
  sens->add_option("--m", sens_args.m, "No-op level full rotations")->required()->check(CLI::Range(1, 1000));
  sens->add_option("--phi", sens_args.phi, "Laser phase (radians, 'pi' multiplier allowed)");
  sens->add_option("--deltas", sens_args.deltas, "Eta perturbations")->required()->delimiter(',');

  for (CLI::App* sub : {magic, rabi, gate, seq, verify, sens}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  common.format = format == "csv" ? Format::csv
                  : format == "structured" ? Format::structured
                                           : Format::text;

  Emitted emitted;
  try {
    if (*magic) emitted = run_magic_table(magic_args, common);
    if (*rabi) emitted = run_rabi(rabi_args, common);
    if (*gate) emitted = run_gate(gate_args, common);
    if (*seq) emitted = run_sequence(seq_args, common);
    if (*verify) emitted = run_verify(verify_args, common);
    if (*sens) emitted = run_sensitivity(sens_args, common);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!common.output_path.empty()) {
    std::ofstream file(common.output_path, std::ios::binary);
    if (!file) {
      err << "error: --output: cannot write '" << common.output_path << "'\n";
      return kUsage;
    }
    file << emitted.document;
  } else {
    out << emitted.document;
  }
  return emitted.status;
}

}  // namespace iongate::cli
