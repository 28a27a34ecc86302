#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "iongate/cli.hpp"
#include "iongate/serialize.hpp"

using namespace iongate;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("iongate_test_" + name);
}

}  // namespace

TEST_CASE("cli: parse_angle") {
  constexpr double pi = std::numbers::pi;
  CHECK(cli::parse_angle("0") == 0.0);
  CHECK(cli::parse_angle("1.5") == 1.5);
  CHECK(cli::parse_angle("pi") == pi);
  CHECK(cli::parse_angle("-pi") == -pi);
  CHECK(cli::parse_angle("0.25pi") == 0.25 * pi);
  CHECK(cli::parse_angle("3*pi") == 3 * pi);
  CHECK(cli::parse_angle("+2pi") == 2 * pi);
  CHECK_THROWS_AS(cli::parse_angle(""), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_angle("pie"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_angle("1.2.3"), std::invalid_argument);
}

TEST_CASE("cli: magic-table csv lists the tabulated operating points") {
  const Run r = invoke({"--format", "csv", "magic-table", "--kmax", "4", "--mmax", "7", "--span", "3"});
  REQUIRE(r.code == cli::kOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 16);
  CHECK(rows[0] == "k,rotation_b,m,rotation_a,n_a,n_b,eta");
  CHECK(rows[1] == "0,1pi,1,2pi,0,1,0.707107");
  CHECK(rows[15] == "4,9pi,7,14pi,0,1,0.597614");

  const Run all = invoke({"--format", "csv", "magic-table", "--kmax", "4", "--mmax", "7"});
  CHECK(lines(all.out).size() == 26);

  const Run swapped = invoke({"--format", "csv", "magic-table", "--kmax", "0", "--mmax", "1", "--swapped"});
  CHECK(swapped.code == cli::kOk);
  CHECK(lines(swapped.out).size() == 1);

  const Run pair = invoke({"--format", "csv", "magic-table", "--kmax", "0", "--mmax", "1", "--pair", "0", "2"});
  CHECK(pair.out.find("0.517638") != std::string::npos);
}

TEST_CASE("cli: magic-table structured output") {
  const Run r = invoke({"--format", "structured", "magic-table", "--kmax", "1", "--mmax", "2"});
  REQUIRE(r.code == cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema"] == kSchema);
  CHECK(doc["command"] == "magic-table");
  CHECK(doc["entries"].size() == 3);
}

TEST_CASE("cli: rabi") {
  const Run r = invoke({"--format", "csv", "rabi", "--eta", "0.707107", "--n", "0", "--nprime", "0"});
  REQUIRE(r.code == cli::kOk);
  CHECK(lines(r.out).at(1) == "0.707107,1.000000,0,0,0.778801");

  const Run phys = invoke({"--format", "structured", "rabi", "--mass", "1.5e-25", "--trap-freq",
                           "6.28e6", "--wavevector", "7.9e6", "--splitting", "1e15", "--n", "1",
                           "--nprime", "1"});
  REQUIRE(phys.code == cli::kOk);
  CHECK(nlohmann::json::parse(phys.out)["eta"].get<double>() > 0.0);

  const Run neg = invoke({"rabi", "--eta", "-1", "--n", "0", "--nprime", "0"});
  CHECK(neg.code == cli::kUsage);
  CHECK(neg.err.find("--eta") != std::string::npos);

  const Run both = invoke({"rabi", "--eta", "0.5", "--mass", "1e-25", "--n", "0", "--nprime", "0"});
  CHECK(both.code == cli::kUsage);

  const Run raman = invoke({"rabi", "--mass", "1.5e-25", "--trap-freq", "6.28e6", "--wavevector",
                            "7.9e6", "--splitting", "1e15", "--raman-g1", "1e8", "--n", "0",
                            "--nprime", "0"});
  CHECK(raman.code == cli::kUsage);
  CHECK(raman.err.find("--raman") != std::string::npos);
}

TEST_CASE("cli: gate verifies and fails with an off-magic eta") {
  const Run ok = invoke({"--format", "structured", "gate", "--k", "0", "--m", "1"});
  REQUIRE(ok.code == cli::kOk);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["report"]["max_deviation"].get<double>() < 1e-12);
  CHECK(doc["unitary"].size() == 4);

  const Run phased = invoke({"gate", "--k", "1", "--m", "3", "--phi", "0.25pi"});
  CHECK(phased.code == cli::kOk);

  const Run wrong = invoke({"gate", "--k", "0", "--m", "1", "--eta", "0.5"});
  CHECK(wrong.code == cli::kVerificationFailed);
  CHECK(wrong.out.find("false") != std::string::npos);

  const Run bad_phi = invoke({"gate", "--k", "0", "--m", "1", "--phi", "abc"});
  CHECK(bad_phi.code == cli::kUsage);
  CHECK(bad_phi.err.find("--phi") != std::string::npos);

  const Run bad_km = invoke({"gate", "--k", "2", "--m", "1"});
  CHECK(bad_km.code == cli::kUsage);
}

TEST_CASE("cli: usage errors") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"bogus"}).code == cli::kUsage);
  const Run missing = invoke({"magic-table", "--kmax", "2"});
  CHECK(missing.code == cli::kUsage);
  CHECK(missing.err.find("--mmax") != std::string::npos);
  CHECK(invoke({"--format", "xml", "rabi", "--eta", "0.5", "--n", "0", "--nprime", "0"}).code ==
        cli::kUsage);
  CHECK(invoke({"sensitivity", "--k", "0", "--m", "1", "--deltas", "-1"}).code == cli::kUsage);
  CHECK(invoke({"--help"}).code == cli::kOk);
}

TEST_CASE("cli: sequence runs a schedule file") {
  const MagicEntry entry{0, 1, 0, 1, magic_eta_01(0, 1), std::numbers::pi};
  const Schedule s{JointSpace(1, 3), {reduced_cn_pulse(entry, 0.0)}};
  const auto path = temp_file("sequence.json");
  {
    std::ofstream f(path);
    f << schedule_to_json(s, "1d").dump(2);
  }
  const Run r = invoke({"--format", "structured", "sequence", "--file", path.string()});
  REQUIRE(r.code == cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  double pop = 0.0;
  for (const auto& a : doc["state"]) {
    if (a["label"] == "1u") pop = a["population"].get<double>();
  }
  CHECK(pop == doctest::Approx(1.0).epsilon(1e-12));

  const Run override_input = invoke({"--format", "csv", "sequence", "--file", path.string(), "--input", "0u"});
  CHECK(override_input.code == cli::kOk);
  CHECK(override_input.out.find("0u,") != std::string::npos);

  const Run oracle = invoke({"--format", "structured", "sequence", "--file", path.string(),
                             "--oracle", "--omega-over-g", "100"});
  CHECK(oracle.code == cli::kOk);
  CHECK(nlohmann::json::parse(oracle.out)["oracle"]["converged"] == true);

  const Run bad_label = invoke({"sequence", "--file", path.string(), "--input", "9x"});
  CHECK(bad_label.code == cli::kUsage);
  CHECK(bad_label.err.find("--input") != std::string::npos);

  {
    std::ofstream f(path);
    f << R"({"space": {"n_ions": 1}, "pulses": []})";
  }
  const Run malformed = invoke({"sequence", "--file", path.string(), "--input", "0d"});
  CHECK(malformed.code == cli::kUsage);
  CHECK(malformed.err.find("fock_cutoff") != std::string::npos);
  std::filesystem::remove(path);

  CHECK(invoke({"sequence", "--file", "/nonexistent/x.json"}).code == cli::kUsage);
}

TEST_CASE("cli: verify reduced and two-ion gates") {
  const Run one = invoke({"verify", "--k", "1", "--m", "3"});
  CHECK(one.code == cli::kOk);
  CHECK(one.out.find("pass=true") != std::string::npos);

  const Run two = invoke({"--format", "structured", "verify", "--k", "0", "--m", "1", "--two-ion"});
  REQUIRE(two.code == cli::kOk);
  const auto doc = nlohmann::json::parse(two.out);
  CHECK(doc["gate"] == "two-ion-cn");
  CHECK(doc["max_deviation"].get<double>() < 1e-12);
  CHECK(doc["truth_table"]["rows"].size() == 4);
}

TEST_CASE("cli: sensitivity curve") {
  const Run r = invoke({"--format", "structured", "sensitivity", "--k", "0", "--m", "1", "--deltas",
                        "0,1e-4,2e-4"});
  REQUIRE(r.code == cli::kOk);
  const auto pts = nlohmann::json::parse(r.out)["points"];
  REQUIRE(pts.size() == 3);
  CHECK(pts[0]["infidelity"].get<double>() < 1e-12);
  const double ratio = pts[2]["infidelity"].get<double>() / pts[1]["infidelity"].get<double>();
  CHECK(ratio >= 3.6);
  CHECK(ratio <= 4.4);
}

TEST_CASE("cli: output is deterministic and can go to a file") {
  const std::vector<std::string> args{"--format", "structured", "gate", "--k", "2", "--m", "5", "--phi", "0.3"};
  const Run a = invoke(args);
  const Run b = invoke(args);
  CHECK(a.out == b.out);

  const auto path = temp_file("out.json");
  std::vector<std::string> to_file{"--output", path.string()};
  to_file.insert(to_file.end(), args.begin(), args.end());
  const Run f = invoke(to_file);
  CHECK(f.code == cli::kOk);
  CHECK(f.out.empty());
  std::ifstream in(path);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == a.out);
  std::filesystem::remove(path);

  CHECK(invoke({"--output", "/nonexistent/dir/x", "rabi", "--eta", "0.5", "--n", "0", "--nprime", "0"})
            .code == cli::kUsage);
}
