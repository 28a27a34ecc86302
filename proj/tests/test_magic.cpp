#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include <doctest.h>

#include "iongate/coupling.hpp"
#include "iongate/magic.hpp"
#include "iongate/specfun.hpp"
#include "oracles.hpp"

using namespace iongate;

namespace {

struct Published {
  int k;
  int m;
  double eta;
};

// The fifteen printed operating points, three decimals.
constexpr Published kPublished[] = {
    {0, 1, 0.707}, {0, 2, 0.866}, {0, 3, 0.913}, {1, 2, 0.500}, {1, 3, 0.707},
    {1, 4, 0.791}, {2, 3, 0.408}, {2, 4, 0.612}, {2, 5, 0.707}, {3, 4, 0.353},
    {3, 5, 0.548}, {3, 6, 0.645}, {4, 5, 0.316}, {4, 6, 0.500}, {4, 7, 0.597},
};

}  // namespace

TEST_CASE("magic_eta_01") {
  CHECK(magic_eta_01(0, 1) == doctest::Approx(0.707).epsilon(1e-3));
  CHECK(magic_eta_01(2, 4) == doctest::Approx(0.612).epsilon(1e-3));
  CHECK(magic_eta_01(4, 7) == doctest::Approx(0.597).epsilon(2e-3));
  double previous = 0.0;
  for (int m = 1; m <= 1000; ++m) {
    const double eta = magic_eta_01(0, m);
    CHECK(eta > previous);
    CHECK(eta < 1.0);
    previous = eta;
  }
  CHECK(previous > 0.999);
  CHECK_THROWS_AS(magic_eta_01(1, 1), std::domain_error);
  CHECK_THROWS_AS(magic_eta_01(3, 2), std::domain_error);
  CHECK_THROWS_AS(magic_eta_01(-1, 2), std::domain_error);
}

TEST_CASE("magic_eta_pair: (0,1) reduces to the closed form") {
  const auto roots = magic_eta_pair(0, 1, 0, 1, 2.0);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("magic_eta_pair: (0,2) against the quadratic in eta^2") {
  // x^2/2 - 2x + 1/2 = 0 with x = eta^2, restricted to eta in (0, 2].
  std::vector<double> expected;
  for (double x : testing::real_polynomial_roots({0.5, -2.0, 0.5})) {
    if (x > 0.0 && std::sqrt(x) <= 2.0) expected.push_back(std::sqrt(x));
  }
  std::sort(expected.begin(), expected.end());
  const auto roots = magic_eta_pair(0, 2, 0, 1, 2.0);
  REQUIRE(roots.size() == expected.size());
  for (std::size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(roots[i] - expected[i]) < 1e-10);
  CHECK(std::abs(roots[0] * roots[0] - (2.0 - std::sqrt(3.0))) < 1e-10);
  CHECK(roots[0] == doctest::Approx(0.5176381).epsilon(1e-7));
}

TEST_CASE("magic_eta_pair: (0,3) against the cubic companion-matrix roots") {
  // 1 - 3x + 3x^2/2 - x^3/6 = 1/2
  std::vector<double> expected;
  for (double x : testing::real_polynomial_roots({0.5, -3.0, 1.5, -1.0 / 6.0})) {
    if (x > 0.0 && x <= 4.0) expected.push_back(std::sqrt(x));
  }
  std::sort(expected.begin(), expected.end());
  const auto roots = magic_eta_pair(0, 3, 0, 1, 2.0);
  REQUIRE(roots.size() == expected.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    CHECK(std::abs(roots[i] - expected[i]) < 1e-10);
    CHECK(std::abs(laguerre(3, 0, roots[i] * roots[i]) - 0.5) < 1e-12);
  }
}

TEST_CASE("magic_eta_pair: poles of the ratio are not reported as roots") {
  // L_1(eta^2) vanishes at eta = 1; the ratio L_2/L_1 changes sign there.
  for (int k = 0; k < 4; ++k) {
    for (int m = k + 1; m <= 5; ++m) {
      for (double eta : magic_eta_pair(1, 2, k, m, 2.0)) {
        CHECK(std::abs(eta - 1.0) > 1e-3);
        const double x = eta * eta;
        CHECK(std::abs(laguerre(2, 0, x) / laguerre(1, 0, x) - (2.0 * k + 1) / (2.0 * m)) < 1e-12);
      }
    }
  }
}

TEST_CASE("magic_eta_pair: every root satisfies its defining equation") {
  for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0}, {1, 3}}) {
    for (int k = 0; k <= 3; ++k) {
      for (int m = k + 1; m <= 6; ++m) {
        const auto roots = magic_eta_pair(a, b, k, m, 2.0);
        CHECK(std::is_sorted(roots.begin(), roots.end()));
        for (double eta : roots) {
          CHECK(eta > 0.0);
          CHECK(eta <= 2.0);
          const double x = eta * eta;
          CHECK(std::abs(laguerre(b, 0, x) / laguerre(a, 0, x) - (2.0 * k + 1) / (2.0 * m)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("magic_eta_pair: argument validation") {
  CHECK_THROWS_AS(magic_eta_pair(1, 1, 0, 1), std::domain_error);
  CHECK_THROWS_AS(magic_eta_pair(0, 1, 2, 2), std::domain_error);
  CHECK_THROWS_AS(magic_eta_pair(0, 1, 0, 1, 0.0), std::domain_error);
  CHECK(magic_eta_pair(0, 1, 0, 1, 0.5).empty());
}

TEST_CASE("magic_table: k = 0 rows") {
  const auto entries = magic_table(0, 3, false);
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].eta == doctest::Approx(0.707).epsilon(1e-3));
  CHECK(entries[1].eta == doctest::Approx(0.866).epsilon(1e-3));
  CHECK(entries[2].eta == doctest::Approx(0.913).epsilon(1e-3));
  for (const auto& e : entries) {
    CHECK(e.noop_level == 0);
    CHECK(e.flip_level == 1);
    CHECK(e.noop_pulse_area == doctest::Approx(e.m * std::numbers::pi));
  }
}

TEST_CASE("magic_table: published operating points to +-0.001") {
  const auto entries = magic_table(4, 7, false);
  CHECK(entries.size() == 25);
  for (const Published& p : kPublished) {
    const auto it = std::find_if(entries.begin(), entries.end(),
                                 [&](const MagicEntry& e) { return e.k == p.k && e.m == p.m; });
    REQUIRE(it != entries.end());
    CHECK(std::abs(it->eta - p.eta) <= 1e-3);
  }
}

TEST_CASE("magic_table: coinciding eta values stay distinct entries") {
  const auto entries = magic_table(2, 5, false);
  int at_sqrt_half = 0;
  for (const auto& e : entries) {
    if (std::abs(e.eta - std::sqrt(0.5)) < 1e-15) {
      ++at_sqrt_half;
      CHECK(((e.k == 0 && e.m == 1) || (e.k == 1 && e.m == 3) || (e.k == 2 && e.m == 5)));
    }
  }
  CHECK(at_sqrt_half == 3);
}

TEST_CASE("magic_table: role-swapped condition has no real root") {
  CHECK(magic_table(0, 1, true).empty());
  CHECK(magic_eta_pair(1, 0, 0, 1, 2.0).empty());
  CHECK(magic_table(4, 7, true).empty());
}

TEST_CASE("magic_table: ordering and carrier-ratio round trip") {
  auto entries = magic_table(4, 7, false);
  const auto more = magic_table_pair(0, 2, 3, 5);
  entries.insert(entries.end(), more.begin(), more.end());
  for (const auto& e : entries) {
    const CouplingContext ctx(e.eta, 2.3);
    const double ratio =
        signed_rabi_frequency(e.flip_level, e.flip_level, ctx) /
        signed_rabi_frequency(e.noop_level, e.noop_level, ctx);
    CHECK(std::abs(ratio - e.ratio()) < 1e-12);
    CHECK_NOTHROW(validate(e));
  }
  const auto sorted = magic_table_pair(0, 2, 3, 5);
  CHECK(std::is_sorted(sorted.begin(), sorted.end(), [](const MagicEntry& a, const MagicEntry& b) {
    return std::tie(a.noop_level, a.flip_level, a.k, a.m, a.eta) <
           std::tie(b.noop_level, b.flip_level, b.k, b.m, b.eta);
  }));
}

TEST_CASE("validate rejects broken entries") {
  MagicEntry e{0, 1, 0, 1, magic_eta_01(0, 1), std::numbers::pi};
  CHECK_NOTHROW(validate(e));
  e.eta = 0.5;
  CHECK_THROWS_AS(validate(e), std::domain_error);
  e = MagicEntry{1, 1, 0, 1, 0.5, std::numbers::pi};
  CHECK_THROWS_AS(validate(e), std::domain_error);
  e = MagicEntry{0, 1, 1, 1, std::sqrt(0.5), std::numbers::pi};
  CHECK_THROWS_AS(validate(e), std::domain_error);
}
