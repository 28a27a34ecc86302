#include "iongate/magic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "iongate/specfun.hpp"

namespace iongate {

namespace {

void check_km(int k, int m) {
  if (k < 0 || m < 1 || k >= m) {
    throw std::domain_error("magic: requires 0 <= k < m (got k=" + std::to_string(k) +
                            ", m=" + std::to_string(m) + ")");
  }
}

void check_levels(int noop_level, int flip_level) {
  if (noop_level < 0 || flip_level < 0 || noop_level == flip_level) {
    throw std::domain_error("magic: Fock levels must be distinct and nonnegative");
  }
}

MagicEntry make_entry(int k, int m, int noop_level, int flip_level, double eta) {
  return MagicEntry{k, m, noop_level, flip_level, eta, m * std::numbers::pi};
}

void sort_entries(std::vector<MagicEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const MagicEntry& a, const MagicEntry& b) {
    return std::tie(a.noop_level, a.flip_level, a.k, a.m, a.eta) <
           std::tie(b.noop_level, b.flip_level, b.k, b.m, b.eta);
  });
}

}  // namespace

void validate(const MagicEntry& entry, double tol) {
  check_km(entry.k, entry.m);
  check_levels(entry.noop_level, entry.flip_level);
  if (!(entry.eta > 0.0) || !std::isfinite(entry.eta)) {
    throw std::domain_error("magic entry: eta must be finite and positive");
  }
  const double x = entry.eta * entry.eta;
  const double ratio = laguerre(entry.flip_level, 0, x) / laguerre(entry.noop_level, 0, x);
  if (!(std::abs(ratio - entry.ratio()) <= tol)) {
    throw std::domain_error("magic entry: eta=" + std::to_string(entry.eta) +
                            " does not satisfy the carrier ratio condition");
  }
}

double magic_eta_01(int k, int m) {
  check_km(k, m);
  return std::sqrt(1.0 - (2.0 * k + 1.0) / (2.0 * m));
}

std::vector<double> magic_eta_pair(int noop_level, int flip_level, int k, int m,
                                   double search_max) {
  check_levels(noop_level, flip_level);
  check_km(k, m);
  if (!(search_max > 0.0) || !std::isfinite(search_max)) {
    throw std::domain_error("magic_eta_pair: search_max must be positive");
  }
  const double target = (2.0 * k + 1.0) / (2.0 * m);
  auto denom = [&](double eta) { return laguerre(noop_level, 0, eta * eta); };
  auto residual = [&](double eta) {
    return laguerre(flip_level, 0, eta * eta) / denom(eta) - target;
  };

  std::vector<double> roots;
  const auto cells = static_cast<long>(std::ceil(search_max / kSearchGridStep));
  double lo = 0.0;
  double f_lo = residual(lo);
  double d_lo = denom(lo);
  for (long i = 1; i <= cells; ++i) {
    const double hi = std::min(search_max, i * kSearchGridStep);
    const double f_hi = residual(hi);
    const double d_hi = denom(hi);
    const bool pole = std::signbit(d_lo) != std::signbit(d_hi) || d_hi == 0.0;
    if (!pole) {
      if (f_hi == 0.0) {
        roots.push_back(hi);
      } else if (f_lo != 0.0 && std::signbit(f_lo) != std::signbit(f_hi)) {
        double a = lo;
        double b = hi;
        double fa = f_lo;
        while (b - a > 1e-13) {
          const double mid = 0.5 * (a + b);
          const double fm = residual(mid);
          if (fm == 0.0) {
            a = b = mid;
            break;
          }
          if (std::signbit(fm) == std::signbit(fa)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        roots.push_back(0.5 * (a + b));
      }
    }
    lo = hi;
    f_lo = f_hi;
    d_lo = d_hi;
  }
  return roots;
}

std::vector<MagicEntry> magic_table(int k_max, int m_max, bool swapped) {
  if (swapped) return magic_table_pair(1, 0, k_max, m_max);
  std::vector<MagicEntry> entries;
  for (int k = 0; k <= k_max; ++k) {
    for (int m = k + 1; m <= m_max; ++m) entries.push_back(make_entry(k, m, 0, 1, magic_eta_01(k, m)));
  }
  sort_entries(entries);
  return entries;
}

std::vector<MagicEntry> magic_table_pair(int noop_level, int flip_level, int k_max, int m_max,
                                         double search_max) {
  check_levels(noop_level, flip_level);
  std::vector<MagicEntry> entries;
  for (int k = 0; k <= k_max; ++k) {
    for (int m = k + 1; m <= m_max; ++m) {
      for (double eta : magic_eta_pair(noop_level, flip_level, k, m, search_max)) {
        entries.push_back(make_entry(k, m, noop_level, flip_level, eta));
      }
    }
  }
  sort_entries(entries);
  return entries;
}

}  // namespace iongate
