#pragma once

#include <vector>

namespace iongate {

/// An operating point for a single-pulse reduced CN gate.
///
/// A carrier pulse of duration tau rotates the `noop_level` Fock component by
/// 2m*pi (Omega_{a,a} tau = m pi) and the `flip_level` component by (2k+1)*pi
/// (Omega_{b,b} tau = (k + 1/2) pi). The defining condition is
/// L_b(eta^2) / L_a(eta^2) = (2k+1) / (2m).
struct MagicEntry {
  int k = 0;
  int m = 1;
  int noop_level = 0;  // n_a
  int flip_level = 1;  // n_b
  double eta = 0.0;
  double noop_pulse_area = 0.0;  // Omega_{a,a} tau = m pi

  /// Target carrier-frequency ratio (2k+1)/(2m).
  double ratio() const { return (2.0 * k + 1.0) / (2.0 * m); }
};

/// Throws std::domain_error if the entry violates k < m, distinct levels,
/// eta > 0, or the ratio condition to `tol`.
void validate(const MagicEntry& entry, double tol = 1e-12);

/// sqrt(1 - (2k+1)/(2m)); the unique eta in (0,1) making a single carrier
/// pulse a reduced CN between |n=0> and |n=1>.
double magic_eta_01(int k, int m);

inline constexpr double kDefaultSearchMax = 2.0;
inline constexpr double kSearchGridStep = 1e-3;

/// All eta in (0, search_max] with L_b(eta^2)/L_a(eta^2) = (2k+1)/(2m), sorted
/// ascending. Empty when no root lies in range. Zeros of L_a are excluded.
std::vector<double> magic_eta_pair(int noop_level, int flip_level, int k, int m,
                                   double search_max = kDefaultSearchMax);

/// Magic entries for the (|0>, |1>) pair over k <= k_max, k < m <= m_max.
/// With `swapped`, |1> is the no-op level and |0> the flip level. Entries with
/// coinciding eta are kept; they differ in pulse area.
std::vector<MagicEntry> magic_table(int k_max, int m_max, bool swapped = false);

/// Entries for an arbitrary Fock pair, found by root search.
std::vector<MagicEntry> magic_table_pair(int noop_level, int flip_level, int k_max, int m_max,
                                         double search_max = kDefaultSearchMax);

}  // namespace iongate
