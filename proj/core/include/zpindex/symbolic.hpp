#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zpindex/simplicial.hpp"

namespace zpindex {

/// Symbols are 1..alphabet_size.
using Word = std::vector<int>;

/// Shift of finite type over {1..alphabet_size} forbidding x_n = a together
/// with x_{n+window} = b for each listed (a, b).
class Subshift {
 public:
  Subshift(int alphabet_size, int window, std::vector<std::pair<int, int>> forbidden);

  int alphabet_size() const noexcept { return alphabet_size_; }
  int window() const noexcept { return window_; }
  const std::vector<std::pair<int, int>>& forbidden() const noexcept { return forbidden_; }
  bool forbids(int a, int b) const;

  /// Does w, read cyclically with indices mod |w|, avoid every forbidden pair?
  bool admits_cyclic(const Word& w) const;

  friend bool operator==(const Subshift&, const Subshift&) = default;

 private:
  int alphabet_size_;
  int window_;
  std::vector<std::pair<int, int>> forbidden_;
};

/// Three symbols, neighbours at offset 1 differ.
Subshift make_sigma();
/// Three symbols, symbols at offset m differ.
Subshift make_sigma_m(int m);

/// n-periodic points as words of length n, with the shift acting by
/// rotation x -> (x_1, ..., x_{n-1}, x_0).
///
/// Points are grouped by rotation orbit. Orbits are ordered by their
/// lexicographically least word; inside an orbit the points follow the
/// shift starting from that least word.
struct PeriodicOrbitSet {
  int period = 1;
  std::vector<Word> points;
  /// shift[i] = index of the rotation of points[i].
  std::vector<std::uint32_t> shift;

  std::size_t orbit_count() const;
  /// True when every rotation orbit has exactly `period` points.
  bool rotation_free() const;
};

/// Complete enumeration by depth-first search with cyclic constraint checks.
/// Throws BudgetExceeded when more than `budget` search nodes are needed.
PeriodicOrbitSet periodic_points(const Subshift& shift, int n,
                                 std::uint64_t budget = 100'000'000);

/// The word (12)^l 3 for m = 2l + 1, checked to be m-periodic in Sigma.
Word odd_period_witness(int m);

/// Discrete free Z_p-complex on the points with rotation as the action.
/// Requires a prime period and a free rotation action.
FreeZpComplex as_free_zp_complex(const PeriodicOrbitSet& set);

/// Join of the two discrete periodic sets with the simultaneous rotation.
FreeZpComplex join_periodic_sets(const PeriodicOrbitSet& a, const PeriodicOrbitSet& b, int p);

/// Join of `copies` copies of the same periodic set.
FreeZpComplex join_power(const PeriodicOrbitSet& set, int copies);

std::string word_to_string(const Word& w);

/// (period, count, orbit_count) rows, header included.
std::string periodic_table_csv(const Subshift& shift, int from, int to);

}  // namespace zpindex
