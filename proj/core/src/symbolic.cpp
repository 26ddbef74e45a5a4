#include "zpindex/symbolic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "zpindex/errors.hpp"

namespace zpindex {

Subshift::Subshift(int alphabet_size, int window, std::vector<std::pair<int, int>> forbidden)
    : alphabet_size_(alphabet_size), window_(window), forbidden_(std::move(forbidden)) {
  if (alphabet_size_ < 1) throw ValidationError("alphabet must have at least one symbol");
  if (window_ < 1) throw ValidationError("window must be at least 1");
  for (auto [a, b] : forbidden_)
    if (a < 1 || a > alphabet_size_ || b < 1 || b > alphabet_size_)
      throw ValidationError("forbidden pair outside the alphabet");
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
}

bool Subshift::forbids(int a, int b) const {
  return std::binary_search(forbidden_.begin(), forbidden_.end(), std::make_pair(a, b));
}

bool Subshift::admits_cyclic(const Word& w) const {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i)
    if (forbids(w[i], w[(i + static_cast<std::size_t>(window_)) % n])) return false;
  return true;
}

Subshift make_sigma() { return make_sigma_m(1); }

Subshift make_sigma_m(int m) {
  if (m < 1) throw ValidationError("Sigma_m needs m >= 1");
  return Subshift(3, m, {{1, 1}, {2, 2}, {3, 3}});
}

std::size_t PeriodicOrbitSet::orbit_count() const {
  std::size_t count = 0;
  std::vector<char> seen(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (seen[i]) continue;
    ++count;
    for (std::size_t j = i; !seen[j]; j = shift[j]) seen[j] = 1;
  }
  return count;
}

bool PeriodicOrbitSet::rotation_free() const {
  std::vector<char> seen(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (seen[i]) continue;
    int size = 0;
    for (std::size_t j = i; !seen[j]; j = shift[j]) {
      seen[j] = 1;
      ++size;
    }
    if (size != period) return false;
  }
  return true;
}

PeriodicOrbitSet periodic_points(const Subshift& shift, int n, std::uint64_t budget) {
  if (n < 1) throw ValidationError("period must be at least 1");
  const auto len = static_cast<std::size_t>(n);
  const auto m = static_cast<std::size_t>(shift.window());

  // Constraint (i, i+m mod n) is checked once both positions are filled.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t j = (i + m) % len;
    checks[std::max(i, j)].emplace_back(i, j);
  }

  std::vector<Word> words;
  Word w(len, 0);
  std::uint64_t nodes = 0;
  std::size_t pos = 0;
  while (true) {
    if (w[pos] == shift.alphabet_size()) {
      w[pos] = 0;
      if (pos == 0) break;
      --pos;
      continue;
    }
    ++w[pos];
    if (++nodes > budget)
      throw BudgetExceeded("periodic point enumeration exceeded " + std::to_string(budget) +
                               " nodes",
                           nodes);
    bool ok = true;
    for (auto [i, j] : checks[pos])
      if (shift.forbids(w[i], w[j])) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (pos + 1 == len)
      words.push_back(w);
    else
      ++pos;
  }

  auto rotate = [](const Word& x) {
    Word r(x.begin() + 1, x.end());
    r.push_back(x.front());
    return r;
  };

  // Words come out in lexicographic order; the first unseen word of each
  // orbit is therefore its least rotation.
  PeriodicOrbitSet set;
  set.period = n;
  std::map<Word, std::uint32_t> index;
  for (const auto& word : words) {
    if (index.count(word)) continue;
    Word x = word;
    do {
      index.emplace(x, static_cast<std::uint32_t>(set.points.size()));
      set.points.push_back(x);
      x = rotate(x);
    } while (x != word);
  }
  set.shift.resize(set.points.size());
  for (std::size_t i = 0; i < set.points.size(); ++i)
    set.shift[i] = index.at(rotate(set.points[i]));
  return set;
}

Word odd_period_witness(int m) {
  if (m < 3 || m % 2 == 0) throw ValidationError("odd period witness needs odd m >= 3");
  Word w;
  for (int i = 0; i < (m - 1) / 2; ++i) {
    w.push_back(1);
    w.push_back(2);
  }
  w.push_back(3);
  if (!make_sigma().admits_cyclic(w))
    throw ConsistencyError("(12)^l 3 is not periodic in Sigma");
  return w;
}

FreeZpComplex as_free_zp_complex(const PeriodicOrbitSet& set) {
  if (!is_prime(set.period))
    throw ValidationError("periodic set of period " + std::to_string(set.period) +
                          " does not carry a Z_p action for prime p");
  if (!set.rotation_free())
    throw ValidationError("rotation has fixed points on this periodic set");
  std::vector<Vertex> perm(set.shift.begin(), set.shift.end());
  return FreeZpComplex(SimplicialComplex::from_generators(set.points.size(), {}),
                       ZpAction(set.period, std::move(perm)));
}

FreeZpComplex join_periodic_sets(const PeriodicOrbitSet& a, const PeriodicOrbitSet& b, int p) {
  if (a.period != p || b.period != p)
    throw ValidationError("join_periodic_sets needs both sets of period p");
  return join(as_free_zp_complex(a), as_free_zp_complex(b));
}

FreeZpComplex join_power(const PeriodicOrbitSet& set, int copies) {
  if (copies < 1) throw ValidationError("join power needs at least one copy");
  FreeZpComplex factor = as_free_zp_complex(set);
  FreeZpComplex result = factor;
  for (int i = 1; i < copies; ++i) result = join(result, factor);
  return result;
}

std::string word_to_string(const Word& w) {
  const bool wide = std::any_of(w.begin(), w.end(), [](int c) { return c >= 10; });
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wide && i > 0) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

std::string periodic_table_csv(const Subshift& shift, int from, int to) {
  std::ostringstream out;
  out << "period,count,orbit_count\n";
  for (int n = from; n <= to; ++n) {
    auto set = periodic_points(shift, n);
    out << n << ',' << set.points.size() << ',' << set.orbit_count() << '\n';
  }
  return out.str();
}

}  // namespace zpindex
