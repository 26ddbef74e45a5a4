#include <algorithm>

#include "zpindex/errors.hpp"
#include "zpindex/simplicial.hpp"

namespace zpindex {

namespace {

using Column = std::vector<std::pair<std::size_t, long long>>;

long long mod(long long a, long long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

long long inverse_mod(long long a, long long p) {
  // Fermat: a^(p-2) mod p.
  long long result = 1, base = mod(a, p);
  for (long long e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

// target <- target - factor * source, both sorted by row, coefficients in [0, p).
void axpy(Column& target, const Column& source, long long factor, long long p) {
  Column out;
  out.reserve(target.size() + source.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
      out.push_back(target[i++]);
    } else if (i == target.size() || source[j].first < target[i].first) {
      out.emplace_back(source[j].first, mod(-factor * source[j].second, p));
      ++j;
    } else {
      long long c = mod(target[i].second - factor * source[j].second, p);
      if (c != 0) out.emplace_back(target[i].first, c);
      ++i;
      ++j;
    }
  }
  target.swap(out);
}

}  // namespace

std::size_t rank_mod_p(std::vector<Column> columns, int p) {
  std::size_t rows = 0;
  for (auto& col : columns) {
    for (auto& [row, c] : col) c = mod(c, p);
    std::erase_if(col, [](const auto& e) { return e.second == 0; });
    std::sort(col.begin(), col.end());
    if (!col.empty()) rows = std::max(rows, col.back().first + 1);
  }
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pivot_owner(rows, none);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    Column& col = columns[j];
    while (!col.empty()) {
      const auto [low, c] = col.back();
      const std::size_t owner = pivot_owner[low];
      if (owner == none) {
        pivot_owner[low] = j;
        ++rank;
        break;
      }
      const Column& pivot = columns[owner];
      long long factor = c * inverse_mod(pivot.back().second, p) % p;
      axpy(col, pivot, factor, p);
    }
  }
  return rank;
}

HomologyProfile homology(const SimplicialComplex& complex, int p, bool reduced) {
  require_prime(p);
  HomologyProfile profile;
  profile.p = p;
  profile.reduced = reduced;
  if (complex.empty()) {
    profile.connectivity = Connectivity::finite(-2);
    return profile;
  }

  const int top = complex.dim();
  // ranks[d] = rank of the boundary map out of dimension d; ranks[0] is the
  // augmentation, rank 1 for a nonempty complex.
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
  for (int d = 1; d <= top; ++d) {
    std::vector<Column> columns;
    const auto faces = complex.simplices(d - 1);
    for (const auto& s : complex.simplices(d)) {
      Column col;
      col.reserve(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face;
        face.reserve(s.size() - 1);
        for (std::size_t k = 0; k < s.size(); ++k)
          if (k != i) face.push_back(s[k]);
        auto it = std::lower_bound(faces.begin(), faces.end(), face);
        col.emplace_back(static_cast<std::size_t>(it - faces.begin()), (i % 2 == 0) ? 1 : -1);
      }
      columns.push_back(std::move(col));
    }
    ranks[static_cast<std::size_t>(d)] = rank_mod_p(std::move(columns), p);
  }

  std::vector<std::size_t> reduced_betti;
  for (int d = 0; d <= top; ++d) {
    const auto n = complex.simplices(d).size();
    const std::size_t out_rank = d == 0 ? 1 : ranks[static_cast<std::size_t>(d)];
    reduced_betti.push_back(n - out_rank - ranks[static_cast<std::size_t>(d) + 1]);
  }

  profile.connectivity = Connectivity::infinite();
  for (int d = 0; d <= top; ++d)
    if (reduced_betti[static_cast<std::size_t>(d)] != 0) {
      profile.connectivity = Connectivity::finite(d - 1);
      break;
    }

  profile.betti = reduced_betti;
  if (!reduced) profile.betti[0] += 1;
  return profile;
}

std::string Connectivity::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

}  // namespace zpindex
