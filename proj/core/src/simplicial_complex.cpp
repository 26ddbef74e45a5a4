#include <algorithm>
#include <map>

#include "zpindex/errors.hpp"
#include "zpindex/simplicial.hpp"

namespace zpindex {

namespace {

void add_faces(const Simplex& s, std::vector<std::vector<Simplex>>& by_dim) {
  // Every subset of s; simplices here stay small (dim <= ~12).
  const std::size_t k = s.size();
  if (k > 24) throw ValidationError("simplex too large to close (" + std::to_string(k) + " vertices)");
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) face.push_back(s[i]);
    by_dim[face.size() - 1].push_back(std::move(face));
  }
}

}  // namespace

SimplicialComplex SimplicialComplex::from_generators(std::size_t vertex_count,
                                                     std::span<const Simplex> generators) {
  SimplicialComplex result;
  result.vertex_count_ = vertex_count;
  std::size_t top = vertex_count > 0 ? 1 : 0;
  for (const auto& g : generators) top = std::max(top, g.size());
  std::vector<std::vector<Simplex>> by_dim(top);
  for (Vertex v = 0; v < vertex_count; ++v) by_dim[0].push_back({v});
  for (const auto& g : generators) {
    if (g.empty()) continue;
    Simplex s = g;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ValidationError("simplex lists a vertex twice");
    if (s.back() >= vertex_count)
      throw ValidationError("simplex vertex " + std::to_string(s.back()) + " out of range");
    add_faces(s, by_dim);
  }
  for (auto& layer : by_dim) {
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
  }
  while (!by_dim.empty() && by_dim.back().empty()) by_dim.pop_back();
  result.by_dim_ = std::move(by_dim);
  return result;
}

std::span<const Simplex> SimplicialComplex::simplices(int d) const noexcept {
  if (d < 0 || d >= static_cast<int>(by_dim_.size())) return {};
  return by_dim_[static_cast<std::size_t>(d)];
}

std::size_t SimplicialComplex::simplex_count() const noexcept {
  std::size_t n = 0;
  for (const auto& layer : by_dim_) n += layer.size();
  return n;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
  const auto& layer = by_dim_[s.size() - 1];
  auto it = std::lower_bound(layer.begin(), layer.end(), s);
  if (it == layer.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - layer.begin());
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<Simplex> result;
  for (std::size_t d = 0; d < by_dim_.size(); ++d) {
    std::vector<char> covered(by_dim_[d].size(), 0);
    if (d + 1 < by_dim_.size()) {
      for (const auto& coface : by_dim_[d + 1]) {
        for (std::size_t drop = 0; drop < coface.size(); ++drop) {
          Simplex face;
          face.reserve(coface.size() - 1);
          for (std::size_t i = 0; i < coface.size(); ++i)
            if (i != drop) face.push_back(coface[i]);
          auto it = std::lower_bound(by_dim_[d].begin(), by_dim_[d].end(), face);
          covered[static_cast<std::size_t>(it - by_dim_[d].begin())] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < by_dim_[d].size(); ++i)
      if (!covered[i]) result.push_back(by_dim_[d][i]);
  }
  return result;
}

long long SimplicialComplex::euler_characteristic() const noexcept {
  long long chi = 0;
  for (std::size_t d = 0; d < by_dim_.size(); ++d) {
    auto n = static_cast<long long>(by_dim_[d].size());
    chi += (d % 2 == 0) ? n : -n;
  }
  return chi;
}

// ---------------------------------------------------------------------------

SimplicialComplex barycentric_subdivide(const SimplicialComplex& complex) {
  std::map<Simplex, Vertex> id;
  Vertex next = 0;
  for (int d = 0; d <= complex.dim(); ++d)
    for (const auto& s : complex.simplices(d)) id.emplace(s, next++);

  // Maximal chains of faces of each maximal simplex: one per vertex ordering.
  std::vector<Simplex> generators;
  for (const auto& top : complex.maximal_simplices()) {
    Simplex order = top;
    do {
      Simplex chain;
      Simplex prefix;
      for (Vertex v : order) {
        prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
        chain.push_back(id.at(prefix));
      }
      std::sort(chain.begin(), chain.end());
      generators.push_back(std::move(chain));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return SimplicialComplex::from_generators(next, generators);
}

}  // namespace zpindex
