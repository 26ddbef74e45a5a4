#include <algorithm>
#include <deque>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

#include "zpindex/errors.hpp"
#include "zpindex/index_lab.hpp"

namespace zpindex {

namespace {

constexpr Vertex kUnassigned = static_cast<Vertex>(-1);

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    return boost::hash_range(s.begin(), s.end());
  }
};

struct Level {
  std::vector<Vertex> orbit;  // orbit[j] = perm^j(rep)
  // Some orbit[anchor_shift] is adjacent to the already-placed anchor_vertex,
  // so f(rep) lies in T^{-anchor_shift}(N[f(anchor_vertex)]).
  bool has_anchor = false;
  int anchor_shift = 0;
  Vertex anchor_vertex = 0;
  std::vector<Simplex> checks;  // simplices completed at this level
};

class Searcher {
 public:
  Searcher(const FreeZpComplex& source, const FreeZpComplex& target, std::uint64_t budget)
      : source_(source), target_(target), budget_(budget), p_(source.p()) {
    const auto& tc = target.complex();
    for (int d = 1; d <= tc.dim(); ++d)
      for (const auto& s : tc.simplices(d)) target_simplices_.insert(s);

    const auto tn = tc.vertex_count();
    target_perm_.assign(target.action().perm().begin(), target.action().perm().end());
    target_inverse_.resize(tn);
    for (Vertex v = 0; v < tn; ++v) target_inverse_[target_perm_[v]] = v;
    closed_nbhd_.resize(tn);
    for (Vertex v = 0; v < tn; ++v) closed_nbhd_[v].push_back(v);
    for (const auto& e : tc.simplices(1)) {
      closed_nbhd_[e[0]].push_back(e[1]);
      closed_nbhd_[e[1]].push_back(e[0]);
    }
    for (auto& nb : closed_nbhd_) std::sort(nb.begin(), nb.end());
    for (Vertex v = 0; v < tn; ++v) {
      Vertex m = v;
      for (Vertex u = target_perm_[v]; u != v; u = target_perm_[u]) m = std::min(m, u);
      if (m == v) target_reps_.push_back(v);
    }
    build_levels();
  }

  SearchStatus run() {
    image_.assign(source_.complex().vertex_count(), kUnassigned);
    for (const auto& group : groups_) {
      SearchStatus status = solve_group(group);
      if (status != SearchStatus::found) return status;
    }
    return SearchStatus::found;
  }

  const std::vector<Vertex>& image() const { return image_; }
  std::uint64_t nodes() const { return nodes_; }
  std::size_t orbit_count() const { return orbit_count_; }

 private:
  void build_levels() {
    const auto& sc = source_.complex();
    const auto n = sc.vertex_count();
    const auto sp = source_.action().perm();

    std::vector<std::size_t> orbit_of(n, static_cast<std::size_t>(-1));
    std::vector<std::vector<Vertex>> orbits;
    for (Vertex v = 0; v < n; ++v) {
      if (orbit_of[v] != static_cast<std::size_t>(-1)) continue;
      std::vector<Vertex> orbit;
      for (Vertex u = v;; u = sp[u]) {
        orbit_of[u] = orbits.size();
        orbit.push_back(u);
        if (sp[u] == v) break;
      }
      orbits.push_back(std::move(orbit));
    }
    orbit_count_ = orbits.size();

    std::vector<std::vector<std::size_t>> orbit_adj(orbits.size());
    for (const auto& e : sc.simplices(1)) {
      auto a = orbit_of[e[0]], b = orbit_of[e[1]];
      orbit_adj[a].push_back(b);
      orbit_adj[b].push_back(a);
    }
    for (auto& adj : orbit_adj) {
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }

    // Breadth-first order inside each connected group of orbits.
    std::vector<std::size_t> position(orbits.size(), static_cast<std::size_t>(-1));
    std::vector<std::size_t> order;
    for (std::size_t start = 0; start < orbits.size(); ++start) {
      if (position[start] != static_cast<std::size_t>(-1)) continue;
      std::vector<std::size_t> group;
      std::deque<std::size_t> queue{start};
      position[start] = order.size();
      order.push_back(start);
      while (!queue.empty()) {
        auto o = queue.front();
        queue.pop_front();
        group.push_back(o);
        for (auto nb : orbit_adj[o])
          if (position[nb] == static_cast<std::size_t>(-1)) {
            position[nb] = order.size();
            order.push_back(nb);
            queue.push_back(nb);
          }
      }
      std::vector<std::size_t> level_ids;
      for (auto o : group) level_ids.push_back(position[o]);
      groups_.push_back(std::move(level_ids));
    }

    levels_.resize(orbits.size());
    for (std::size_t o = 0; o < orbits.size(); ++o) levels_[position[o]].orbit = orbits[o];

    // Anchors: an edge from this orbit to an earlier one.
    for (const auto& e : sc.simplices(1)) {
      for (int side = 0; side < 2; ++side) {
        Vertex v = e[side], u = e[1 - side];
        auto lv = position[orbit_of[v]], lu = position[orbit_of[u]];
        if (lu >= lv || levels_[lv].has_anchor) continue;
        const auto& orbit = levels_[lv].orbit;
        auto j = std::find(orbit.begin(), orbit.end(), v) - orbit.begin();
        levels_[lv].has_anchor = true;
        levels_[lv].anchor_shift = static_cast<int>(j);
        levels_[lv].anchor_vertex = u;
      }
    }

    // One check per simplex orbit, at the level where it becomes complete.
    for (int d = 1; d <= sc.dim(); ++d)
      for (const auto& s : sc.simplices(d)) {
        bool canonical = true;
        Simplex moved = s;
        for (int a = 1; a < p_ && canonical; ++a) {
          for (auto& v : moved) v = sp[v];
          std::sort(moved.begin(), moved.end());
          if (moved < s) canonical = false;
        }
        if (!canonical) continue;
        std::size_t trigger = 0;
        for (Vertex v : s) trigger = std::max(trigger, position[orbit_of[v]]);
        levels_[trigger].checks.push_back(s);
      }
  }

  std::vector<Vertex> candidates(std::size_t level, bool first_in_group) const {
    const Level& L = levels_[level];
    if (first_in_group) return target_reps_;
    if (!L.has_anchor) {
      std::vector<Vertex> all(target_perm_.size());
      for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
      return all;
    }
    std::vector<Vertex> result;
    for (Vertex t : closed_nbhd_[image_[L.anchor_vertex]]) {
      for (int k = 0; k < L.anchor_shift; ++k) t = target_inverse_[t];
      result.push_back(t);
    }
    std::sort(result.begin(), result.end());
    return result;
  }

  void assign(std::size_t level, Vertex t) {
    for (Vertex v : levels_[level].orbit) {
      image_[v] = t;
      t = target_perm_[t];
    }
  }

  bool checks_pass(std::size_t level) {
    for (const auto& s : levels_[level].checks) {
      scratch_.clear();
      for (Vertex v : s) scratch_.push_back(image_[v]);
      std::sort(scratch_.begin(), scratch_.end());
      scratch_.erase(std::unique(scratch_.begin(), scratch_.end()), scratch_.end());
      if (scratch_.size() > 1 && !target_simplices_.contains(scratch_)) return false;
    }
    return true;
  }

  SearchStatus solve_group(const std::vector<std::size_t>& group) {
    if (target_perm_.empty()) return SearchStatus::exhausted;
    const std::size_t depth = group.size();
    std::vector<std::vector<Vertex>> cands(depth);
    std::vector<std::size_t> pos(depth, 0);
    std::size_t i = 0;
    cands[0] = candidates(group[0], true);
    while (true) {
      const std::size_t level = group[i];
      bool placed = false;
      while (pos[i] < cands[i].size()) {
        const Vertex t = cands[i][pos[i]++];
        if (++nodes_ > budget_) return SearchStatus::inconclusive;
        assign(level, t);
        if (checks_pass(level)) {
          placed = true;
          break;
        }
      }
      if (placed) {
        if (i + 1 == depth) return SearchStatus::found;
        ++i;
        cands[i] = candidates(group[i], false);
        pos[i] = 0;
      } else {
        for (Vertex v : levels_[level].orbit) image_[v] = kUnassigned;
        if (i == 0) return SearchStatus::exhausted;
        --i;
      }
    }
  }

  const FreeZpComplex& source_;
  const FreeZpComplex& target_;
  std::uint64_t budget_;
  int p_;
  std::unordered_set<Simplex, SimplexHash> target_simplices_;
  std::vector<Vertex> target_perm_, target_inverse_, target_reps_;
  std::vector<std::vector<Vertex>> closed_nbhd_;
  std::vector<Level> levels_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<Vertex> image_;
  Simplex scratch_;
  std::uint64_t nodes_ = 0;
  std::size_t orbit_count_ = 0;
};

}  // namespace

SearchResult search_equivariant_map(const FreeZpComplex& source, const FreeZpComplex& target,
                                    const SearchOptions& options) {
  if (source.p() != target.p())
    throw ValidationError("map search between Z_" + std::to_string(source.p()) + " and Z_" +
                          std::to_string(target.p()) + " spaces");
  auto subdivided = std::make_shared<const FreeZpComplex>(subdivide_times(source, options.depth));

  Searcher searcher(*subdivided, target, options.node_budget);
  SearchResult result;
  result.depth = options.depth;
  result.status = searcher.run();
  result.nodes = searcher.nodes();
  result.source_orbits = searcher.orbit_count();
  result.target_vertices = target.complex().vertex_count();
  if (result.status == SearchStatus::found) {
    EquivariantMap map{subdivided, std::make_shared<const FreeZpComplex>(target), searcher.image()};
    if (!check_equivariant_map(map).ok())
      throw ConsistencyError("map search produced an invalid map: " +
                             check_equivariant_map(map).failure);
    result.map = std::move(map);
  }
  return result;
}

std::optional<EquivariantMap> find_equivariant_map(const FreeZpComplex& source,
                                                   const FreeZpComplex& target,
                                                   const SearchOptions& options) {
  auto result = search_equivariant_map(source, target, options);
  if (result.status == SearchStatus::inconclusive)
    throw BudgetExceeded("map search exceeded " + std::to_string(options.node_budget) + " nodes",
                         result.nodes);
  return std::move(result.map);
}

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace zpindex
