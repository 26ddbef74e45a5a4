#include <algorithm>

#include "zpindex/index_lab.hpp"

namespace zpindex {

// Deliberately naive: loops over every simplex and every vertex, using only
// the complex's own lookup and the raw permutation arrays.
MapCheck check_equivariant_map(const FreeZpComplex& source, const FreeZpComplex& target,
                               std::span<const Vertex> vertex_map) {
  MapCheck check;
  if (source.p() != target.p()) {
    check.failure = "source and target have different p";
    return check;
  }
  if (vertex_map.size() != source.complex().vertex_count()) {
    check.failure = "vertex map has wrong length";
    return check;
  }
  for (Vertex image : vertex_map)
    if (image >= target.complex().vertex_count()) {
      check.failure = "vertex map leaves the target";
      return check;
    }
  check.sizes_ok = true;

  check.equivariant = true;
  const auto sp = source.action().perm();
  const auto tp = target.action().perm();
  for (Vertex v = 0; v < vertex_map.size(); ++v)
    if (vertex_map[sp[v]] != tp[vertex_map[v]]) {
      check.equivariant = false;
      check.failure = "not equivariant at vertex " + std::to_string(v);
      break;
    }

  check.simplicial = true;
  for (int d = 0; d <= source.complex().dim() && check.simplicial; ++d)
    for (const auto& s : source.complex().simplices(d)) {
      Simplex image;
      for (Vertex v : s) image.push_back(vertex_map[v]);
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      if (!target.complex().contains(image)) {
        check.simplicial = false;
        if (check.failure.empty()) check.failure = "image of a simplex is not a simplex";
        break;
      }
    }
  return check;
}

MapCheck check_equivariant_map(const EquivariantMap& map) {
  if (!map.source || !map.target) {
    MapCheck check;
    check.failure = "map without source or target";
    return check;
  }
  return check_equivariant_map(*map.source, *map.target, map.vertex_map);
}

}  // namespace zpindex
