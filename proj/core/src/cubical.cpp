#include <algorithm>
#include <set>

#include "zpindex/config_space.hpp"
#include "zpindex/errors.hpp"

namespace zpindex {

void GridSpec::validate() const {
  if (N < 1) throw ValidationError("grid dimension N must be at least 1");
  if (G < 1) throw ValidationError("grid subdivision G must be at least 1");
  if (G > 60) throw ValidationError("grid subdivision G above 60 is not supported");
  if (circle_valued) {
    if (N != 1) throw ValidationError("circle-valued grids have N = 1");
    if (G < 2) throw ValidationError("circle-valued grids need G >= 2 to stay simplicial");
  }
}

int cell_dim(const Cell& cell) noexcept {
  int d = 0;
  for (CellCode c : cell) d += code_ext(c);
  return d;
}

CubicalComplex::CubicalComplex(GridSpec grid, int coordinates)
    : grid_(grid), coordinates_(coordinates) {
  grid_.validate();
  if (coordinates_ < 1) throw ValidationError("cubical complex needs at least one coordinate");
}

CubicalComplex CubicalComplex::from_closed_cells(GridSpec grid, int coordinates,
                                                 std::vector<Cell> cells) {
  CubicalComplex result(grid, coordinates);
  const int axis = grid.vertices_per_axis();
  for (const auto& cell : cells) {
    if (static_cast<int>(cell.size()) != coordinates)
      throw ValidationError("cell has the wrong number of coordinates");
    for (CellCode c : cell) {
      int top = code_lo(c) + code_ext(c);
      if (code_lo(c) >= axis || (!grid.circle_valued && top >= axis))
        throw ValidationError("cell leaves the grid");
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  result.cells_ = std::move(cells);
  return result;
}

CubicalComplex CubicalComplex::from_generators(GridSpec grid, int coordinates,
                                               std::span<const Cell> generators) {
  CubicalComplex shape(grid, coordinates);
  std::set<Cell> closed;
  std::vector<Cell> stack(generators.begin(), generators.end());
  while (!stack.empty()) {
    Cell cell = std::move(stack.back());
    stack.pop_back();
    if (!closed.insert(cell).second) continue;
    for (auto& f : shape.facets(cell)) stack.push_back(std::move(f));
  }
  return from_closed_cells(grid, coordinates, {closed.begin(), closed.end()});
}

std::optional<std::size_t> CubicalComplex::index_of(const Cell& cell) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), cell);
  if (it == cells_.end() || *it != cell) return std::nullopt;
  return static_cast<std::size_t>(it - cells_.begin());
}

int CubicalComplex::dim() const noexcept {
  int d = -1;
  for (const auto& c : cells_) d = std::max(d, cell_dim(c));
  return d;
}

std::vector<Cell> CubicalComplex::facets(const Cell& cell) const {
  std::vector<Cell> out;
  const int length = grid_.vertices_per_axis();
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (!code_ext(cell[i])) continue;
    const int lo = code_lo(cell[i]);
    Cell lower = cell, upper = cell;
    lower[i] = make_code(lo, 0);
    upper[i] = make_code(grid_.circle_valued ? (lo + 1) % length : lo + 1, 0);
    out.push_back(std::move(lower));
    out.push_back(std::move(upper));
  }
  return out;
}

bool CubicalComplex::is_face_closed() const {
  for (const auto& cell : cells_)
    for (const auto& f : facets(cell))
      if (!contains(f)) return false;
  return true;
}

SimplicialComplex triangulate(const CubicalComplex& complex) {
  std::vector<Cell> vertices;
  for (const auto& c : complex.cells())
    if (cell_dim(c) == 0) vertices.push_back(c);  // already sorted
  auto vertex_id = [&](const Cell& v) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) throw ConsistencyError("cubical vertex missing");
    return static_cast<Vertex>(it - vertices.begin());
  };

  const auto& grid = complex.grid();
  const int length = grid.vertices_per_axis();
  auto has_coface = [&](const Cell& cell) {
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (code_ext(cell[i])) continue;
      const int lo = code_lo(cell[i]);
      Cell up = cell;
      if (grid.circle_valued || lo + 1 < length) {
        up[i] = make_code(lo, 1);
        if (complex.contains(up)) return true;
      }
      if (grid.circle_valued || lo > 0) {
        up[i] = make_code(grid.circle_valued ? (lo + length - 1) % length : lo - 1, 1);
        if (complex.contains(up)) return true;
      }
    }
    return false;
  };

  std::vector<Simplex> generators;
  for (const auto& cell : complex.cells()) {
    if (cell_dim(cell) == 0 || has_coface(cell)) continue;
    std::vector<std::size_t> free_coords;
    Cell corner = cell;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (code_ext(cell[i])) free_coords.push_back(i);
      corner[i] = make_code(code_lo(cell[i]), 0);
    }
    do {
      Simplex s;
      Cell v = corner;
      s.push_back(vertex_id(v));
      for (auto i : free_coords) {
        const int lo = code_lo(v[i]);
        v[i] = make_code(grid.circle_valued ? (lo + 1) % length : lo + 1, 0);
        s.push_back(vertex_id(v));
      }
      std::sort(s.begin(), s.end());
      generators.push_back(std::move(s));
    } while (std::next_permutation(free_coords.begin(), free_coords.end()));
  }
  return SimplicialComplex::from_generators(vertices.size(), generators);
}

HomologyProfile cubical_homology(const CubicalComplex& complex, int p_coeff, bool reduced) {
  require_prime(p_coeff, "coefficient prime");
  HomologyProfile profile;
  profile.p = p_coeff;
  profile.reduced = reduced;
  if (complex.empty()) return profile;

  const int top = complex.dim();
  std::vector<std::vector<Cell>> by_dim(static_cast<std::size_t>(top) + 1);
  for (const auto& c : complex.cells()) by_dim[static_cast<std::size_t>(cell_dim(c))].push_back(c);

  std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
  for (int d = 1; d <= top; ++d) {
    const auto& faces = by_dim[static_cast<std::size_t>(d) - 1];
    std::vector<std::vector<std::pair<std::size_t, long long>>> columns;
    for (const auto& cell : by_dim[static_cast<std::size_t>(d)]) {
      auto fs = complex.facets(cell);
      std::vector<std::pair<std::size_t, long long>> col;
      for (std::size_t k = 0; k < fs.size(); ++k) {
        // facets come as (lower_i, upper_i); boundary sign (-1)^i (upper - lower).
        const long long sign = ((k / 2) % 2 == 0) ? 1 : -1;
        const long long coeff = (k % 2 == 1) ? sign : -sign;
        auto it = std::lower_bound(faces.begin(), faces.end(), fs[k]);
        col.emplace_back(static_cast<std::size_t>(it - faces.begin()), coeff);
      }
      columns.push_back(std::move(col));
    }
    ranks[static_cast<std::size_t>(d)] = rank_mod_p(std::move(columns), p_coeff);
  }

  std::vector<std::size_t> reduced_betti;
  for (int d = 0; d <= top; ++d) {
    const auto n = by_dim[static_cast<std::size_t>(d)].size();
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

}  // namespace zpindex
