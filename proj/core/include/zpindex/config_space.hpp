#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zpindex/json.hpp"
#include "zpindex/rational.hpp"
#include "zpindex/simplicial.hpp"

namespace zpindex {

/// Grid of step 1/G on [0,1]^N, or on the circle R/2Z (2G arcs) when
/// circle_valued is set; circle grids have N = 1.
struct GridSpec {
  int N = 1;
  int G = 4;
  bool circle_valued = false;

  /// Number of grid vertices per axis: G+1 on the interval, 2G on the circle.
  int vertices_per_axis() const noexcept { return circle_valued ? 2 * G : G + 1; }
  void validate() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// One coordinate of a cell: the interval [lo, lo + ext] in grid units,
/// ext in {0, 1}; on the circle lo + 1 wraps to 0. Packed as 2*lo + ext.
using CellCode = std::uint8_t;
inline int code_lo(CellCode c) noexcept { return c >> 1; }
inline int code_ext(CellCode c) noexcept { return c & 1; }
inline CellCode make_code(int lo, int ext) noexcept {
  return static_cast<CellCode>(2 * lo + ext);
}

/// A product cell: one code per coordinate.
using Cell = std::vector<CellCode>;

/// Face-closed set of axis-aligned cells in a product of `coordinates`
/// grid axes. No group action; CubicalZpComplex adds one.
class CubicalComplex {
 public:
  CubicalComplex() = default;
  CubicalComplex(GridSpec grid, int coordinates);

  /// Closure of the given cells under taking faces.
  static CubicalComplex from_generators(GridSpec grid, int coordinates,
                                        std::span<const Cell> generators);
  /// Takes cells already closed under faces; sorts and deduplicates.
  static CubicalComplex from_closed_cells(GridSpec grid, int coordinates,
                                          std::vector<Cell> cells);

  const GridSpec& grid() const noexcept { return grid_; }
  int coordinates() const noexcept { return coordinates_; }
  std::span<const Cell> cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  std::optional<std::size_t> index_of(const Cell& cell) const;
  bool contains(const Cell& cell) const { return index_of(cell).has_value(); }
  int dim() const noexcept;

  /// Faces of codimension one, as (face, lower-or-upper) pairs in the
  /// order used by the cubical boundary.
  std::vector<Cell> facets(const Cell& cell) const;
  bool is_face_closed() const;

  friend bool operator==(const CubicalComplex&, const CubicalComplex&) = default;

 private:
  GridSpec grid_;
  int coordinates_ = 0;
  std::vector<Cell> cells_;
};

int cell_dim(const Cell& cell) noexcept;

enum class SpaceKind { Xm, Y, Z };
std::string to_string(SpaceKind kind);
SpaceKind parse_space_kind(const std::string& text);

/// What the cells were certified against.
struct ConstraintSpec {
  SpaceKind kind = SpaceKind::Xm;
  Rational delta = 0;  // Xm only
  int m = 1;           // Xm only
  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

/// Cubical inner approximation of a periodic-point space inside
/// (grid cube)^p, closed under faces and under the cyclic shift
/// (B_0, ..., B_{p-1}) -> (B_1, ..., B_{p-1}, B_0). Coordinate n*N + a is
/// axis a of factor n.
class CubicalZpComplex {
 public:
  CubicalZpComplex(int p, ConstraintSpec constraint, CubicalComplex cells);

  int p() const noexcept { return p_; }
  const GridSpec& grid() const noexcept { return cells_.grid(); }
  const ConstraintSpec& constraint() const noexcept { return constraint_; }
  const CubicalComplex& complex() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }

  /// Factor n of the cell, N codes.
  std::span<const CellCode> factor(const Cell& cell, int n) const;
  /// Cyclic shift by k factors.
  Cell shifted(const Cell& cell, int k = 1) const;

  friend bool operator==(const CubicalZpComplex&, const CubicalZpComplex&) = default;

 private:
  int p_;
  ConstraintSpec constraint_;
  CubicalComplex cells_;
};

/// Default face budget for builders.
inline constexpr std::uint64_t kDefaultCellBudget = 10'000'000;

/// Cells (B_0, ..., B_{p-1}) of the grid with Euclidean box distance
/// dist(B_n, B_{n+m mod p}) >= delta for every n. Exact integer comparisons.
CubicalZpComplex build_Pp_Xm(int N, const Rational& delta, int m, int p, const GridSpec& grid,
                             std::uint64_t budget = kDefaultCellBudget);

/// Circle-valued spaces: Z keeps cells where, for every n, the larger of
/// the two lower bounds of rho(x_n, x_{n+1}) and rho(x_{n+1}, x_{n+2}) over
/// the cell is >= 1/2; Y demands >= 1, which only exact antipodal vertex
/// pairs reach, so Y is a very thin inner approximation.
CubicalZpComplex build_Pp_YZ(SpaceKind which, int p, const GridSpec& grid,
                             std::uint64_t budget = kDefaultCellBudget);

/// Lower bound of the distance between two cell factors, squared, in grid
/// units (interval grids) or the plain circle distance (circle grids).
long long box_distance_sq(std::span<const CellCode> a, std::span<const CellCode> b);
int arc_distance(CellCode a, CellCode b, int circle_length);

/// Kuhn triangulation: a cell with free coordinates J is split into |J|!
/// simplices, one per order of raising the coordinates from the lower
/// corner. Vertices are the 0-cells in sorted order.
SimplicialComplex triangulate(const CubicalComplex& complex);
FreeZpComplex cubical_to_simplicial(const CubicalZpComplex& complex);

/// Betti numbers over F_p from cubical boundary matrices.
HomologyProfile cubical_homology(const CubicalComplex& complex, int p_coeff, bool reduced = false);
HomologyProfile cubical_homology(const CubicalZpComplex& complex, int p_coeff,
                                 bool reduced = false);

/// The isomorphism between offset-m and offset-1 spaces.
struct Relabeling {
  /// Offset-1 complex on the same grid.
  CubicalZpComplex offset_one;
  /// forward[i]: index in the offset-m complex of f(cell i of offset_one),
  /// f((x_n)) = (x_{ln}).
  std::vector<std::size_t> forward;
  /// backward[j]: index in offset_one of g(cell j of the offset-m complex),
  /// g((y_n)) = (y_{mn}).
  std::vector<std::size_t> backward;
  bool f_after_g_identity = false;
  bool g_after_f_identity = false;
  bool intertwines = false;  // f o shift = shift^m o f on every cell
  bool matches_direct_build = false;
};

Relabeling relabel_isomorphism(const CubicalZpComplex& offset_m, int l);

/// Cell-level relabeling x -> (x_{kn})_n.
Cell relabel_cell(const CubicalZpComplex& c, const Cell& cell, int k);

Json provenance(const CubicalZpComplex& complex);

}  // namespace zpindex
