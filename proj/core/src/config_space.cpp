#include <algorithm>
#include <numeric>

#include "zpindex/config_space.hpp"
#include "zpindex/errors.hpp"

namespace zpindex {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Xm: return "Xm";
    case SpaceKind::Y: return "Y";
    case SpaceKind::Z: return "Z";
  }
  return "?";
}

SpaceKind parse_space_kind(const std::string& text) {
  if (text == "Xm" || text == "X") return SpaceKind::Xm;
  if (text == "Y") return SpaceKind::Y;
  if (text == "Z") return SpaceKind::Z;
  throw ValidationError("unknown space '" + text + "' (expected Xm, Y or Z)");
}

CubicalZpComplex::CubicalZpComplex(int p, ConstraintSpec constraint, CubicalComplex cells)
    : p_(p), constraint_(std::move(constraint)), cells_(std::move(cells)) {
  require_prime(p_);
  if (cells_.coordinates() != p_ * cells_.grid().N)
    throw ValidationError("cubical Z_p complex needs p*N coordinates");
  if (!cells_.is_face_closed()) throw ValidationError("cells are not closed under faces");
  for (const auto& cell : cells_.cells()) {
    const Cell moved = shifted(cell, 1);
    if (moved == cell) throw ValidationError("cell fixed by the shift: action not free");
    if (!cells_.contains(moved)) throw ValidationError("cells are not closed under the shift");
  }
}

std::span<const CellCode> CubicalZpComplex::factor(const Cell& cell, int n) const {
  const auto width = static_cast<std::size_t>(grid().N);
  return std::span<const CellCode>(cell).subspan(static_cast<std::size_t>(n) * width, width);
}

Cell CubicalZpComplex::shifted(const Cell& cell, int k) const {
  const int width = grid().N;
  const int shift = ((k % p_) + p_) % p_;
  Cell out(cell.size());
  for (int n = 0; n < p_; ++n) {
    const int from = (n + shift) % p_;
    std::copy_n(cell.begin() + from * width, width, out.begin() + n * width);
  }
  return out;
}

long long box_distance_sq(std::span<const CellCode> a, std::span<const CellCode> b) {
  long long total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long long a_lo = code_lo(a[i]), a_hi = a_lo + code_ext(a[i]);
    const long long b_lo = code_lo(b[i]), b_hi = b_lo + code_ext(b[i]);
    const long long gap = std::max({0LL, a_lo - b_hi, b_lo - a_hi});
    total += gap * gap;
  }
  return total;
}

int arc_distance(CellCode a, CellCode b, int circle_length) {
  // Arcs have length at most 1 on a grid of at least 4 points, so the
  // closest pair of points is a pair of endpoints.
  auto circular = [circle_length](int x, int y) {
    const int d = ((x - y) % circle_length + circle_length) % circle_length;
    return std::min(d, circle_length - d);
  };
  const int a_ends[2] = {code_lo(a), (code_lo(a) + code_ext(a)) % circle_length};
  const int b_ends[2] = {code_lo(b), (code_lo(b) + code_ext(b)) % circle_length};
  int best = circle_length;
  for (int x : a_ends)
    for (int y : b_ends) best = std::min(best, circular(x, y));
  return best;
}

namespace {

std::vector<Cell> factor_boxes(const GridSpec& grid) {
  const int axis = grid.vertices_per_axis();
  std::vector<CellCode> codes;
  for (int lo = 0; lo < axis; ++lo) {
    codes.push_back(make_code(lo, 0));
    if (grid.circle_valued || lo + 1 < axis) codes.push_back(make_code(lo, 1));
  }
  std::vector<Cell> boxes{Cell{}};
  for (int a = 0; a < grid.N; ++a) {
    std::vector<Cell> next;
    for (const auto& prefix : boxes)
      for (CellCode c : codes) {
        Cell box = prefix;
        box.push_back(c);
        next.push_back(std::move(box));
      }
    boxes = std::move(next);
  }
  return boxes;
}

// A predicate over some factor indices, checked once all of them are chosen.
struct FactorCheck {
  std::vector<int> factors;
};

// Depth-first enumeration of p-tuples of factor boxes. `admissible` sees the
// chosen box indices of the factors named by a check.
template <class Admissible>
std::vector<Cell> enumerate_tuples(int p, const std::vector<Cell>& boxes,
                                   const std::vector<FactorCheck>& checks,
                                   Admissible admissible, std::uint64_t budget) {
  std::vector<std::vector<const FactorCheck*>> at_position(static_cast<std::size_t>(p));
  for (const auto& c : checks)
    at_position[static_cast<std::size_t>(*std::max_element(c.factors.begin(), c.factors.end()))]
        .push_back(&c);

  std::vector<Cell> out;
  std::vector<std::size_t> chosen(static_cast<std::size_t>(p), 0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
  int k = 0;
  while (k >= 0) {
    const auto uk = static_cast<std::size_t>(k);
    if (idx[uk] == boxes.size()) {
      idx[uk] = 0;
      --k;
      continue;
    }
    chosen[uk] = idx[uk]++;
    bool ok = true;
    for (const FactorCheck* c : at_position[uk])
      if (!admissible(*c, chosen)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (k + 1 < p) {
      ++k;
      continue;
    }
    Cell cell;
    for (auto b : chosen) cell.insert(cell.end(), boxes[b].begin(), boxes[b].end());
    out.push_back(std::move(cell));
    if (out.size() > budget)
      throw BudgetExceeded("cell count exceeds budget of " + std::to_string(budget) + " (" +
                               std::to_string(out.size()) + " cells so far)",
                           out.size());
  }
  return out;
}

}  // namespace

CubicalZpComplex build_Pp_Xm(int N, const Rational& delta, int m, int p, const GridSpec& grid,
                             std::uint64_t budget) {
  require_prime(p);
  if (m < 1) throw ValidationError("offset m must be at least 1");
  if (delta <= 0) throw ValidationError("delta must be positive");
  if (grid.circle_valued) throw ValidationError("X_m spaces live on an interval grid");
  if (grid.N != N) throw ValidationError("grid dimension does not match N");
  grid.validate();

  const auto boxes = factor_boxes(grid);
  // gap^2 / G^2 >= delta^2, compared as integers after clearing denominators.
  const Rational threshold = delta * delta * grid.G * grid.G;
  std::vector<char> far(boxes.size() * boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = 0; j < boxes.size(); ++j)
      far[i * boxes.size() + j] = Rational(box_distance_sq(boxes[i], boxes[j])) >= threshold;

  std::vector<FactorCheck> checks;
  for (int n = 0; n < p; ++n) checks.push_back({{n, (n + m) % p}});
  auto cells = enumerate_tuples(
      p, boxes, checks,
      [&](const FactorCheck& c, const std::vector<std::size_t>& chosen) {
        return far[chosen[static_cast<std::size_t>(c.factors[0])] * boxes.size() +
                   chosen[static_cast<std::size_t>(c.factors[1])]] != 0;
      },
      budget);
  return CubicalZpComplex(p, ConstraintSpec{SpaceKind::Xm, delta, m},
                          CubicalComplex::from_closed_cells(grid, p * N, std::move(cells)));
}

CubicalZpComplex build_Pp_YZ(SpaceKind which, int p, const GridSpec& grid, std::uint64_t budget) {
  require_prime(p);
  if (which == SpaceKind::Xm) throw ValidationError("build_Pp_YZ builds Y or Z only");
  if (!grid.circle_valued) throw ValidationError("Y and Z need a circle-valued grid");
  grid.validate();

  const auto boxes = factor_boxes(grid);
  const int length = grid.vertices_per_axis();
  std::vector<int> dist(boxes.size() * boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = 0; j < boxes.size(); ++j)
      dist[i * boxes.size() + j] = arc_distance(boxes[i][0], boxes[j][0], length);
  // rho = arc / G; Z wants rho >= 1/2, Y wants rho >= 1 (its maximum).
  auto meets = [&](int d) { return which == SpaceKind::Z ? 2 * d >= grid.G : d >= grid.G; };

  std::vector<FactorCheck> checks;
  for (int n = 0; n < p; ++n) checks.push_back({{n, (n + 1) % p, (n + 2) % p}});
  auto cells = enumerate_tuples(
      p, boxes, checks,
      [&](const FactorCheck& c, const std::vector<std::size_t>& chosen) {
        const auto a = chosen[static_cast<std::size_t>(c.factors[0])];
        const auto b = chosen[static_cast<std::size_t>(c.factors[1])];
        const auto e = chosen[static_cast<std::size_t>(c.factors[2])];
        return meets(dist[a * boxes.size() + b]) || meets(dist[b * boxes.size() + e]);
      },
      budget);
  return CubicalZpComplex(p, ConstraintSpec{which, 0, 1},
                          CubicalComplex::from_closed_cells(grid, p, std::move(cells)));
}

FreeZpComplex cubical_to_simplicial(const CubicalZpComplex& complex) {
  if (complex.empty()) return FreeZpComplex(complex.p());
  SimplicialComplex triangulated = triangulate(complex.complex());
  std::vector<Cell> vertices;
  for (const auto& c : complex.complex().cells())
    if (cell_dim(c) == 0) vertices.push_back(c);
  std::vector<Vertex> perm(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const Cell moved = complex.shifted(vertices[v], 1);
    perm[v] = static_cast<Vertex>(std::lower_bound(vertices.begin(), vertices.end(), moved) -
                                  vertices.begin());
  }
  return FreeZpComplex(std::move(triangulated), ZpAction(complex.p(), std::move(perm)));
}

HomologyProfile cubical_homology(const CubicalZpComplex& complex, int p_coeff, bool reduced) {
  return cubical_homology(complex.complex(), p_coeff, reduced);
}

Cell relabel_cell(const CubicalZpComplex& c, const Cell& cell, int k) {
  const int p = c.p();
  const int width = c.grid().N;
  Cell out(cell.size());
  for (int n = 0; n < p; ++n) {
    const int from = static_cast<int>((static_cast<long long>(k) * n % p + p) % p);
    std::copy_n(cell.begin() + from * width, width, out.begin() + n * width);
  }
  return out;
}

Relabeling relabel_isomorphism(const CubicalZpComplex& offset_m, int l) {
  const int p = offset_m.p();
  const auto& constraint = offset_m.constraint();
  if (constraint.kind != SpaceKind::Xm) throw ValidationError("relabeling applies to X_m spaces");
  const int m = ((constraint.m % p) + p) % p;
  if (m == 0) throw ValidationError("relabeling needs m not divisible by p");
  if (((static_cast<long long>(l) * m) % p + p) % p != 1)
    throw ValidationError("l*m must be 1 mod p");

  const auto& source = offset_m.complex();
  std::vector<Cell> image;
  image.reserve(source.size());
  for (const auto& cell : source.cells()) image.push_back(relabel_cell(offset_m, cell, constraint.m));
  CubicalZpComplex offset_one(p, ConstraintSpec{SpaceKind::Xm, constraint.delta, 1},
                              CubicalComplex::from_closed_cells(source.grid(), source.coordinates(),
                                                                std::move(image)));

  Relabeling result{offset_one, {}, {}, true, true, true, false};
  const auto& one = offset_one.complex();
  for (const auto& cell : one.cells()) {
    auto j = source.index_of(relabel_cell(offset_m, cell, l));
    if (!j) throw ConsistencyError("relabeling f leaves the offset-m complex");
    result.forward.push_back(*j);
  }
  for (const auto& cell : source.cells()) {
    auto i = one.index_of(relabel_cell(offset_m, cell, constraint.m));
    if (!i) throw ConsistencyError("relabeling g leaves the offset-1 complex");
    result.backward.push_back(*i);
  }
  for (std::size_t i = 0; i < one.size(); ++i)
    if (result.backward[result.forward[i]] != i) result.f_after_g_identity = false;
  for (std::size_t j = 0; j < source.size(); ++j)
    if (result.forward[result.backward[j]] != j) result.g_after_f_identity = false;
  for (std::size_t i = 0; i < one.size(); ++i) {
    const Cell& cell = one.cells()[i];
    const Cell lhs = relabel_cell(offset_m, offset_one.shifted(cell, 1), l);
    const Cell rhs = offset_m.shifted(source.cells()[result.forward[i]], constraint.m);
    if (lhs != rhs) result.intertwines = false;
  }
  const auto direct = build_Pp_Xm(source.grid().N, constraint.delta, 1, p, source.grid(),
                                  std::max<std::uint64_t>(source.size(), 1));
  result.matches_direct_build = direct.complex() == offset_one.complex();
  return result;
}

Json provenance(const CubicalZpComplex& complex) {
  const auto& grid = complex.grid();
  const auto& constraint = complex.constraint();
  Json j{{"space", to_string(constraint.kind)},
         {"p", complex.p()},
         {"N", grid.N},
         {"grid", grid.G},
         {"circle_valued", grid.circle_valued},
         {"cells", complex.size()},
         {"dim", complex.complex().dim()}};
  if (constraint.kind == SpaceKind::Xm) {
    j["delta"] = to_string(constraint.delta);
    j["m"] = constraint.m;
  }
  return j;
}

}  // namespace zpindex
