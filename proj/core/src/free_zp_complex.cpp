#include <algorithm>
#include <map>
#include <numeric>

#include "zpindex/errors.hpp"
#include "zpindex/simplicial.hpp"

namespace zpindex {

ZpAction::ZpAction(int p, std::vector<Vertex> perm) : p_(p), perm_(std::move(perm)) {
  require_prime(p);
  std::vector<char> seen(perm_.size(), 0);
  for (Vertex v : perm_) {
    if (v >= perm_.size() || seen[v])
      throw ValidationError("action is not a permutation of the vertex set");
    seen[v] = 1;
  }
  for (Vertex v = 0; v < perm_.size(); ++v) {
    Vertex w = v;
    for (int i = 0; i < p_; ++i) w = perm_[w];
    if (w != v)
      throw ValidationError("perm^" + std::to_string(p_) + " is not the identity at vertex " +
                            std::to_string(v));
  }
}

Vertex ZpAction::apply_power(Vertex v, int a) const {
  a %= p_;
  for (int i = 0; i < a; ++i) v = perm_[v];
  return v;
}

Simplex ZpAction::apply(const Simplex& s, int a) const {
  Simplex image;
  image.reserve(s.size());
  for (Vertex v : s) image.push_back(apply_power(v, a));
  std::sort(image.begin(), image.end());
  return image;
}

ZpAction ZpAction::power(int a) const {
  std::vector<Vertex> perm(perm_.size());
  for (Vertex v = 0; v < perm_.size(); ++v) perm[v] = apply_power(v, a);
  return ZpAction(p_, std::move(perm));
}

bool is_simplicial(const SimplicialComplex& complex, const ZpAction& action) {
  for (int d = 0; d <= complex.dim(); ++d)
    for (const auto& s : complex.simplices(d))
      if (!complex.contains(action.apply(s))) return false;
  return true;
}

bool is_free(const SimplicialComplex& complex, const ZpAction& action) {
  for (int d = 0; d <= complex.dim(); ++d)
    for (const auto& s : complex.simplices(d))
      for (int a = 1; a < action.p(); ++a)
        if (action.apply(s, a) == s) return false;
  return true;
}

FreeZpComplex::FreeZpComplex(int p) : action_(p, {}) {}

FreeZpComplex::FreeZpComplex(SimplicialComplex complex, ZpAction action)
    : complex_(std::move(complex)), action_(std::move(action)) {
  if (action_.perm().size() != complex_.vertex_count())
    throw ValidationError("action size " + std::to_string(action_.perm().size()) +
                          " does not match vertex count " +
                          std::to_string(complex_.vertex_count()));
  if (!is_simplicial(complex_, action_)) throw ValidationError("action is not simplicial");
  // For prime p a simplex fixed by some perm^a is fixed by the whole group,
  // so the a = 1 test decides freeness; is_free checks every power anyway.
  if (!is_free(complex_, action_)) throw ValidationError("action is not free");
}

FreeZpComplex FreeZpComplex::with_simply_connected_assertion(bool value) const {
  FreeZpComplex copy = *this;
  copy.simply_connected_ = value;
  return copy;
}

FreeZpComplex FreeZpComplex::with_action_power(int a) const {
  if (a < 1 || a >= p())
    throw ValidationError("action exponent must lie in 1..p-1, got " + std::to_string(a));
  FreeZpComplex result(complex_, action_.power(a));
  result.simply_connected_ = simply_connected_;
  return result;
}

std::vector<std::vector<Vertex>> FreeZpComplex::vertex_orbits() const {
  std::vector<std::vector<Vertex>> orbits;
  std::vector<char> seen(complex_.vertex_count(), 0);
  for (Vertex v = 0; v < complex_.vertex_count(); ++v) {
    if (seen[v]) continue;
    std::vector<Vertex> orbit;
    Vertex u = v;
    do {
      orbit.push_back(u);
      seen[u] = 1;
      u = action_.apply(u);
    } while (u != v);
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

namespace {

bool is_connected(const SimplicialComplex& complex) {
  const std::size_t n = complex.vertex_count();
  if (n == 0) return false;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = n;
  for (const auto& e : complex.simplices(1)) {
    auto a = find(e[0]), b = find(e[1]);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

FreeZpComplex make_discrete_zp(int p) {
  require_prime(p);
  std::vector<Vertex> perm(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) perm[static_cast<std::size_t>(j)] = static_cast<Vertex>((j + 1) % p);
  return FreeZpComplex(SimplicialComplex::from_generators(static_cast<std::size_t>(p), {}),
                       ZpAction(p, std::move(perm)));
}

FreeZpComplex join(const FreeZpComplex& x, const FreeZpComplex& y, std::size_t simplex_budget) {
  if (x.p() != y.p())
    throw ValidationError("join of Z_" + std::to_string(x.p()) + "- and Z_" +
                          std::to_string(y.p()) + "-complexes");
  if (y.empty()) return x;
  if (x.empty()) return y;

  const auto& cx = x.complex();
  const auto& cy = y.complex();
  const std::size_t nx = cx.simplex_count(), ny = cy.simplex_count();
  const double projected = (static_cast<double>(nx) + 1) * (static_cast<double>(ny) + 1) - 1;
  if (projected > static_cast<double>(simplex_budget))
    throw BudgetExceeded("join would have " + std::to_string(static_cast<unsigned long long>(projected)) +
                             " simplices, budget " + std::to_string(simplex_budget),
                         static_cast<std::uint64_t>(projected));

  const auto offset = static_cast<Vertex>(cx.vertex_count());
  std::vector<Simplex> generators;
  const auto max_x = cx.maximal_simplices();
  const auto max_y = cy.maximal_simplices();
  generators.reserve(max_x.size() * max_y.size());
  for (const auto& sx : max_x)
    for (const auto& sy : max_y) {
      Simplex s = sx;
      for (Vertex v : sy) s.push_back(v + offset);
      generators.push_back(std::move(s));
    }

  std::vector<Vertex> perm(x.action().perm().begin(), x.action().perm().end());
  for (Vertex v : y.action().perm()) perm.push_back(v + offset);

  FreeZpComplex result(
      SimplicialComplex::from_generators(cx.vertex_count() + cy.vertex_count(), generators),
      ZpAction(x.p(), std::move(perm)));
  // A join of two nonempty spaces, one of them connected, is simply connected.
  const bool simply_connected = x.simply_connected_verified() || y.simply_connected_verified() ||
                                is_connected(cx) || is_connected(cy);
  return result.with_simply_connected_assertion(simply_connected);
}

FreeZpComplex e_n_zp(int n, int p) {
  require_prime(p);
  if (n < 0) throw ValidationError("n must be nonnegative");
  FreeZpComplex result = make_discrete_zp(p);
  const FreeZpComplex factor = result;
  for (int i = 0; i < n; ++i) result = join(result, factor);
  return result;
}

FreeZpComplex barycentric_subdivide(const FreeZpComplex& complex) {
  const auto& base = complex.complex();
  SimplicialComplex sd = barycentric_subdivide(base);

  std::map<Simplex, Vertex> id;
  Vertex next = 0;
  for (int d = 0; d <= base.dim(); ++d)
    for (const auto& s : base.simplices(d)) id.emplace(s, next++);

  std::vector<Vertex> perm(next);
  for (const auto& [s, v] : id) perm[v] = id.at(complex.action().apply(s));

  FreeZpComplex result(std::move(sd), ZpAction(complex.p(), std::move(perm)));
  return result.with_simply_connected_assertion(complex.simply_connected_verified());
}

FreeZpComplex subdivide_times(const FreeZpComplex& complex, int depth) {
  if (depth < 0) throw ValidationError("subdivision depth must be nonnegative");
  FreeZpComplex result = complex;
  for (int i = 0; i < depth; ++i) result = barycentric_subdivide(result);
  return result;
}

}  // namespace zpindex
