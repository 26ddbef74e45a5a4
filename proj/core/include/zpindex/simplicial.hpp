#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zpindex {

using Vertex = std::uint32_t;

/// Sorted, duplicate-free vertex list.
using Simplex = std::vector<Vertex>;

/// Finite abstract simplicial complex on the vertex set {0, ..., vertex_count-1}.
///
/// Every vertex is a 0-simplex. Simplices are kept sorted lexicographically
/// inside each dimension, so two complexes compare equal iff they have the
/// same vertex count and the same simplices.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Downward closure of `generators` on `vertex_count` vertices.
  /// Generators need not be sorted or maximal.
  static SimplicialComplex from_generators(std::size_t vertex_count,
                                           std::span<const Simplex> generators);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  bool empty() const noexcept { return vertex_count_ == 0; }

  /// -1 for the empty complex.
  int dim() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }

  /// Simplices of dimension d, sorted. Empty span when d is out of range.
  std::span<const Simplex> simplices(int d) const noexcept;

  std::size_t simplex_count() const noexcept;

  /// Index of `s` inside simplices(s.size()-1), if present. `s` must be sorted.
  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  /// Simplices that are not a proper face of another simplex, ordered by
  /// dimension then lexicographically.
  std::vector<Simplex> maximal_simplices() const;

  /// Alternating sum of simplex counts.
  long long euler_characteristic() const noexcept;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<Simplex>> by_dim_;
};

/// Vertex permutation of order dividing a prime p.
class ZpAction {
 public:
  ZpAction() = default;

  /// Validates that `perm` is a permutation and perm^p is the identity.
  ZpAction(int p, std::vector<Vertex> perm);

  int p() const noexcept { return p_; }
  std::span<const Vertex> perm() const noexcept { return perm_; }
  Vertex apply(Vertex v) const { return perm_[v]; }

  /// perm^a on a vertex, for a >= 0.
  Vertex apply_power(Vertex v, int a) const;

  /// Image of a simplex under perm^a, sorted.
  Simplex apply(const Simplex& s, int a = 1) const;

  /// The action generated by perm^a. Still order p when gcd(a, p) = 1.
  ZpAction power(int a) const;

  friend bool operator==(const ZpAction&, const ZpAction&) = default;

 private:
  int p_ = 2;
  std::vector<Vertex> perm_;
};

/// A simplicial complex with a free simplicial Z_p-action.
///
/// Construction enforces: the action is simplicial on the complex, and no
/// simplex is setwise fixed by perm^a for a in 1..p-1.
class FreeZpComplex {
 public:
  /// The empty free Z_p-complex.
  explicit FreeZpComplex(int p);

  FreeZpComplex(SimplicialComplex complex, ZpAction action);

  const SimplicialComplex& complex() const noexcept { return complex_; }
  const ZpAction& action() const noexcept { return action_; }
  int p() const noexcept { return action_.p(); }
  bool empty() const noexcept { return complex_.empty(); }
  int dim() const noexcept { return complex_.dim(); }

  /// Set only when simple connectivity is known from construction (joins)
  /// or asserted by the caller. Homology cannot decide it.
  bool simply_connected_verified() const noexcept { return simply_connected_; }
  FreeZpComplex with_simply_connected_assertion(bool value = true) const;

  /// The same complex with generator perm^a (1 <= a <= p-1).
  FreeZpComplex with_action_power(int a) const;

  /// Vertex orbits, each listed as (v, perm v, perm^2 v, ...) starting at its
  /// smallest vertex; orbits ordered by that smallest vertex.
  std::vector<std::vector<Vertex>> vertex_orbits() const;

  friend bool operator==(const FreeZpComplex& a, const FreeZpComplex& b) {
    return a.complex_ == b.complex_ && a.action_ == b.action_;
  }

 private:
  SimplicialComplex complex_;
  ZpAction action_;
  bool simply_connected_ = false;
};

/// True iff perm^a(s) != s for every simplex s and every a in 1..p-1.
bool is_free(const SimplicialComplex& complex, const ZpAction& action);

/// True iff the action maps every simplex to a simplex.
bool is_simplicial(const SimplicialComplex& complex, const ZpAction& action);

/// Homological connectivity. Either a finite value >= -2 or "infinite" for
/// complexes with vanishing reduced homology in every degree.
class Connectivity {
 public:
  static Connectivity finite(int value) { return Connectivity(value, false); }
  static Connectivity infinite() { return Connectivity(0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful when finite.
  int value() const noexcept { return value_; }
  std::string to_string() const;

  friend bool operator==(const Connectivity&, const Connectivity&) = default;

 private:
  Connectivity(int value, bool infinite) : value_(value), infinite_(infinite) {}
  int value_;
  bool infinite_;
};

struct HomologyProfile {
  int p = 2;
  /// b_0..b_dim; empty for the empty complex.
  std::vector<std::size_t> betti;
  bool reduced = false;
  Connectivity connectivity = Connectivity::finite(-2);

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

/// Betti numbers over F_p by rank of boundary matrices.
HomologyProfile homology(const SimplicialComplex& complex, int p, bool reduced);

/// Rank over F_p of a sparse matrix given by columns of (row, coefficient)
/// pairs. Coefficients are reduced mod p. Deterministic column reduction.
std::size_t rank_mod_p(std::vector<std::vector<std::pair<std::size_t, long long>>> columns, int p);

/// Discrete Z_p with the cyclic shift.
FreeZpComplex make_discrete_zp(int p);

/// Combinatorial join. Vertices of `y` are shifted by x.vertex_count().
/// Joining with an empty complex returns the other operand unchanged.
/// Throws ValidationError on mismatched p and BudgetExceeded when the join
/// would have more than `simplex_budget` simplices.
FreeZpComplex join(const FreeZpComplex& x, const FreeZpComplex& y,
                   std::size_t simplex_budget = 10'000'000);

/// Join of n+1 copies of discrete Z_p. Vertex level*p + j is element j of
/// copy `level`; the generator adds 1 mod p inside each copy. Hence
/// e_n_zp(m, p) is the full subcomplex on the first (m+1)p vertices of
/// e_n_zp(n, p) for m <= n.
FreeZpComplex e_n_zp(int n, int p);

/// Barycentric subdivision of a plain complex. Vertices of the result are
/// the simplices of the input in (dimension, lexicographic) order.
SimplicialComplex barycentric_subdivide(const SimplicialComplex& complex);

/// Subdivision with the induced action.
FreeZpComplex barycentric_subdivide(const FreeZpComplex& complex);

/// `depth` successive subdivisions.
FreeZpComplex subdivide_times(const FreeZpComplex& complex, int depth);

}  // namespace zpindex
