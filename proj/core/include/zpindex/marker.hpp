#pragma once

#include <cstdint>
#include <vector>

#include "zpindex/dynsys.hpp"
#include "zpindex/json.hpp"
#include "zpindex/rational.hpp"

namespace zpindex {

using PointSet = std::vector<std::uint32_t>;

struct MarkerWitness {
  int N = 0;
  PointSet U;
  /// U and T^{-n}U are disjoint for 1 <= n <= N.
  bool return_times_ok = false;
  /// Every T-orbit meets U.
  bool covering_ok = false;
};

MarkerWitness check_marker(const FiniteDynSys& sys, int N, const PointSet& U);

struct EpsilonEmbedding {
  Rational eps;
  /// Ball centers in selection order; N = centers.size().
  std::vector<std::uint32_t> centers;
  /// images[x][k] = d(x, centers[k]).
  std::vector<std::vector<Rational>> images;
  /// Square of the verified modulus: |f(x) - f(y)|^2 < delta_sq implies
  /// d(x, y) < eps.
  Rational delta_sq;
  bool injective = false;
  /// diam f^{-1}(y) < eps for every image point y.
  bool fibers_ok = false;
  bool modulus_ok = false;
};

Rational squared_distance(const std::vector<Rational>& a, const std::vector<Rational>& b);

/// Farthest-point centers until every point is within eps/2 of a center
/// (a single center when eps exceeds the diameter). Needs diam <= 1.
EpsilonEmbedding epsilon_embedding(const FiniteDynSys& sys, const Rational& eps);

struct UniversalityMap {
  /// Half the least displacement d(x, Tx).
  Rational eps;
  EpsilonEmbedding embedding;
  /// min over x of |f(x) - f(Tx)|^2.
  Rational delta_sq;
  /// trajectories[x][n] = f(T^n x) for 0 <= n < period(x); F(x) repeats it.
  std::vector<std::vector<std::vector<Rational>>> trajectories;
  /// Cyclically consecutive entries of every trajectory are >= delta apart.
  bool in_X = false;
  /// F(Tx) is F(x) shifted by one.
  bool equivariant = false;

  std::size_t N() const noexcept { return embedding.centers.size(); }
};

/// Throws ValidationError when T has a fixed point.
UniversalityMap universality_map(const FiniteDynSys& sys);

struct PhiResult {
  int M = 1;
  std::vector<Rational> phi;
  /// Points with phi(Tx) != phi(x) + 1.
  PointSet E;
  /// Per point, the stopping probabilities of steps 0..M summed.
  std::vector<Rational> stop_mass;

  // Hypotheses, each computed exactly.
  /// Every point is T^n K for some 0 <= n <= M, K = {w = 1}.
  bool covering = false;
  /// w vanishes off U.
  bool support_in_U = false;
  /// U and T^{-n}U are disjoint for 1 <= n <= N.
  bool marker = false;

  // Conclusions, computed regardless of the hypotheses.
  bool E_in_preimage_of_U = false;   // E is inside T^{-1}U
  bool E_no_short_returns = false;   // E and T^{-n}E disjoint for 1 <= n <= N
  bool additive_off_E = false;
  bool stop_mass_is_one = false;
};

/// phi(x) = sum_{n=1}^{M} n * prod_{k<n} (1 - w(T^{-k}x)) * w(T^{-n}x).
std::vector<Rational> lindenstrauss_phi_values(const FiniteDynSys& sys,
                                               const std::vector<Rational>& w, int M);

/// phi with its defect set E and every hypothesis and conclusion flag.
/// Throws ValidationError when w leaves [0, 1] or M < 1.
PhiResult lindenstrauss_phi(const FiniteDynSys& sys, const std::vector<Rational>& w, int M,
                            const PointSet& U, int N);

Json to_json(const MarkerWitness& w);
Json to_json(const EpsilonEmbedding& e);
Json to_json(const UniversalityMap& u);
Json to_json(const PhiResult& r);

}  // namespace zpindex
