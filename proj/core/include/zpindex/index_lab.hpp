#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zpindex/json.hpp"
#include "zpindex/simplicial.hpp"

namespace zpindex {

/// Vertex map between free Z_p-complexes. Meant to be simplicial and
/// equivariant; check_equivariant_map decides whether it is.
struct EquivariantMap {
  std::shared_ptr<const FreeZpComplex> source;
  std::shared_ptr<const FreeZpComplex> target;
  std::vector<Vertex> vertex_map;
};

struct MapCheck {
  bool sizes_ok = false;
  bool simplicial = false;
  bool equivariant = false;
  std::string failure;
  bool ok() const noexcept { return sizes_ok && simplicial && equivariant; }
};

/// Independent validator for search output. Shares no code with the search.
MapCheck check_equivariant_map(const FreeZpComplex& source, const FreeZpComplex& target,
                               std::span<const Vertex> vertex_map);
MapCheck check_equivariant_map(const EquivariantMap& map);

// ---------------------------------------------------------------------------
// Map search

enum class SearchStatus { found, exhausted, inconclusive };

struct SearchOptions {
  /// Barycentric subdivisions applied to the source before searching.
  int depth = 0;
  /// Candidate assignments tried before giving up as inconclusive.
  std::uint64_t node_budget = 200'000'000;
};

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<EquivariantMap> map;
  std::uint64_t nodes = 0;
  int depth = 0;
  std::size_t source_orbits = 0;
  std::size_t target_vertices = 0;
};

/// Exhaustive backtracking for an equivariant simplicial map from the
/// depth-fold subdivided source into target.
///
/// One representative per source vertex orbit (its smallest vertex) is
/// assigned; the rest of the orbit follows by equivariance. Orbits are
/// visited in breadth-first order over the orbit adjacency graph, candidate
/// target vertices in ascending index. The first orbit is only sent to
/// target orbit representatives, which loses no solutions since composing
/// with the target action preserves equivariance.
SearchResult search_equivariant_map(const FreeZpComplex& source, const FreeZpComplex& target,
                                    const SearchOptions& options = {});

/// Same search; nullopt means exhausted, BudgetExceeded means inconclusive.
std::optional<EquivariantMap> find_equivariant_map(const FreeZpComplex& source,
                                                   const FreeZpComplex& target,
                                                   const SearchOptions& options = {});

std::string to_string(SearchStatus status);

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateKind {
  map_witness,
  exhaustion,
  connectivity_bound,
  dimension_bound,
  ambient_bound,
  combined,
};

enum class BoundType { ind_upper, ind_lower, coind_lower, coind_upper };

std::string to_string(CertificateKind kind);
std::string to_string(BoundType type);

struct SearchTrace {
  SearchStatus status = SearchStatus::exhausted;
  std::uint64_t nodes = 0;
  std::size_t source_orbits = 0;
  std::size_t target_vertices = 0;
};

/// A checkable witness for one bound on ind_p or coind_p of one space.
///
/// Exhaustion certificates are records, not bounds: they say no simplicial
/// map exists at the recorded depth, which does not rule out a continuous
/// map. They never take part in consistency checks.
struct IndexCertificate {
  CertificateKind kind = CertificateKind::combined;
  BoundType bound_type = BoundType::coind_lower;
  int value = 0;
  int depth = 0;
  int p = 2;
  /// Content id of the complex, or a symbolic label for unbuilt spaces.
  std::string space;
  std::optional<EquivariantMap> map;
  std::optional<HomologyProfile> homology;
  std::optional<SearchTrace> trace;
  std::vector<IndexCertificate> children;
  /// Set when the bound rests on homology alone where homotopy is needed.
  bool caveat = false;
  std::string note;

  bool binding() const noexcept { return kind != CertificateKind::exhaustion; }
};

/// coind >= n by a map from (subdivided) e_n_zp into X, or an exhaustion
/// record. Throws BudgetExceeded when the search is inconclusive.
IndexCertificate coindex_lower(const FreeZpComplex& x, int n, const SearchOptions& options = {});

/// ind <= n by a map from (subdivided) X into e_n_zp, or an exhaustion record.
IndexCertificate index_upper(const FreeZpComplex& x, int n, const SearchOptions& options = {});

/// ind >= homological connectivity + 1. Caveat set when the connectivity is
/// at least 1 and simple connectivity was not verified.
IndexCertificate index_lower_from_connectivity(const FreeZpComplex& x);

/// ind <= dim X for a free simplicial Z_p-complex.
IndexCertificate index_upper_from_dimension(const FreeZpComplex& x);

/// coind of the empty space is -1.
IndexCertificate empty_space_coindex(int p);

/// True iff no binding lower bound (coind, or ind without a caveat) exceeds a
/// binding upper bound it constrains.
/// Throws ValidationError when the certificates concern different spaces.
bool coindex_le_index_check(std::span<const IndexCertificate> certs);

/// Throws ConsistencyError when coindex_le_index_check is false.
void require_consistent(std::span<const IndexCertificate> certs);

/// coind(X x Y) >= min(m, n) from witnesses f: E_m -> X and g: E_n -> Y,
/// bundling f (or f restricted along E_min in E_max), g likewise, and the
/// inclusion h. The product itself is never triangulated.
IndexCertificate product_coindex_certificate(const IndexCertificate& cx,
                                             const IndexCertificate& cy);

/// coind(X * Y) >= m + n + 1 from witnesses f: E_m -> X and g: E_n -> Y via
/// the join map f * g. An empty-space certificate on either side returns the
/// other certificate unchanged.
IndexCertificate join_coindex_certificate(const IndexCertificate& cx, const IndexCertificate& cy,
                                          std::size_t simplex_budget = 10'000'000);

/// Restriction of a coind witness E_n -> X along E_m in E_n (m <= n).
IndexCertificate restrict_coindex_witness(const IndexCertificate& cert, int m);

/// Transfers a coind witness for (X, T) to (X, T^a) with the same vertex map,
/// then checks the way back with b, ab = 1 mod p.
IndexCertificate iterate_action_coindex(const IndexCertificate& cert, int a);

/// ind_p P_p(X(N, delta)) <= Np - N - 1.
IndexCertificate ambient_sphere_bound(int N, int p, std::string space = {});

/// Re-validates every embedded map (recursively) with the independent
/// checker. Throws ConsistencyError on the first failure.
void validate_certificate(const IndexCertificate& cert);

struct BoundSummary {
  std::optional<int> coind_lower;
  std::optional<int> ind_upper;
  std::optional<int> ind_lower;
};

/// Best binding bounds among the certificates.
BoundSummary summarize(std::span<const IndexCertificate> certs);

/// Inclusion sd^depth(e_m) -> sd^depth(e_n) on vertices, m <= n.
std::vector<Vertex> enzp_inclusion(int m, int n, int p, int depth);

Json to_json(const EquivariantMap& map);
EquivariantMap equivariant_map_from_json(const Json& j);
Json to_json(const IndexCertificate& cert);
/// Parses and re-validates.
IndexCertificate certificate_from_json(const Json& j);

/// Human-readable multi-line proof trace.
std::string proof_trace(const IndexCertificate& cert, int indent = 0);

}  // namespace zpindex
