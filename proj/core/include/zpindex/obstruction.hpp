#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zpindex/index_lab.hpp"
#include "zpindex/json.hpp"
#include "zpindex/rational.hpp"

namespace zpindex {

/// Which periodic-point space a certificate speaks about: P_p(X(N, delta))
/// or P_p(Z).
enum class ObstructionSide { X, Z };
std::string to_string(ObstructionSide side);

struct StoreEntry {
  ObstructionSide side = ObstructionSide::X;
  int p = 2;
  /// Whether the bound holds for the space itself and not only for the
  /// cubical approximation it was computed on. Coindex witnesses on inner
  /// approximations transfer by inclusion; index bounds on them do not.
  bool applies_to_space = false;
  /// Grid subdivision the certificate was computed at; none for ambient bounds.
  std::optional<int> grid;
  IndexCertificate certificate;
};

struct CertificateStore {
  std::vector<StoreEntry> entries;
};

Json to_json(const CertificateStore& store);
/// Re-validates every certificate on load.
CertificateStore certificate_store_from_json(const Json& j);

/// ind_p P_p(Z) <= p: P_p(Z) sits in the p-torus.
IndexCertificate torus_dimension_bound(int p);

struct ObstructionOptions {
  int N = 1;
  Rational delta{1, 2};
  int grid = 4;
  int depth = 0;
  std::uint64_t node_budget = 20'000'000;
  std::uint64_t cell_budget = 10'000'000;
};

/// Builds both inner approximations per prime, climbs coind witnesses
/// n = 0, 1, ... until a search fails or runs out of budget, and adds the
/// ambient bounds.
CertificateStore build_obstruction_store(std::span<const int> primes,
                                         const ObstructionOptions& options);

struct ObstructionRow {
  int p = 2;
  std::optional<int> x_coind_lower;
  std::optional<int> x_ind_upper;
  std::optional<int> z_coind_lower;
  std::optional<int> z_ind_upper;
  std::optional<int> grid;
  /// x_coind_lower >= z_ind_upper + 1, which would contradict an
  /// equivariant map from P_p(X(N, delta)) to P_p(Z).
  bool gap_certified = false;
  std::string verdict;
};

/// One row per prime. Throws ValidationError on an empty store, on a prime
/// without an X-side coind bound or a Z-side upper bound, or on mixed grids;
/// ConsistencyError when a lower bound exceeds an upper bound.
std::vector<ObstructionRow> obstruction_report(std::span<const int> primes,
                                               const CertificateStore& store);

Json report_to_json(const std::vector<ObstructionRow>& rows);
std::string report_to_csv(const std::vector<ObstructionRow>& rows);

}  // namespace zpindex
