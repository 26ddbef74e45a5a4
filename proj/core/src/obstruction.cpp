#include "zpindex/obstruction.hpp"

#include <algorithm>
#include <sstream>

#include "zpindex/config_space.hpp"
#include "zpindex/errors.hpp"

namespace zpindex {

std::string to_string(ObstructionSide side) { return side == ObstructionSide::X ? "X" : "Z"; }

Json to_json(const CertificateStore& store) {
  Json entries = Json::array();
  for (const auto& e : store.entries) {
    Json j{{"side", to_string(e.side)},
           {"p", e.p},
           {"applies_to_space", e.applies_to_space},
           {"certificate", to_json(e.certificate)}};
    j["grid"] = e.grid ? Json(*e.grid) : Json(nullptr);
    entries.push_back(std::move(j));
  }
  return Json{{"entries", std::move(entries)}};
}

CertificateStore certificate_store_from_json(const Json& j) {
  CertificateStore store;
  try {
    for (const auto& e : j.at("entries")) {
      StoreEntry entry;
      const auto side = e.at("side").get<std::string>();
      if (side != "X" && side != "Z") throw ValidationError("unknown store side '" + side + "'");
      entry.side = side == "X" ? ObstructionSide::X : ObstructionSide::Z;
      entry.p = e.at("p").get<int>();
      entry.applies_to_space = e.at("applies_to_space").get<bool>();
      if (e.contains("grid") && !e.at("grid").is_null()) entry.grid = e.at("grid").get<int>();
      entry.certificate = certificate_from_json(e.at("certificate"));
      store.entries.push_back(std::move(entry));
    }
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("malformed certificate store: ") + ex.what());
  }
  return store;
}

IndexCertificate torus_dimension_bound(int p) {
  require_prime(p);
  IndexCertificate cert;
  cert.kind = CertificateKind::ambient_bound;
  cert.bound_type = BoundType::ind_upper;
  cert.value = p;
  cert.p = p;
  cert.space = "P_" + std::to_string(p) + "(Z)";
  cert.note = "free compact subspace of the p-torus, so ind <= dim <= p";
  return cert;
}

namespace {

// Witnesses for coind >= 0, 1, ... until one fails; the failure is kept as
// an exhaustion record.
void climb_coindex(const FreeZpComplex& x, const ObstructionOptions& options, ObstructionSide side,
                   int p, CertificateStore& store) {
  if (x.empty()) {
    store.entries.push_back({side, p, true, options.grid, empty_space_coindex(p)});
    return;
  }
  SearchOptions search{options.depth, options.node_budget};
  for (int n = 0; n <= x.dim(); ++n) {
    IndexCertificate cert;
    try {
      cert = coindex_lower(x, n, search);
    } catch (const BudgetExceeded&) {
      return;
    }
    const bool found = cert.kind == CertificateKind::map_witness;
    store.entries.push_back({side, p, found, options.grid, std::move(cert)});
    if (!found) return;
  }
}

}  // namespace

CertificateStore build_obstruction_store(std::span<const int> primes,
                                         const ObstructionOptions& options) {
  CertificateStore store;
  for (int p : primes) {
    require_prime(p);
    const auto x = build_Pp_Xm(options.N, options.delta, 1, p, GridSpec{options.N, options.grid, false},
                               options.cell_budget);
    climb_coindex(cubical_to_simplicial(x), options, ObstructionSide::X, p, store);
    store.entries.push_back({ObstructionSide::X, p, true, std::nullopt,
                             ambient_sphere_bound(options.N, p, "P_" + std::to_string(p) + "(X)")});

    const auto z = build_Pp_YZ(SpaceKind::Z, p, GridSpec{1, options.grid, true}, options.cell_budget);
    climb_coindex(cubical_to_simplicial(z), options, ObstructionSide::Z, p, store);
    store.entries.push_back({ObstructionSide::Z, p, true, std::nullopt, torus_dimension_bound(p)});
  }
  return store;
}

std::vector<ObstructionRow> obstruction_report(std::span<const int> primes,
                                               const CertificateStore& store) {
  if (store.entries.empty()) throw ValidationError("certificate store is empty");
  if (primes.empty()) throw ValidationError("no primes requested");
  std::vector<ObstructionRow> rows;
  for (int p : primes) {
    require_prime(p);
    ObstructionRow row;
    row.p = p;
    auto raise = [](std::optional<int>& slot, int v) { slot = slot ? std::max(*slot, v) : v; };
    auto lower = [](std::optional<int>& slot, int v) { slot = slot ? std::min(*slot, v) : v; };
    for (const auto& e : store.entries) {
      if (e.p != p) continue;
      validate_certificate(e.certificate);
      if (e.grid) {
        if (row.grid && *row.grid != *e.grid)
          throw ValidationError("certificates for p=" + std::to_string(p) +
                                " mix grid resolutions");
        row.grid = e.grid;
      }
      const auto& c = e.certificate;
      if (!e.applies_to_space || !c.binding()) continue;
      const bool x_side = e.side == ObstructionSide::X;
      if (c.bound_type == BoundType::coind_lower) raise(x_side ? row.x_coind_lower : row.z_coind_lower, c.value);
      if (c.bound_type == BoundType::ind_upper) lower(x_side ? row.x_ind_upper : row.z_ind_upper, c.value);
    }
    if (!row.x_coind_lower)
      throw ValidationError("missing X-side coindex certificate for p=" + std::to_string(p));
    if (!row.z_ind_upper)
      throw ValidationError("missing Z-side upper bound for p=" + std::to_string(p));
    if (row.x_ind_upper && *row.x_coind_lower > *row.x_ind_upper)
      throw ConsistencyError("X side: coind lower bound exceeds ind upper bound at p=" +
                             std::to_string(p));
    if (row.z_coind_lower && *row.z_coind_lower > *row.z_ind_upper)
      throw ConsistencyError("Z side: coind lower bound exceeds ind upper bound at p=" +
                             std::to_string(p));
    row.gap_certified = *row.x_coind_lower >= *row.z_ind_upper + 1;
    row.verdict = row.gap_certified ? "gap certified" : "gap not certified at this resolution";
    rows.push_back(std::move(row));
  }
  return rows;
}

Json report_to_json(const std::vector<ObstructionRow>& rows) {
  auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back(Json{{"p", r.p},
                       {"grid", opt(r.grid)},
                       {"x_coind_lower", opt(r.x_coind_lower)},
                       {"x_ind_upper", opt(r.x_ind_upper)},
                       {"z_coind_lower", opt(r.z_coind_lower)},
                       {"z_ind_upper", opt(r.z_ind_upper)},
                       {"gap_certified", r.gap_certified},
                       {"verdict", r.verdict}});
  return out;
}

std::string report_to_csv(const std::vector<ObstructionRow>& rows) {
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  std::ostringstream out;
  out << "p,grid,x_coind_lower,x_ind_upper,z_coind_lower,z_ind_upper,gap_certified,verdict\n";
  for (const auto& r : rows)
    out << r.p << ',' << opt(r.grid) << ',' << opt(r.x_coind_lower) << ',' << opt(r.x_ind_upper)
        << ',' << opt(r.z_coind_lower) << ',' << opt(r.z_ind_upper) << ','
        << (r.gap_certified ? "true" : "false") << ',' << r.verdict << '\n';
  return out.str();
}

}  // namespace zpindex
