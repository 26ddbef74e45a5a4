#include <sstream>

#include "zpindex/complex_json.hpp"
#include "zpindex/errors.hpp"
#include "zpindex/index_lab.hpp"

namespace zpindex {

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::map_witness: return "map_witness";
    case CertificateKind::exhaustion: return "exhaustion";
    case CertificateKind::connectivity_bound: return "connectivity_bound";
    case CertificateKind::dimension_bound: return "dimension_bound";
    case CertificateKind::ambient_bound: return "ambient_bound";
    case CertificateKind::combined: return "combined";
  }
  return "?";
}

std::string to_string(BoundType type) {
  switch (type) {
    case BoundType::ind_upper: return "ind_upper";
    case BoundType::ind_lower: return "ind_lower";
    case BoundType::coind_lower: return "coind_lower";
    case BoundType::coind_upper: return "coind_upper";
  }
  return "?";
}

namespace {

template <class Enum, std::size_t N>
Enum parse_enum(const std::string& text, const Enum (&values)[N], const char* what) {
  for (Enum v : values)
    if (to_string(v) == text) return v;
  throw ValidationError(std::string("unknown ") + what + " '" + text + "'");
}

constexpr CertificateKind kKinds[] = {
    CertificateKind::map_witness,     CertificateKind::exhaustion,
    CertificateKind::connectivity_bound, CertificateKind::dimension_bound,
    CertificateKind::ambient_bound,   CertificateKind::combined};
constexpr BoundType kBounds[] = {BoundType::ind_upper, BoundType::ind_lower,
                                 BoundType::coind_lower, BoundType::coind_upper};
constexpr SearchStatus kStatuses[] = {SearchStatus::found, SearchStatus::exhausted,
                                      SearchStatus::inconclusive};

}  // namespace

void validate_certificate(const IndexCertificate& cert) {
  if (cert.map) {
    auto check = check_equivariant_map(*cert.map);
    if (!check.ok())
      throw ConsistencyError("certificate map fails validation: " + check.failure);
    if (cert.kind == CertificateKind::map_witness && cert.bound_type == BoundType::coind_lower &&
        cert.map->target->p() != cert.p)
      throw ConsistencyError("certificate p does not match its map");
  }
  if (cert.kind == CertificateKind::map_witness && !cert.map)
    throw ConsistencyError("map witness without a map");
  for (const auto& child : cert.children) validate_certificate(child);
}

Json to_json(const EquivariantMap& map) {
  return Json{{"source", to_json(*map.source)},
              {"target", to_json(*map.target)},
              {"vertex_map", map.vertex_map}};
}

EquivariantMap equivariant_map_from_json(const Json& j) {
  try {
    return EquivariantMap{
        std::make_shared<const FreeZpComplex>(free_complex_from_json(j.at("source"))),
        std::make_shared<const FreeZpComplex>(free_complex_from_json(j.at("target"))),
        j.at("vertex_map").get<std::vector<Vertex>>()};
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed map JSON: ") + e.what());
  }
}

Json to_json(const IndexCertificate& cert) {
  Json evidence = Json::object();
  if (cert.map) evidence["map"] = to_json(*cert.map);
  if (cert.homology) evidence["homology"] = to_json(*cert.homology);
  if (cert.trace)
    evidence["search"] = Json{{"status", to_string(cert.trace->status)},
                              {"nodes", cert.trace->nodes},
                              {"source_orbits", cert.trace->source_orbits},
                              {"target_vertices", cert.trace->target_vertices}};
  if (!cert.children.empty()) {
    Json children = Json::array();
    for (const auto& c : cert.children) children.push_back(to_json(c));
    evidence["children"] = std::move(children);
  }
  if (!cert.note.empty()) evidence["note"] = cert.note;
  if (cert.caveat) evidence["caveat"] = true;
  return Json{{"kind", to_string(cert.kind)},
              {"bound_type", to_string(cert.bound_type)},
              {"value", cert.value},
              {"depth", cert.depth},
              {"p", cert.p},
              {"space", cert.space},
              {"evidence", std::move(evidence)}};
}

IndexCertificate certificate_from_json(const Json& j) {
  IndexCertificate cert;
  try {
    cert.kind = parse_enum(j.at("kind").get<std::string>(), kKinds, "certificate kind");
    cert.bound_type = parse_enum(j.at("bound_type").get<std::string>(), kBounds, "bound type");
    cert.value = j.at("value").get<int>();
    cert.depth = j.at("depth").get<int>();
    cert.p = j.value("p", 2);
    cert.space = j.value("space", std::string());
    const Json& ev = j.at("evidence");
    if (ev.contains("map")) cert.map = equivariant_map_from_json(ev.at("map"));
    if (ev.contains("homology")) {
      const Json& h = ev.at("homology");
      HomologyProfile profile;
      profile.p = h.at("p").get<int>();
      profile.reduced = h.at("reduced").get<bool>();
      profile.betti = h.at("betti").get<std::vector<std::size_t>>();
      const Json& c = h.at("homological_connectivity");
      profile.connectivity =
          c.is_string() ? Connectivity::infinite() : Connectivity::finite(c.get<int>());
      cert.homology = profile;
    }
    if (ev.contains("search")) {
      const Json& s = ev.at("search");
      cert.trace = SearchTrace{parse_enum(s.at("status").get<std::string>(), kStatuses, "status"),
                               s.at("nodes").get<std::uint64_t>(),
                               s.at("source_orbits").get<std::size_t>(),
                               s.at("target_vertices").get<std::size_t>()};
    }
    if (ev.contains("children"))
      for (const auto& c : ev.at("children")) cert.children.push_back(certificate_from_json(c));
    cert.note = ev.value("note", std::string());
    cert.caveat = ev.value("caveat", false);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed certificate JSON: ") + e.what());
  }
  validate_certificate(cert);
  return cert;
}

std::string proof_trace(const IndexCertificate& cert, int indent) {
  std::ostringstream out;
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const char* relation = cert.bound_type == BoundType::ind_upper     ? "ind <= "
                         : cert.bound_type == BoundType::ind_lower   ? "ind >= "
                         : cert.bound_type == BoundType::coind_lower ? "coind >= "
                                                                     : "coind <= ";
  if (cert.kind == CertificateKind::exhaustion)
    out << pad << "[exhaustion] attempted " << relation << cert.value;
  else
    out << pad << "[" << to_string(cert.kind) << "] " << relation << cert.value;
  out << "  (p=" << cert.p << ", depth=" << cert.depth << ", space=" << cert.space << ")\n";
  if (cert.map) {
    out << pad << "  map: " << cert.map->source->complex().vertex_count() << " source vertices -> "
        << cert.map->target->complex().vertex_count() << " target vertices; "
        << (check_equivariant_map(*cert.map).ok() ? "simplicial and equivariant" : "INVALID")
        << "\n";
  }
  if (cert.trace)
    out << pad << "  search: " << to_string(cert.trace->status) << " after " << cert.trace->nodes
        << " nodes over " << cert.trace->source_orbits << " source orbits\n";
  if (cert.homology) {
    out << pad << "  reduced betti:";
    for (auto b : cert.homology->betti) out << ' ' << b;
    out << "  connectivity " << cert.homology->connectivity.to_string() << "\n";
  }
  if (!cert.note.empty()) out << pad << "  note: " << cert.note << "\n";
  if (cert.caveat) out << pad << "  CAVEAT: bound rests on homology alone\n";
  for (const auto& c : cert.children) out << proof_trace(c, indent + 1);
  return out.str();
}

}  // namespace zpindex
