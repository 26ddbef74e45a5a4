#include "zpindex/complex_json.hpp"

#include <cstdio>

#include "zpindex/errors.hpp"

namespace zpindex {

Json to_json(const FreeZpComplex& complex) {
  Json simplices = Json::array();
  for (const auto& s : complex.complex().maximal_simplices()) simplices.push_back(s);
  return Json{{"p", complex.p()},
              {"vertices", complex.complex().vertex_count()},
              {"perm", std::vector<Vertex>(complex.action().perm().begin(),
                                           complex.action().perm().end())},
              {"simplices", std::move(simplices)}};
}

FreeZpComplex free_complex_from_json(const Json& j) {
  try {
    const int p = j.at("p").get<int>();
    const auto vertices = j.at("vertices").get<std::size_t>();
    auto perm = j.at("perm").get<std::vector<Vertex>>();
    auto simplices = j.at("simplices").get<std::vector<Simplex>>();
    if (perm.size() != vertices)
      throw ValidationError("perm length does not match vertex count");
    return FreeZpComplex(SimplicialComplex::from_generators(vertices, simplices),
                         ZpAction(p, std::move(perm)));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed complex JSON: ") + e.what());
  }
}

Json to_json(const HomologyProfile& profile) {
  return Json{{"p", profile.p},
              {"reduced", profile.reduced},
              {"betti", profile.betti},
              {"homological_connectivity", profile.connectivity.is_infinite()
                                               ? Json("inf")
                                               : Json(profile.connectivity.value())}};
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string content_id(const FreeZpComplex& complex) {
  return hex64(fnv1a64(to_json(complex).dump()));
}

}  // namespace zpindex
