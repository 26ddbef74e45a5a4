#include <algorithm>
#include <numeric>

#include "zpindex/complex_json.hpp"
#include "zpindex/errors.hpp"
#include "zpindex/index_lab.hpp"

namespace zpindex {

namespace {

IndexCertificate from_search(const SearchResult& result, BoundType type, int n, int p,
                             std::string space) {
  if (result.status == SearchStatus::inconclusive)
    throw BudgetExceeded("map search for " + to_string(type) + " " + std::to_string(n) +
                             " ran out of budget after " + std::to_string(result.nodes) +
                             " nodes",
                         result.nodes);
  IndexCertificate cert;
  cert.bound_type = type;
  cert.value = n;
  cert.depth = result.depth;
  cert.p = p;
  cert.space = std::move(space);
  cert.trace = SearchTrace{result.status, result.nodes, result.source_orbits,
                           result.target_vertices};
  if (result.status == SearchStatus::found) {
    cert.kind = CertificateKind::map_witness;
    cert.map = result.map;
  } else {
    cert.kind = CertificateKind::exhaustion;
    cert.note = "no equivariant simplicial map at subdivision depth " +
                std::to_string(result.depth) + "; not a disproof of a continuous map";
  }
  return cert;
}

const EquivariantMap& require_coind_witness(const IndexCertificate& cert, const char* who) {
  if (cert.kind != CertificateKind::map_witness || cert.bound_type != BoundType::coind_lower ||
      !cert.map)
    throw ValidationError(std::string(who) + " needs coind_lower map witnesses");
  return *cert.map;
}

bool is_empty_coindex(const IndexCertificate& cert) {
  return cert.bound_type == BoundType::coind_lower && cert.value == -1 &&
         cert.kind == CertificateKind::dimension_bound;
}

int mod_inverse(int a, int p) {
  for (int b = 1; b < p; ++b)
    if ((a * b) % p == 1) return b;
  throw ValidationError("no inverse of " + std::to_string(a) + " mod " + std::to_string(p));
}

}  // namespace

IndexCertificate coindex_lower(const FreeZpComplex& x, int n, const SearchOptions& options) {
  if (n < 0) throw ValidationError("coindex target n must be nonnegative");
  auto result = search_equivariant_map(e_n_zp(n, x.p()), x, options);
  return from_search(result, BoundType::coind_lower, n, x.p(), content_id(x));
}

IndexCertificate index_upper(const FreeZpComplex& x, int n, const SearchOptions& options) {
  if (n < 0) throw ValidationError("index target n must be nonnegative");
  auto result = search_equivariant_map(x, e_n_zp(n, x.p()), options);
  return from_search(result, BoundType::ind_upper, n, x.p(), content_id(x));
}

IndexCertificate index_lower_from_connectivity(const FreeZpComplex& x) {
  auto profile = homology(x.complex(), x.p(), true);
  if (profile.connectivity.is_infinite())
    throw ConsistencyError("free Z_p-complex with vanishing reduced homology");
  IndexCertificate cert;
  cert.kind = CertificateKind::connectivity_bound;
  cert.bound_type = BoundType::ind_lower;
  cert.value = profile.connectivity.value() + 1;
  cert.p = x.p();
  cert.space = content_id(x);
  cert.homology = profile;
  if (profile.connectivity.value() >= 1 && !x.simply_connected_verified()) {
    cert.caveat = true;
    cert.note = "homological connectivity only; simple connectivity not verified";
  } else {
    cert.note = "ind >= conn + 1";
  }
  return cert;
}

IndexCertificate index_upper_from_dimension(const FreeZpComplex& x) {
  IndexCertificate cert;
  cert.kind = CertificateKind::dimension_bound;
  cert.bound_type = BoundType::ind_upper;
  cert.value = x.dim();
  cert.p = x.p();
  cert.space = content_id(x);
  cert.note = "ind <= dim for free simplicial Z_p-complexes";
  return cert;
}

IndexCertificate empty_space_coindex(int p) {
  IndexCertificate cert;
  cert.kind = CertificateKind::dimension_bound;
  cert.bound_type = BoundType::coind_lower;
  cert.value = -1;
  cert.p = p;
  cert.space = content_id(FreeZpComplex(p));
  cert.note = "coindex of the empty set is -1";
  return cert;
}

bool coindex_le_index_check(std::span<const IndexCertificate> certs) {
  for (const auto& c : certs)
    if (c.space != certs.front().space)
      throw ValidationError("certificates concern different spaces (" + certs.front().space +
                            " vs " + c.space + ")");
  // coind <= ind, so a coind lower bound is checked against both kinds of
  // upper bound; an ind lower bound only against ind upper bounds.
  for (const auto& lower : certs) {
    if (!lower.binding()) continue;
    const bool coind = lower.bound_type == BoundType::coind_lower;
    const bool ind = lower.bound_type == BoundType::ind_lower && !lower.caveat;
    if (!coind && !ind) continue;
    for (const auto& upper : certs) {
      if (!upper.binding()) continue;
      const bool applies = upper.bound_type == BoundType::ind_upper ||
                           (coind && upper.bound_type == BoundType::coind_upper);
      if (applies && lower.value > upper.value) return false;
    }
  }
  return true;
}

void require_consistent(std::span<const IndexCertificate> certs) {
  if (!coindex_le_index_check(certs))
    throw ConsistencyError("certified coindex lower bound exceeds a certified index upper bound");
}

std::vector<Vertex> enzp_inclusion(int m, int n, int p, int depth) {
  if (m > n) throw ValidationError("inclusion E_m -> E_n needs m <= n");
  FreeZpComplex small = e_n_zp(m, p), big = e_n_zp(n, p);
  std::vector<Vertex> inc(small.complex().vertex_count());
  std::iota(inc.begin(), inc.end(), 0);
  for (int k = 0; k < depth; ++k) {
    // Vertices of the subdivision are simplices, numbered by (dim, lex).
    auto numbering = [](const SimplicialComplex& c, const Simplex& s) {
      std::size_t offset = 0;
      for (int d = 0; d + 1 < static_cast<int>(s.size()); ++d) offset += c.simplices(d).size();
      return static_cast<Vertex>(offset + *c.index_of(s));
    };
    std::vector<Vertex> next;
    for (int d = 0; d <= small.complex().dim(); ++d)
      for (const auto& s : small.complex().simplices(d)) {
        Simplex image;
        for (Vertex v : s) image.push_back(inc[v]);
        std::sort(image.begin(), image.end());
        next.push_back(numbering(big.complex(), image));
      }
    inc = std::move(next);
    small = barycentric_subdivide(small);
    big = barycentric_subdivide(big);
  }
  return inc;
}

IndexCertificate restrict_coindex_witness(const IndexCertificate& cert, int m) {
  const auto& f = require_coind_witness(cert, "restriction");
  if (m < 0 || m > cert.value)
    throw ValidationError("restriction target must lie in 0..n");
  auto inc = enzp_inclusion(m, cert.value, cert.p, cert.depth);
  std::vector<Vertex> composed;
  composed.reserve(inc.size());
  for (Vertex v : inc) composed.push_back(f.vertex_map[v]);

  IndexCertificate out = cert;
  out.value = m;
  out.children.clear();
  out.trace.reset();
  out.map = EquivariantMap{
      std::make_shared<const FreeZpComplex>(subdivide_times(e_n_zp(m, cert.p), cert.depth)),
      f.target, std::move(composed)};
  out.note = "restriction of a coind " + std::to_string(cert.value) + " witness along E_" +
             std::to_string(m) + " in E_" + std::to_string(cert.value);
  validate_certificate(out);
  return out;
}

IndexCertificate product_coindex_certificate(const IndexCertificate& cx,
                                             const IndexCertificate& cy) {
  require_coind_witness(cx, "product certificate");
  require_coind_witness(cy, "product certificate");
  if (cx.p != cy.p) throw ValidationError("product of spaces with different p");

  const int low = std::min(cx.value, cy.value), high = std::max(cx.value, cy.value);
  IndexCertificate h;
  h.kind = CertificateKind::map_witness;
  h.bound_type = BoundType::coind_lower;
  h.value = low;
  h.p = cx.p;
  auto big = std::make_shared<const FreeZpComplex>(e_n_zp(high, cx.p));
  h.space = content_id(*big);
  h.map = EquivariantMap{std::make_shared<const FreeZpComplex>(e_n_zp(low, cx.p)), big,
                         enzp_inclusion(low, high, cx.p, 0)};
  h.note = "inclusion h: E_" + std::to_string(low) + " in E_" + std::to_string(high);
  validate_certificate(h);

  IndexCertificate out;
  out.kind = CertificateKind::combined;
  out.bound_type = BoundType::coind_lower;
  out.value = low;
  out.p = cx.p;
  out.space = "product(" + cx.space + "," + cy.space + ")";
  out.children.push_back(cx.value == low ? cx : restrict_coindex_witness(cx, low));
  out.children.push_back(cy.value == low ? cy : restrict_coindex_witness(cy, low));
  out.children.push_back(std::move(h));
  out.note = "u -> (f(u), g(h(u))); upper bound coind(X x Y) <= min(coind X, coind Y) "
             "via the two projections";
  return out;
}

IndexCertificate join_coindex_certificate(const IndexCertificate& cx, const IndexCertificate& cy,
                                          std::size_t simplex_budget) {
  if (cx.p != cy.p) throw ValidationError("join of spaces with different p");
  if (is_empty_coindex(cy)) return cx;
  if (is_empty_coindex(cx)) return cy;
  const auto& f = require_coind_witness(cx, "join certificate");
  const auto& g = require_coind_witness(cy, "join certificate");

  auto source = std::make_shared<const FreeZpComplex>(join(*f.source, *g.source, simplex_budget));
  auto target = std::make_shared<const FreeZpComplex>(join(*f.target, *g.target, simplex_budget));
  std::vector<Vertex> vm = f.vertex_map;
  const auto offset = static_cast<Vertex>(f.target->complex().vertex_count());
  for (Vertex v : g.vertex_map) vm.push_back(v + offset);

  IndexCertificate out;
  out.kind = CertificateKind::map_witness;
  out.bound_type = BoundType::coind_lower;
  out.value = cx.value + cy.value + 1;
  out.depth = std::max(cx.depth, cy.depth);
  out.p = cx.p;
  out.space = content_id(*target);
  out.map = EquivariantMap{source, target, std::move(vm)};
  out.children = {cx, cy};
  out.note = "join map f * g from E_" + std::to_string(cx.value) + " * E_" +
             std::to_string(cy.value) + " = E_" + std::to_string(out.value);
  validate_certificate(out);
  return out;
}

IndexCertificate iterate_action_coindex(const IndexCertificate& cert, int a) {
  const auto& f = require_coind_witness(cert, "action iteration");
  const int p = cert.p;
  if (a < 1 || a > p - 1) throw ValidationError("exponent a must lie in 1..p-1");
  if (a == 1) return cert;
  const int b = mod_inverse(a, p);

  auto source_a = std::make_shared<const FreeZpComplex>(f.source->with_action_power(a));
  auto target_a = std::make_shared<const FreeZpComplex>(f.target->with_action_power(a));
  EquivariantMap forward{source_a, target_a, f.vertex_map};
  if (auto check = check_equivariant_map(forward); !check.ok())
    throw ConsistencyError("iterated witness fails: " + check.failure);

  // (T^a)^b = T: the same vertex map must take us back.
  EquivariantMap back{std::make_shared<const FreeZpComplex>(source_a->with_action_power(b)),
                      std::make_shared<const FreeZpComplex>(target_a->with_action_power(b)),
                      f.vertex_map};
  if (!(*back.source == *f.source) || !(*back.target == *f.target) ||
      !check_equivariant_map(back).ok())
    throw ConsistencyError("inverse exponent does not recover the original action");

  IndexCertificate out = cert;
  out.space = content_id(*target_a);
  out.map = std::move(forward);
  out.trace.reset();
  out.children = {cert};
  out.note = "same vertex map for (E, S^" + std::to_string(a) + ") -> (X, T^" +
             std::to_string(a) + "); back with b = " + std::to_string(b);
  return out;
}

IndexCertificate ambient_sphere_bound(int N, int p, std::string space) {
  require_prime(p);
  if (N < 1) throw ValidationError("N must be at least 1");
  IndexCertificate cert;
  cert.kind = CertificateKind::ambient_bound;
  cert.bound_type = BoundType::ind_upper;
  cert.value = N * p - N - 1;
  cert.p = p;
  cert.space = space.empty() ? "ambient:P_p(X(N,delta)):N=" + std::to_string(N) +
                                   ":p=" + std::to_string(p)
                             : std::move(space);
  cert.note = "P_p(X(N,delta)) sits in (R^N)^p minus the diagonal, equivariantly a sphere "
              "of dimension Np-N-1";
  return cert;
}

BoundSummary summarize(std::span<const IndexCertificate> certs) {
  BoundSummary s;
  auto raise = [](std::optional<int>& slot, int v) { slot = slot ? std::max(*slot, v) : v; };
  auto lower = [](std::optional<int>& slot, int v) { slot = slot ? std::min(*slot, v) : v; };
  for (const auto& c : certs) {
    if (!c.binding()) continue;
    switch (c.bound_type) {
      case BoundType::coind_lower: raise(s.coind_lower, c.value); break;
      case BoundType::ind_upper: lower(s.ind_upper, c.value); break;
      case BoundType::ind_lower: raise(s.ind_lower, c.value); break;
      case BoundType::coind_upper: break;
    }
  }
  return s;
}

}  // namespace zpindex
