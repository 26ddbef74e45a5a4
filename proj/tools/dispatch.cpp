#include "dispatch.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "zpindex/complex_json.hpp"
#include "zpindex/config_space.hpp"
#include "zpindex/errors.hpp"
#include "zpindex/index_lab.hpp"
#include "zpindex/marker.hpp"
#include "zpindex/obstruction.hpp"
#include "zpindex/symbolic.hpp"

#ifndef ZPINDEX_VERSION
#define ZPINDEX_VERSION "0.0.0"
#endif

namespace zpindex::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string out_path;
  std::string csv_path;
  std::uint64_t node_budget = 200'000'000;
  std::uint64_t cell_budget = kDefaultCellBudget;
  std::uint64_t seed = 0;
};

struct Params {
  int n = 0, p = 2, N = 1, m = 1, grid = 4, coeff = 0, target = 0, depth = 0, l = 1;
  int copies = 2, M = 1, return_time = 1, from = 2, to = 8, compare_target = -1;
  std::string delta = "1/2", space = "Xm", shift = "sigma", eps = "1/2";
  std::string in, a, b, source, target_file, system, U, w, w_indicator, store, save_store;
  std::string primes = "2,3";
  std::size_t cyclic = 0;
  bool homology = false, reduced = false, list = false, simplicial = false, table = false;
};

/// What a command produced: the result body plus certificates to hash.
struct Output {
  Json result;
  std::vector<Json> certificates;
  std::string csv;
};

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

int parse_int(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(std::string("bad ") + what + " '" + text + "'");
  }
}

PointSet parse_points(const std::string& text) {
  PointSet points;
  for (const auto& s : split_list(text)) {
    int v = parse_int(s, "point");
    if (v < 0) throw ValidationError("points are non-negative");
    points.push_back(static_cast<std::uint32_t>(v));
  }
  return points;
}

std::vector<int> parse_primes(const std::string& text) {
  std::vector<int> primes;
  for (const auto& s : split_list(text)) {
    primes.push_back(parse_int(s, "prime"));
    require_prime(primes.back());
  }
  if (primes.empty()) throw ValidationError("no primes given");
  return primes;
}

FreeZpComplex load_complex(const std::string& path) {
  if (path.empty()) throw ValidationError("no complex file given");
  return free_complex_from_json(load_json_file(path));
}

std::optional<CubicalZpComplex> build_space(const Params& q, const Common& c) {
  const SpaceKind kind = parse_space_kind(q.space);
  if (kind == SpaceKind::Xm)
    return build_Pp_Xm(q.N, parse_rational(q.delta), q.m, q.p, GridSpec{q.N, q.grid, false},
                       c.cell_budget);
  if (q.N != 1) throw ValidationError("Y and Z are circle-valued with N = 1");
  return build_Pp_YZ(kind, q.p, GridSpec{1, q.grid, true}, c.cell_budget);
}

/// The complex named by --in, or built from --space.
struct Space {
  FreeZpComplex complex;
  std::optional<CubicalZpComplex> cubical;
};

Space resolve_space(const Params& q, const Common& c) {
  if (!q.in.empty()) return Space{load_complex(q.in), std::nullopt};
  auto cubical = build_space(q, c);
  return Space{cubical_to_simplicial(*cubical), std::move(cubical)};
}

FiniteDynSys load_system(const Params& q) {
  if (!q.system.empty() && q.cyclic) throw ValidationError("give --system or --cyclic, not both");
  if (!q.system.empty()) return dynsys_from_json(load_json_file(q.system));
  if (q.cyclic) return cyclic_system(q.cyclic);
  throw ValidationError("a system is required (--system FILE or --cyclic N)");
}

Subshift resolve_shift(const Params& q) {
  if (q.shift == "sigma") return make_sigma();
  if (q.shift == "sigma_m") return make_sigma_m(q.m);
  throw ValidationError("unknown shift '" + q.shift + "' (expected sigma or sigma_m)");
}

Json certificate_block(const IndexCertificate& cert, Output& out) {
  Json j = to_json(cert);
  out.certificates.push_back(j);
  return j;
}

// ---------------------------------------------------------------------------
// Commands

Output cmd_enzp(const Params& q, const Common&) {
  auto e = e_n_zp(q.n, q.p);
  Output out;
  out.result = Json{{"complex", to_json(e)}, {"dim", e.dim()}, {"content_id", content_id(e)}};
  if (q.homology) out.result["homology"] = to_json(homology(e.complex(), q.p, q.reduced));
  return out;
}

Output cmd_join(const Params& q, const Common& c) {
  auto j = join(load_complex(q.a), load_complex(q.b), c.cell_budget);
  return Output{Json{{"complex", to_json(j)},
                     {"simply_connected_verified", j.simply_connected_verified()},
                     {"content_id", content_id(j)}},
                {}, {}};
}

Output cmd_subdivide(const Params& q, const Common&) {
  if (q.depth < 0) throw ValidationError("depth must be non-negative");
  auto s = subdivide_times(load_complex(q.in), q.depth);
  return Output{Json{{"complex", to_json(s)}, {"content_id", content_id(s)}}, {}, {}};
}

Output cmd_homology(const Params& q, const Common&) {
  auto x = load_complex(q.in);
  const int coeff = q.coeff ? q.coeff : x.p();
  return Output{Json{{"homology", to_json(homology(x.complex(), coeff, q.reduced))},
                     {"euler_characteristic", x.complex().euler_characteristic()}},
                {}, {}};
}

Output cmd_search_map(const Params& q, const Common& c) {
  auto source = load_complex(q.source), target = load_complex(q.target_file);
  auto r = search_equivariant_map(source, target, SearchOptions{q.depth, c.node_budget});
  if (r.status == SearchStatus::inconclusive)
    throw BudgetExceeded("map search ran out of budget after " + std::to_string(r.nodes) +
                             " nodes",
                         r.nodes);
  Output out;
  out.result = Json{{"status", to_string(r.status)},
                    {"nodes", r.nodes},
                    {"depth", r.depth},
                    {"source_orbits", r.source_orbits}};
  if (r.map) out.result["map"] = to_json(*r.map);
  return out;
}

Json space_header(const Space& s) {
  Json j{{"content_id", content_id(s.complex)},
         {"vertices", s.complex.complex().vertex_count()},
         {"dim", s.complex.dim()}};
  if (s.cubical) j["cubical"] = provenance(*s.cubical);
  return j;
}

Output cmd_coind(const Params& q, const Common& c) {
  const Space s = resolve_space(q, c);
  Output out;
  IndexCertificate cert = s.complex.empty()
                              ? empty_space_coindex(s.complex.p())
                              : coindex_lower(s.complex, q.target, {q.depth, c.node_budget});
  std::vector<IndexCertificate> checked{cert};
  if (!s.complex.empty()) checked.push_back(index_upper_from_dimension(s.complex));
  require_consistent(checked);
  if (s.cubical && s.cubical->constraint().kind == SpaceKind::Xm && cert.binding()) {
    // Inner approximation: its coind bounds the space's, which is at most
    // the ambient index bound.
    const auto ambient = ambient_sphere_bound(q.N, q.p);
    if (cert.value > ambient.value)
      throw ConsistencyError("coind witness exceeds the ambient index bound");
    out.result["ambient_bound"] = certificate_block(ambient, out);
  }
  out.result["space"] = space_header(s);
  out.result["status"] = cert.kind == CertificateKind::map_witness ? "witness"
                         : cert.binding()                          ? "bound"
                                                                   : "exhausted";
  out.result["certificate"] = certificate_block(cert, out);
  out.result["proof_trace"] = proof_trace(cert);
  return out;
}

Output cmd_ind(const Params& q, const Common& c) {
  const Space s = resolve_space(q, c);
  if (s.complex.empty()) throw ValidationError("the index of the empty space is not modelled");
  Output out;
  std::vector<IndexCertificate> certs{index_upper(s.complex, q.target, {q.depth, c.node_budget}),
                                      index_lower_from_connectivity(s.complex),
                                      index_upper_from_dimension(s.complex)};
  require_consistent(certs);
  Json list = Json::array();
  for (const auto& cert : certs) list.push_back(certificate_block(cert, out));
  const auto summary = summarize(certs);
  auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  out.result = Json{{"space", space_header(s)},
                    {"status", certs[0].kind == CertificateKind::map_witness ? "witness"
                                                                             : "exhausted"},
                    {"certificates", std::move(list)},
                    {"ind_upper", opt(summary.ind_upper)},
                    {"ind_lower", opt(summary.ind_lower)}};
  return out;
}

Output cmd_periodic(const Params& q, const Common& c) {
  const Subshift shift = resolve_shift(q);
  Output out;
  if (q.table) {
    out.csv = periodic_table_csv(shift, q.from, q.to);
    Json rows = Json::array();
    for (int n = q.from; n <= q.to; ++n) {
      auto set = periodic_points(shift, n, c.node_budget);
      rows.push_back(Json{{"period", n}, {"count", set.points.size()},
                          {"orbit_count", set.orbit_count()}});
    }
    out.result = Json{{"shift", q.shift}, {"rows", std::move(rows)}};
    return out;
  }
  auto set = periodic_points(shift, q.n, c.node_budget);
  out.result = Json{{"shift", q.shift},
                    {"period", q.n},
                    {"count", set.points.size()},
                    {"orbit_count", set.orbit_count()},
                    {"rotation_free", set.rotation_free()}};
  if (q.shift == "sigma_m") out.result["m"] = q.m;
  if (q.list) {
    Json words = Json::array();
    for (const auto& w : set.points) words.push_back(word_to_string(w));
    out.result["points"] = std::move(words);
  }
  return out;
}

Output cmd_join_periodic(const Params& q, const Common& c) {
  const Subshift shift = resolve_shift(q);
  auto set = periodic_points(shift, q.n, c.node_budget);
  auto x = join_power(set, q.copies);
  Output out;
  out.result = Json{{"period", q.n}, {"copies", q.copies}, {"points", set.points.size()},
                    {"content_id", content_id(x)}, {"dim", x.dim()}};
  if (q.target >= 0) {
    auto cert = coindex_lower(x, q.target, {q.depth, c.node_budget});
    std::vector<IndexCertificate> checked{cert, index_upper_from_dimension(x)};
    require_consistent(checked);
    out.result["certificate"] = certificate_block(cert, out);
    out.result["proof_trace"] = proof_trace(cert);
  }
  return out;
}

Output cmd_config_space(const Params& q, const Common& c) {
  auto cubical = build_space(q, c);
  Output out;
  out.result = Json{{"space", provenance(*cubical)}};
  Json counts = Json::array();
  std::vector<std::size_t> per_dim(static_cast<std::size_t>(std::max(cubical->complex().dim(), -1) + 1));
  for (const auto& cell : cubical->complex().cells()) ++per_dim[static_cast<std::size_t>(cell_dim(cell))];
  out.result["cells_by_dim"] = per_dim;
  if (q.simplicial) {
    auto x = cubical_to_simplicial(*cubical);
    out.result["complex"] = to_json(x);
    out.result["content_id"] = content_id(x);
  }
  return out;
}

Output cmd_cubical_homology(const Params& q, const Common& c) {
  auto cubical = build_space(q, c);
  const int coeff = q.coeff ? q.coeff : q.p;
  auto cubical_profile = cubical_homology(*cubical, coeff, q.reduced);
  auto simplicial_profile =
      homology(cubical_to_simplicial(*cubical).complex(), coeff, q.reduced);
  if (cubical_profile.betti != simplicial_profile.betti)
    throw ConsistencyError("cubical and simplicial homology disagree");
  return Output{Json{{"space", provenance(*cubical)},
                     {"cubical", to_json(cubical_profile)},
                     {"simplicial", to_json(simplicial_profile)},
                     {"agree", true}},
                {}, {}};
}

Output cmd_relabel(const Params& q, const Common& c) {
  auto offset_m =
      build_Pp_Xm(q.N, parse_rational(q.delta), q.m, q.p, GridSpec{q.N, q.grid, false}, c.cell_budget);
  auto r = relabel_isomorphism(offset_m, q.l);
  Output out;
  out.result = Json{{"offset_m", provenance(offset_m)},
                    {"offset_one", provenance(r.offset_one)},
                    {"l", q.l},
                    {"f_after_g_identity", r.f_after_g_identity},
                    {"g_after_f_identity", r.g_after_f_identity},
                    {"intertwines", r.intertwines},
                    {"matches_direct_build", r.matches_direct_build}};
  if (q.compare_target >= 0 && !offset_m.empty()) {
    const SearchOptions opts{q.depth, c.node_budget};
    auto a = coindex_lower(cubical_to_simplicial(offset_m), q.compare_target, opts);
    auto b = coindex_lower(cubical_to_simplicial(r.offset_one), q.compare_target, opts);
    out.result["coind_offset_m"] = certificate_block(a, out);
    out.result["coind_offset_one"] = certificate_block(b, out);
    out.result["coind_agree"] = a.kind == b.kind;
  }
  return out;
}

Output cmd_marker_check(const Params& q, const Common&) {
  auto sys = load_system(q);
  return Output{Json{{"points", sys.size()},
                     {"witness", to_json(check_marker(sys, q.return_time, parse_points(q.U)))}},
                {}, {}};
}

Output cmd_eps_embed(const Params& q, const Common&) {
  auto sys = load_system(q).rescaled_to_unit_diameter();
  return Output{Json{{"embedding", to_json(epsilon_embedding(sys, parse_rational(q.eps)))}}, {},
                {}};
}

Output cmd_universality(const Params& q, const Common&) {
  return Output{Json{{"universality", to_json(universality_map(load_system(q)))}}, {}, {}};
}

Output cmd_phi(const Params& q, const Common&) {
  auto sys = load_system(q);
  std::vector<Rational> w(sys.size(), 0);
  if (!q.w.empty() && !q.w_indicator.empty())
    throw ValidationError("give --w or --w-indicator, not both");
  if (!q.w.empty()) {
    const auto items = split_list(q.w);
    if (items.size() != sys.size()) throw ValidationError("--w needs one value per point");
    for (std::size_t i = 0; i < items.size(); ++i) w[i] = parse_rational(items[i]);
  } else {
    for (auto x : parse_points(q.w_indicator)) {
      if (x >= sys.size()) throw ValidationError("indicator point outside the system");
      w[x] = 1;
    }
  }
  auto r = lindenstrauss_phi(sys, w, q.M, parse_points(q.U), q.return_time);
  if (r.covering && r.support_in_U && !r.E_in_preimage_of_U)
    throw ConsistencyError("E is not inside T^{-1}U although the hypotheses hold");
  if (r.covering && r.support_in_U && r.marker && !r.E_no_short_returns)
    throw ConsistencyError("E returns within N steps although the hypotheses hold");
  return Output{Json{{"phi", to_json(r)}, {"N", q.return_time}, {"U", parse_points(q.U)}}, {}, {}};
}

Output cmd_obstruction_report(const Params& q, const Common& c) {
  const auto primes = parse_primes(q.primes);
  CertificateStore store;
  if (!q.store.empty()) {
    store = certificate_store_from_json(load_json_file(q.store));
  } else {
    ObstructionOptions opts;
    opts.N = q.N;
    opts.delta = parse_rational(q.delta);
    opts.grid = q.grid;
    opts.depth = q.depth;
    opts.node_budget = c.node_budget;
    opts.cell_budget = c.cell_budget;
    store = build_obstruction_store(primes, opts);
  }
  if (!q.save_store.empty()) {
    std::ofstream f(q.save_store);
    if (!f) throw ValidationError("cannot write '" + q.save_store + "'");
    f << to_json(store).dump(2) << '\n';
  }
  auto rows = obstruction_report(primes, store);
  Output out;
  for (const auto& e : store.entries) out.certificates.push_back(to_json(e.certificate));
  out.result = Json{{"rows", report_to_json(rows)},
                    {"caveat", "bounds hold for the spaces; Z-side upper bounds come from "
                               "dimension only, X-side lower bounds from inner cubical "
                               "approximations"}};
  out.csv = report_to_csv(rows);
  return out;
}

// ---------------------------------------------------------------------------

using Handler = std::function<Output(const Params&, const Common&)>;

struct Registered {
  CLI::App* app;
  Handler handler;
};

void add_space_options(CLI::App* sub, Params& q) {
  sub->add_option("--space", q.space, "Xm, Y or Z")->capture_default_str();
  sub->add_option("--N", q.N, "cube dimension")->capture_default_str();
  sub->add_option("--delta", q.delta, "separation threshold a/b")->capture_default_str();
  sub->add_option("--m", q.m, "offset")->capture_default_str();
  sub->add_option("--p", q.p, "prime")->capture_default_str();
  sub->add_option("--grid", q.grid, "subdivisions per axis")->capture_default_str();
}

void add_system_options(CLI::App* sub, Params& q) {
  sub->add_option("--system", q.system, "system JSON file");
  sub->add_option("--cyclic", q.cyclic, "Z/nZ rotation with the arc metric");
}

Json recorded_parameters(const CLI::App* sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    const auto& results = opt->results();
    params[name] = results.size() == 1 ? results.front() : Json(results).dump();
  }
  return params;
}

void write_artifact(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream f(target, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << content;
}

// index.json beside the artifact: file name -> {command, fnv1a64}.
void update_index(const std::string& artifact, const std::string& command,
                  const std::string& content) {
  const fs::path target(artifact);
  const fs::path index = target.parent_path() / "index.json";
  Json j = Json::object();
  if (fs::exists(index)) {
    std::ifstream in(index);
    try {
      j = Json::parse(in);
    } catch (const Json::exception&) {
      j = Json::object();
    }
  }
  j[target.filename().string()] = Json{{"command", command}, {"fnv1a64", hex64(fnv1a64(content))}};
  write_artifact(index.string(), j.dump(2) + "\n");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Z_p-index and coindex certificates for periodic-point spaces", "zpindex"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  Params q;
  app.add_option("--out", common.out_path, "write the JSON artifact here (plus index.json)");
  app.add_option("--csv", common.csv_path, "write the CSV table here, when there is one");
  app.add_option("--node-budget", common.node_budget, "search node budget")->capture_default_str();
  app.add_option("--cell-budget", common.cell_budget, "cell / simplex budget")->capture_default_str();
  app.add_option("--seed", common.seed, "recorded in the provenance block");

  std::map<std::string, Registered> commands;
  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands[name] = Registered{sub, std::move(h)};
    return sub;
  };

  auto* enzp = add("enzp", "canonical E_n Z_p complex", cmd_enzp);
  enzp->add_option("--n", q.n, "dimension")->required();
  enzp->add_option("--p", q.p, "prime")->required();
  enzp->add_flag("--homology", q.homology, "include homology over F_p");
  enzp->add_flag("--reduced", q.reduced, "reduced homology");

  auto* joinc = add("join", "join of two free Z_p-complexes", cmd_join);
  joinc->add_option("--a", q.a, "first complex JSON")->required();
  joinc->add_option("--b", q.b, "second complex JSON")->required();

  auto* sub = add("subdivide", "iterated barycentric subdivision", cmd_subdivide);
  sub->add_option("--in", q.in, "complex JSON")->required();
  sub->add_option("--depth", q.depth, "number of subdivisions")->capture_default_str();

  auto* hom = add("homology", "homology over F_p", cmd_homology);
  hom->add_option("--in", q.in, "complex JSON")->required();
  hom->add_option("--coeff", q.coeff, "coefficient prime (default: the complex's p)");
  hom->add_flag("--reduced", q.reduced, "reduced homology");

  auto* search = add("search-map", "equivariant simplicial map search", cmd_search_map);
  search->add_option("--source", q.source, "source complex JSON")->required();
  search->add_option("--target", q.target_file, "target complex JSON")->required();
  search->add_option("--depth", q.depth, "subdivisions of the source")->capture_default_str();

  auto* coind = add("coind", "coind lower bound by a map from E_n", cmd_coind);
  add_space_options(coind, q);
  coind->add_option("--in", q.in, "complex JSON instead of --space");
  coind->add_option("--target", q.target, "n in E_n")->required();
  coind->add_option("--depth", q.depth, "subdivisions of E_n")->capture_default_str();

  auto* ind = add("ind", "ind upper bound by a map into E_n, plus homology bounds", cmd_ind);
  add_space_options(ind, q);
  ind->add_option("--in", q.in, "complex JSON instead of --space");
  ind->add_option("--target", q.target, "n in E_n")->required();
  ind->add_option("--depth", q.depth, "subdivisions of the space")->capture_default_str();

  auto* per = add("periodic", "periodic points of Sigma or Sigma_m", cmd_periodic);
  per->add_option("--shift", q.shift, "sigma or sigma_m")->capture_default_str();
  per->add_option("--m", q.m, "offset for sigma_m")->capture_default_str();
  per->add_option("--n", q.n, "period");
  per->add_flag("--list", q.list, "list the points");
  per->add_flag("--table", q.table, "counts for periods --from..--to");
  per->add_option("--from", q.from, "first period of the table")->capture_default_str();
  per->add_option("--to", q.to, "last period of the table")->capture_default_str();

  auto* jp = add("join-periodic", "coind of joins of periodic-point sets", cmd_join_periodic);
  jp->add_option("--shift", q.shift, "sigma or sigma_m")->capture_default_str();
  jp->add_option("--m", q.m, "offset for sigma_m")->capture_default_str();
  jp->add_option("--n", q.n, "prime period")->required();
  jp->add_option("--copies", q.copies, "number of join factors")->capture_default_str();
  jp->add_option("--target", q.target, "n in E_n; negative skips the search")->capture_default_str();
  jp->add_option("--depth", q.depth, "subdivisions of E_n")->capture_default_str();

  auto* cs = add("config-space", "cubical inner approximation", cmd_config_space);
  add_space_options(cs, q);
  cs->add_flag("--simplicial", q.simplicial, "include the triangulated complex");

  auto* ch = add("cubical-homology", "cubical and simplicial homology", cmd_cubical_homology);
  add_space_options(ch, q);
  ch->add_option("--coeff", q.coeff, "coefficient prime (default: p)");
  ch->add_flag("--reduced", q.reduced, "reduced homology");

  auto* rl = add("relabel", "offset-m to offset-1 isomorphism", cmd_relabel);
  rl->add_option("--N", q.N, "cube dimension")->capture_default_str();
  rl->add_option("--delta", q.delta, "separation threshold a/b")->capture_default_str();
  rl->add_option("--m", q.m, "offset")->required();
  rl->add_option("--l", q.l, "inverse of m mod p")->required();
  rl->add_option("--p", q.p, "prime")->required();
  rl->add_option("--grid", q.grid, "subdivisions per axis")->capture_default_str();
  rl->add_option("--target", q.compare_target, "also compare coind >= target on both sides");
  rl->add_option("--depth", q.depth, "subdivisions of E_n")->capture_default_str();

  auto* mk = add("marker-check", "marker property flags for a finite system", cmd_marker_check);
  add_system_options(mk, q);
  mk->add_option("--N", q.return_time, "return-time horizon")->required();
  mk->add_option("--U", q.U, "comma-separated points");

  auto* ee = add("eps-embed", "epsilon-embedding into a cube", cmd_eps_embed);
  add_system_options(ee, q);
  ee->add_option("--eps", q.eps, "epsilon a/b")->required();

  auto* un = add("universality", "equivariant map into X(N, delta)", cmd_universality);
  add_system_options(un, q);

  auto* ph = add("phi", "Lindenstrauss marker function and its defect set", cmd_phi);
  add_system_options(ph, q);
  ph->add_option("--w", q.w, "comma-separated weights a/b, one per point");
  ph->add_option("--w-indicator", q.w_indicator, "w = 1 on these points, 0 elsewhere");
  ph->add_option("--M", q.M, "walk length")->required();
  ph->add_option("--U", q.U, "comma-separated points");
  ph->add_option("--N", q.return_time, "return-time horizon")->capture_default_str();

  auto* ob = add("obstruction-report", "X versus Z coindex gap per prime", cmd_obstruction_report);
  ob->add_option("--primes", q.primes, "comma-separated primes")->capture_default_str();
  ob->add_option("--N", q.N, "cube dimension")->capture_default_str();
  ob->add_option("--delta", q.delta, "separation threshold a/b")->capture_default_str();
  ob->add_option("--grid", q.grid, "subdivisions per axis")->capture_default_str();
  ob->add_option("--depth", q.depth, "subdivisions of E_n")->capture_default_str();
  ob->add_option("--store", q.store, "certificate store JSON instead of building one");
  ob->add_option("--save-store", q.save_store, "write the store used");

  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--out" || a == "--csv" || a == "--node-budget" || a == "--cell-budget" ||
        a == "--seed") {
      ++i;
      continue;
    }
    if (a.rfind("-", 0) == 0) continue;
    if (!commands.contains(a)) {
      err << "error: unknown subcommand '" << a << "'\n";
      return kValidation;
    }
    break;
  }

  std::vector<const char*> argv{"zpindex"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    for (auto& [name, reg] : commands) {
      if (!reg.app->parsed()) continue;
      Output result = reg.handler(q, common);
      Json provenance{{"tool", "zpindex"},
                      {"version", ZPINDEX_VERSION},
                      {"seed", common.seed},
                      {"node_budget", common.node_budget},
                      {"cell_budget", common.cell_budget},
                      {"parameters", recorded_parameters(reg.app)}};
      Json hashes = Json::array();
      for (const auto& c : result.certificates) hashes.push_back(hex64(fnv1a64(c.dump())));
      provenance["certificate_hashes"] = std::move(hashes);
      Json artifact{{"command", name}, {"result", std::move(result.result)},
                    {"provenance", std::move(provenance)}};
      const std::string text = artifact.dump(2) + "\n";
      if (common.out_path.empty()) {
        out << text;
      } else {
        write_artifact(common.out_path, text);
        update_index(common.out_path, name, text);
      }
      if (!common.csv_path.empty() && !result.csv.empty()) {
        write_artifact(common.csv_path, result.csv);
        if (!common.out_path.empty()) {
          const auto index_target =
              (fs::path(common.out_path).parent_path() / fs::path(common.csv_path).filename())
                  .string();
          update_index(index_target, name, result.csv);
        }
      }
      return kOk;
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

std::vector<std::string> manifest_arguments(const Json& manifest) {
  std::vector<std::string> args;
  try {
    if (manifest.contains("output")) {
      args.push_back("--out");
      args.push_back(manifest.at("output").get<std::string>());
    }
    if (manifest.contains("csv")) {
      args.push_back("--csv");
      args.push_back(manifest.at("csv").get<std::string>());
    }
    if (manifest.contains("seed")) {
      args.push_back("--seed");
      args.push_back(std::to_string(manifest.at("seed").get<std::uint64_t>()));
    }
    if (manifest.contains("budget")) {
      const Json& b = manifest.at("budget");
      if (b.contains("nodes")) {
        args.push_back("--node-budget");
        args.push_back(std::to_string(b.at("nodes").get<std::uint64_t>()));
      }
      if (b.contains("cells")) {
        args.push_back("--cell-budget");
        args.push_back(std::to_string(b.at("cells").get<std::uint64_t>()));
      }
    }
    args.push_back(manifest.at("subcommand").get<std::string>());
    if (manifest.contains("params")) {
      for (const auto& [key, value] : manifest.at("params").items()) {
        if (value.is_boolean()) {
          if (value.get<bool>()) args.push_back("--" + key);
          continue;
        }
        if (!value.is_string() && !value.is_number_integer())
          throw ValidationError("parameter '" + key + "' must be a string, integer or boolean");
        args.push_back("--" + key);
        args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
      }
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
  return args;
}

int run_manifest(const Json& manifest, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = manifest_arguments(manifest);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  }
  return run(args, out, err);
}

}  // namespace zpindex::cli
