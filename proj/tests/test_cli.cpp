#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dispatch.hpp"
#include "zpindex/index_lab.hpp"
#include "zpindex/obstruction.hpp"

using namespace zpindex;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json result_of(const Run& r) { return Json::parse(r.out).at("result"); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::current_path() / "cli_scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("enzp reports the sphere homology") {
  auto r = call({"enzp", "--n", "2", "--p", "2", "--homology"});
  REQUIRE(r.code == cli::kOk);
  auto res = result_of(r);
  CHECK(res.at("homology").at("betti") == Json::array({1, 0, 1}));
  CHECK(res.at("dim") == 2);
}

TEST_CASE("periodic counts") {
  auto r = call({"periodic", "--shift", "sigma", "--n", "5"});
  REQUIRE(r.code == cli::kOk);
  CHECK(result_of(r).at("count") == 30);
  auto m = call({"periodic", "--shift", "sigma_m", "--m", "4", "--n", "4"});
  CHECK(result_of(m).at("count") == 0);
}

TEST_CASE("coind on the X_1 approximation gives a witness") {
  auto r = call({"coind", "--space", "Xm", "--N", "1", "--delta", "3/10", "--m", "1", "--p", "3",
                 "--grid", "6", "--target", "0"});
  REQUIRE(r.code == cli::kOk);
  auto res = result_of(r);
  CHECK(res.at("status") == "witness");
  auto cert = certificate_from_json(res.at("certificate"));
  CHECK(cert.kind == CertificateKind::map_witness);
  CHECK(cert.value == 0);
}

TEST_CASE("exit codes") {
  CHECK(call({"frobnicate"}).code == cli::kValidation);
  CHECK(call({}).code == cli::kValidation);
  CHECK(call({"enzp", "--n", "1", "--p", "4"}).code == cli::kValidation);
  CHECK(call({"enzp", "--n", "1"}).code == cli::kValidation);
  CHECK(call({"coind", "--space", "Xm", "--delta", "1/0", "--p", "3", "--target", "0"}).code ==
        cli::kValidation);
  CHECK(call({"--node-budget", "3", "coind", "--space", "Z", "--p", "3", "--grid", "4",
              "--target", "1"})
            .code == cli::kBudget);
  CHECK(call({"--cell-budget", "5", "config-space", "--space", "Xm", "--p", "3", "--grid", "6",
              "--delta", "1/3"})
            .code == cli::kBudget);
}

TEST_CASE("contradictory certificate stores exit with the consistency code") {
  auto dir = scratch("consistency");
  CertificateStore store;
  store.entries.push_back(StoreEntry{ObstructionSide::X, 2, true, 4, coindex_lower(e_n_zp(2, 2), 2)});
  store.entries.push_back(StoreEntry{ObstructionSide::X, 2, true, std::nullopt, ambient_sphere_bound(1, 2)});
  store.entries.push_back(StoreEntry{ObstructionSide::Z, 2, true, std::nullopt, torus_dimension_bound(2)});
  const auto path = (dir / "store.json").string();
  std::ofstream(path) << to_json(store).dump();
  auto r = call({"obstruction-report", "--primes", "2", "--store", path});
  CHECK(r.code == cli::kConsistency);
  CHECK(r.err.find("consistency") != std::string::npos);
}

TEST_CASE("stores are re-validated when loaded") {
  auto dir = scratch("store");
  const auto path = (dir / "store.json").string();
  auto built = call({"obstruction-report", "--primes", "2", "--grid", "4", "--save-store", path});
  REQUIRE(built.code == cli::kOk);
  auto reloaded = call({"obstruction-report", "--primes", "2", "--store", path});
  REQUIRE(reloaded.code == cli::kOk);
  CHECK(result_of(reloaded).at("rows") == result_of(built).at("rows"));

  Json j = Json::parse(slurp(path));
  for (auto& e : j.at("entries"))
    if (e.at("certificate").at("kind") == "map_witness") {
      auto& images = e.at("certificate").at("evidence").at("map").at("vertex_map");
      images[0] = images[1];
      break;
    }
  std::ofstream(path) << j.dump();
  CHECK(call({"obstruction-report", "--primes", "2", "--store", path}).code == cli::kConsistency);
}

TEST_CASE("artifacts, index and determinism") {
  auto dir = scratch("artifacts");
  const auto a = (dir / "table.json").string();
  const auto csv = (dir / "table.csv").string();
  std::vector<std::string> args{"--out", a, "--csv", csv, "periodic", "--table", "--from", "1",
                                "--to", "6"};
  REQUIRE(call(args).code == cli::kOk);
  const auto first = slurp(a), first_csv = slurp(csv);
  REQUIRE(call(args).code == cli::kOk);
  CHECK(slurp(a) == first);
  CHECK(slurp(csv) == first_csv);
  CHECK(first_csv.rfind("period,count,orbit_count\n", 0) == 0);

  Json index = Json::parse(slurp(dir / "index.json"));
  CHECK(index.at("table.json").at("command") == "periodic");
  CHECK(index.contains("table.csv"));

  Json artifact = Json::parse(first);
  const auto& prov = artifact.at("provenance");
  CHECK(prov.at("tool") == "zpindex");
  CHECK(prov.contains("version"));
  CHECK(prov.at("parameters").at("from") == "1");
}

TEST_CASE("certificate hashes are recorded") {
  auto r = call({"coind", "--space", "Z", "--p", "2", "--grid", "4", "--target", "0"});
  REQUIRE(r.code == cli::kOk);
  auto j = Json::parse(r.out);
  CHECK_FALSE(j.at("provenance").at("certificate_hashes").empty());
}

TEST_CASE("manifests run through the same parser") {
  auto dir = scratch("manifest");
  Json m{{"subcommand", "enzp"},
         {"params", {{"n", 1}, {"p", 3}, {"homology", true}, {"reduced", true}}},
         {"output", (dir / "e1.json").string()},
         {"seed", 7},
         {"budget", {{"nodes", 1000000}, {"cells", 1000000}}}};
  std::ostringstream out, err;
  REQUIRE(cli::run_manifest(m, out, err) == cli::kOk);
  const auto first = slurp(dir / "e1.json");
  Json artifact = Json::parse(first);
  CHECK(artifact.at("result").at("homology").at("betti") == Json::array({0, 4}));
  CHECK(artifact.at("provenance").at("seed") == 7);
  REQUIRE(cli::run_manifest(m, out, err) == cli::kOk);
  CHECK(slurp(dir / "e1.json") == first);

  Json bad = m;
  bad["params"]["p"] = 6;
  CHECK(cli::run_manifest(bad, out, err) == cli::kValidation);
  Json unknown = m;
  unknown["subcommand"] = "nope";
  CHECK(cli::run_manifest(unknown, out, err) == cli::kValidation);
  Json odd = m;
  odd["params"]["n"] = 1.5;
  CHECK(cli::run_manifest(odd, out, err) == cli::kValidation);
}

TEST_CASE("marker and phi subcommands") {
  auto mk = call({"marker-check", "--cyclic", "10", "--N", "3", "--U", "0"});
  REQUIRE(mk.code == cli::kOk);
  CHECK(result_of(mk).at("witness").at("return_times_ok") == true);
  auto ph = call({"phi", "--cyclic", "12", "--w-indicator", "0", "--M", "11", "--U", "0,1", "--N", "2"});
  REQUIRE(ph.code == cli::kOk);
  auto phi = result_of(ph).at("phi");
  CHECK(phi.at("E") == Json::array({11}));
  CHECK(phi.at("checks").at("E_in_preimage_of_U") == true);
  CHECK(call({"universality", "--cyclic", "1"}).code == cli::kValidation);
  CHECK(call({"eps-embed", "--cyclic", "5", "--eps", "2/5"}).code == cli::kOk);
}

TEST_CASE("relabel and config-space subcommands") {
  auto rl = call({"relabel", "--m", "2", "--l", "3", "--p", "5", "--grid", "3", "--delta", "1/3"});
  REQUIRE(rl.code == cli::kOk);
  auto res = result_of(rl);
  CHECK(res.at("f_after_g_identity") == true);
  CHECK(res.at("g_after_f_identity") == true);
  auto ch = call({"cubical-homology", "--space", "Xm", "--p", "2", "--grid", "4", "--delta", "3/5"});
  REQUIRE(ch.code == cli::kOk);
  auto cs = call({"config-space", "--space", "Y", "--p", "2", "--grid", "2"});
  REQUIRE(cs.code == cli::kOk);
}
