// Acceptance suite: one PASS/FAIL line per criterion. Artifacts are written
// through the CLI into <dir>/round1, then regenerated into <dir>/round2 and
// compared byte for byte.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "dispatch.hpp"
#include "oracles.hpp"
#include "zpindex/complex_json.hpp"
#include "zpindex/config_space.hpp"
#include "zpindex/errors.hpp"
#include "zpindex/index_lab.hpp"
#include "zpindex/marker.hpp"
#include "zpindex/symbolic.hpp"

using namespace zpindex;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  std::string artifact;
  std::vector<std::string> args;
};

class Suite {
 public:
  explicit Suite(fs::path dir) : dir_(std::move(dir)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_ / "round1");
    fs::create_directories(dir_ / "inputs");
  }

  const fs::path& dir() const { return dir_; }

  /// Runs the CLI into round1 and returns the artifact's result block.
  Json emit(const std::string& artifact, const std::vector<std::string>& args) {
    invocations_.push_back({artifact, args});
    const int code = run_into("round1", artifact, args);
    if (code != cli::kOk) {
      std::ostringstream msg;
      msg << "zpindex";
      for (const auto& a : args) msg << ' ' << a;
      msg << " exited with " << code;
      throw std::runtime_error(msg.str());
    }
    std::ifstream in(dir_ / "round1" / artifact);
    return Json::parse(in).at("result");
  }

  std::string write_input(const std::string& name, const Json& j) {
    const auto path = dir_ / "inputs" / name;
    std::ofstream(path) << j.dump() << '\n';
    return path.string();
  }

  /// Every certificate group computed by the suite goes through here.
  void sentinel(std::span<const IndexCertificate> certs) {
    if (!coindex_le_index_check(certs)) sentinel_fired_ = true;
  }
  void sentinel_fired() { sentinel_fired_ = true; }
  bool sentinel_ok() const { return !sentinel_fired_; }

  /// Reruns every invocation into round2 and lists differing files.
  std::vector<std::string> replay_and_compare() {
    fs::create_directories(dir_ / "round2");
    for (const auto& inv : invocations_) run_into("round2", inv.artifact, inv.args);
    std::vector<std::string> diffs;
    std::set<std::string> names;
    for (const auto* round : {"round1", "round2"})
      for (const auto& e : fs::directory_iterator(dir_ / round)) names.insert(e.path().filename().string());
    for (const auto& name : names) {
      if (slurp(dir_ / "round1" / name) != slurp(dir_ / "round2" / name) ||
          !fs::exists(dir_ / "round1" / name) || !fs::exists(dir_ / "round2" / name))
        diffs.push_back(name);
    }
    return diffs;
  }

  std::size_t artifact_count() const { return invocations_.size(); }

 private:
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  int run_into(const std::string& round, const std::string& artifact,
               std::vector<std::string> args) {
    const auto out = (dir_ / round / artifact).string();
    std::vector<std::string> full{"--out", out, "--seed", "1"};
    for (std::size_t i = 0; i < args.size(); ++i)
      if (args[i] == "--csv" && i + 1 < args.size()) args[i + 1] = (dir_ / round / args[i + 1]).string();
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream sink, err;
    const int code = cli::run(full, sink, err);
    if (code == cli::kConsistency) sentinel_fired_ = true;
    if (code != cli::kOk) std::cerr << err.str();
    return code;
  }

  fs::path dir_;
  std::vector<Invocation> invocations_;
  bool sentinel_fired_ = false;
};

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, Suite& suite,
               const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const ConsistencyError& e) {
    suite.sentinel_fired();
    o.require(false, std::string("consistency error: ") + e.what());
  } catch (const std::exception& e) {
    o.require(false, e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0) {
    std::ostringstream t;
    t << "runtime " << seconds << " s over the " << limit_s << " s limit";
    o.require(seconds < limit_s, t.str());
  }
  std::ostringstream line;
  line << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title;
  if (limit_s > 0) line << " [" << std::fixed;
  if (limit_s > 0) line.precision(2);
  if (limit_s > 0) line << seconds << " s / " << limit_s << " s]";
  if (!o.ok) line << " -- " << o.detail;
  std::cout << line.str() << std::endl;
  if (!o.ok) ++failures;
}

std::string str(int v) { return std::to_string(v); }

std::set<Word> brute_force_sigma(int n) {
  std::set<Word> out;
  Word w(static_cast<std::size_t>(n), 1);
  while (true) {
    bool ok = true;
    for (int i = 0; i < n; ++i)
      if (w[static_cast<std::size_t>(i)] == w[static_cast<std::size_t>((i + 1) % n)]) ok = false;
    if (ok) out.insert(w);
    std::size_t pos = 0;
    while (pos < w.size() && ++w[pos] > 3) w[pos++] = 1;
    if (pos == w.size()) return out;
  }
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::current_path() / "acceptance_artifacts";
  Suite suite(dir);

  criterion(1, "E_n Z_p pinned: coind = ind = n for n <= 2, p in {2,3}", 60, suite, [&](Outcome& o) {
    for (int p : {2, 3})
      for (int n = 0; n <= 2; ++n) {
        const std::string tag = "(n=" + str(n) + ", p=" + str(p) + ")";
        auto e = e_n_zp(n, p);
        auto lower = coindex_lower(e, n);
        auto upper = index_upper(e, n);
        auto conn = index_lower_from_connectivity(e);
        o.require(lower.kind == CertificateKind::map_witness && lower.value == n, tag + " coind witness");
        o.require(upper.kind == CertificateKind::map_witness && upper.value == n, tag + " ind witness");
        o.require(conn.value == n && !conn.caveat, tag + " ind >= n from connectivity");
        o.require(lower.map && check_equivariant_map(*lower.map).ok(), tag + " coind map re-check");
        o.require(upper.map && check_equivariant_map(*upper.map).ok(), tag + " ind map re-check");
        std::vector<IndexCertificate> certs{lower, upper, conn, index_upper_from_dimension(e)};
        suite.sentinel(certs);
        auto s = summarize(certs);
        o.require(s.coind_lower == n && s.ind_upper == n && s.ind_lower == n, tag + " summary");

        const auto input = suite.write_input("e" + str(n) + "z" + str(p) + ".json", to_json(e));
        auto c = suite.emit("c1_coind_" + str(n) + "_" + str(p) + ".json",
                            {"coind", "--in", input, "--target", str(n)});
        o.require(c.at("status") == "witness", tag + " CLI coind status");
        auto i = suite.emit("c1_ind_" + str(n) + "_" + str(p) + ".json",
                            {"ind", "--in", input, "--target", str(n)});
        o.require(i.at("status") == "witness", tag + " CLI ind status");
      }
  });

  criterion(2, "homology ground truth for E_1 Z_2, E_2 Z_2, E_1 Z_3", 5, suite, [&](Outcome& o) {
    auto circle = e_n_zp(1, 2), sphere = e_n_zp(2, 2), k33 = e_n_zp(1, 3);
    using B = std::vector<std::size_t>;
    o.require(homology(circle.complex(), 2, false).betti == B{1, 1}, "E_1 Z_2 betti");
    o.require(homology(sphere.complex(), 2, false).betti == B{1, 0, 1}, "E_2 Z_2 betti");
    o.require(homology(k33.complex(), 3, true).betti == B{0, 4}, "E_1 Z_3 reduced betti");
    for (const auto* x : {&circle, &sphere, &k33}) {
      auto dense = oracle::dense_betti(x->complex(), x->p());
      o.require(dense == homology(x->complex(), x->p(), false).betti, "dense rank oracle");
      long long chi = 0;
      for (std::size_t d = 0; d < dense.size(); ++d)
        chi += (d % 2 ? -1 : 1) * static_cast<long long>(dense[d]);
      o.require(chi == x->complex().euler_characteristic(), "Euler characteristic");
    }
    auto a = suite.emit("c2_e1z2.json", {"enzp", "--n", "1", "--p", "2", "--homology"});
    o.require(a.at("homology").at("betti") == Json::array({1, 1}), "CLI E_1 Z_2");
    auto b = suite.emit("c2_e2z2.json", {"enzp", "--n", "2", "--p", "2", "--homology"});
    o.require(b.at("homology").at("betti") == Json::array({1, 0, 1}), "CLI E_2 Z_2");
    auto c = suite.emit("c2_e1z3.json", {"enzp", "--n", "1", "--p", "3", "--homology", "--reduced"});
    o.require(c.at("homology").at("betti") == Json::array({0, 4}), "CLI E_1 Z_3");
  });

  criterion(3, "periodic-point counts of Sigma and Sigma_m", 30, suite, [&](Outcome& o) {
    for (int n = 2; n <= 8; ++n) {
      auto set = periodic_points(make_sigma(), n);
      auto brute = brute_force_sigma(n);
      const long long formula = (1LL << n) + 2 * (n % 2 ? -1 : 1);
      o.require(std::set<Word>(set.points.begin(), set.points.end()) == brute,
                "P_" + str(n) + " differs from brute force");
      o.require(static_cast<long long>(set.points.size()) == formula, "P_" + str(n) + " count");
    }
    o.require(periodic_points(make_sigma(), 1).points.empty(), "P_1(Sigma) nonempty");
    for (int m = 1; m <= 4; ++m) {
      o.require(periodic_points(make_sigma_m(m), m).points.empty(), "P_m(Sigma_m) nonempty, m=" + str(m));
      for (int p : {2, 3, 5, 7, 11})
        if (p > m)
          o.require(!periodic_points(make_sigma_m(m), p).points.empty(),
                    "P_" + str(p) + "(Sigma_" + str(m) + ") empty");
    }
    auto t = suite.emit("c3_table.json",
                        {"--csv", "c3_table.csv", "periodic", "--table", "--from", "1", "--to", "8"});
    o.require(t.at("rows").at(4).at("count") == 30, "CLI table row for n=5");
    for (int m = 1; m <= 4; ++m) {
      auto r = suite.emit("c3_sigma" + str(m) + ".json",
                          {"periodic", "--shift", "sigma_m", "--m", str(m), "--n", str(m)});
      o.require(r.at("count") == 0, "CLI P_m(Sigma_m)");
    }
  });

  criterion(4, "coind(P_3(Sigma) * P_3(Sigma)) >= 1 by an explicit map from E_1 Z_3", 60, suite,
            [&](Outcome& o) {
              auto set = periodic_points(make_sigma(), 3);
              auto j = join_periodic_sets(set, set, 3);
              auto cert = coindex_lower(j, 1);
              o.require(cert.kind == CertificateKind::map_witness && cert.value == 1, "witness");
              o.require(cert.map && check_equivariant_map(*cert.map).ok(), "map re-check");
              validate_certificate(cert);
              auto alone = coindex_lower(as_free_zp_complex(set), 0);
              auto via_rule = join_coindex_certificate(alone, alone);
              o.require(via_rule.value == 1, "join rule gives 0 + 0 + 1");
              validate_certificate(via_rule);
              std::vector<IndexCertificate> certs{cert, index_upper_from_dimension(j)};
              suite.sentinel(certs);
              auto r = suite.emit("c4_join.json", {"join-periodic", "--n", "3", "--copies", "2",
                                                   "--target", "1"});
              o.require(r.at("certificate").at("kind") == "map_witness", "CLI witness");
              o.require(certificate_from_json(r.at("certificate")).value == 1, "CLI value");
            });

  criterion(5, "ambient bound: certified ind upper bounds of P_p(X(1,delta)) stay <= p - 2", 300, suite,
            [&](Outcome& o) {
              struct Case {
                int p, G;
                Rational delta;
              };
              const std::vector<Case> cases{
                  {2, 4, Rational(1, 4)}, {2, 4, Rational(1, 2)}, {2, 4, Rational(3, 5)},
                  {2, 4, Rational(3, 4)}, {3, 6, Rational(3, 10)}, {3, 3, Rational(1, 3)},
                  {3, 4, Rational(1, 2)}, {5, 3, Rational(1, 3)}, {5, 4, Rational(1, 2)}};
              int built = 0;
              for (const auto& k : cases) {
                const std::string tag = "(p=" + str(k.p) + ", G=" + str(k.G) + ", delta=" + to_string(k.delta) + ")";
                auto cubical = build_Pp_Xm(1, k.delta, 1, k.p, GridSpec{1, k.G, false});
                if (cubical.empty()) continue;
                ++built;
                auto x = cubical_to_simplicial(cubical);
                const auto id = content_id(x);
                std::vector<IndexCertificate> certs{ambient_sphere_bound(1, k.p, id),
                                                    index_upper_from_dimension(x),
                                                    coindex_lower(x, 0)};
                if (k.p == 2) certs.push_back(index_upper(x, 0));
                suite.sentinel(certs);
                auto s = summarize(certs);
                o.require(s.ind_upper && *s.ind_upper <= k.p - 2, tag + " best ind upper bound");
                o.require(certs[0].value == k.p - 2, tag + " ambient value");
                o.require(s.coind_lower && *s.coind_lower >= 0, tag + " coind witness");
                if (k.p == 2) {
                  auto betti = cubical_homology(cubical, 2).betti;
                  o.require(!betti.empty() && betti[0] == 2 &&
                                std::all_of(betti.begin() + 1, betti.end(), [](auto b) { return b == 0; }),
                            tag + " two contractible components");
                  o.require(s.coind_lower == 0 && s.ind_upper == 0, tag + " coind = ind = 0");
                }
              }
              o.require(built == static_cast<int>(cases.size()), "every case nonempty");
              auto a = suite.emit("c5_coind_p3.json", {"coind", "--space", "Xm", "--N", "1", "--delta",
                                                       "3/10", "--m", "1", "--p", "3", "--grid", "6",
                                                       "--target", "0"});
              o.require(a.at("status") == "witness", "CLI coind p=3");
              o.require(a.at("ambient_bound").at("value") == 1, "CLI ambient bound p=3");
              auto b = suite.emit("c5_ind_p2.json", {"ind", "--space", "Xm", "--N", "1", "--delta",
                                                     "3/5", "--p", "2", "--grid", "4", "--target",
                                                     "0"});
              o.require(b.at("status") == "witness", "CLI ind p=2");
            });

  criterion(6, "relabeling isomorphism offset m <-> offset 1 on G=3 grids", 300, suite,
            [&](Outcome& o) {
              struct Case {
                int p, m, l;
              };
              for (const auto& k : std::vector<Case>{{5, 2, 3}, {3, 2, 2}}) {
                const std::string tag = "(p=" + str(k.p) + ", m=" + str(k.m) + ")";
                auto offset_m = build_Pp_Xm(1, Rational(1, 3), k.m, k.p, GridSpec{1, 3, false});
                auto r = relabel_isomorphism(offset_m, k.l);
                o.require(r.f_after_g_identity && r.g_after_f_identity, tag + " f, g inverse");
                o.require(r.intertwines, tag + " intertwining");
                o.require(r.matches_direct_build, tag + " offset-1 build");
                auto a = cubical_to_simplicial(offset_m);
                auto b = cubical_to_simplicial(r.offset_one);
                for (auto [n, depth] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}}) {
                  auto ca = coindex_lower(a, n, SearchOptions{depth, 200'000'000});
                  auto cb = coindex_lower(b, n, SearchOptions{depth, 200'000'000});
                  o.require(ca.kind == cb.kind && ca.value == cb.value,
                            tag + " coind at n=" + str(n) + ", depth " + str(depth) + " differs");
                  std::vector<IndexCertificate> ga{ca, ambient_sphere_bound(1, k.p, ca.space)};
                  std::vector<IndexCertificate> gb{cb, ambient_sphere_bound(1, k.p, cb.space)};
                  suite.sentinel(ga);
                  suite.sentinel(gb);
                }
                for (int target : {0, 1}) {
                  auto res = suite.emit("c6_relabel_" + str(k.p) + "_" + str(target) + ".json",
                                        {"relabel", "--m", str(k.m), "--l", str(k.l), "--p", str(k.p),
                                         "--grid", "3", "--delta", "1/3", "--target", str(target)});
                  o.require(res.at("coind_agree") == true, tag + " CLI agreement");
                }
              }
            });

  criterion(7, "marker function on Z/12 and the M = 1, 2 closed forms", 5, suite, [&](Outcome& o) {
    auto z12 = cyclic_system(12);
    std::vector<Rational> w(12, 0);
    w[0] = 1;
    auto r = lindenstrauss_phi(z12, w, 11, {0, 1}, 2);
    o.require(r.covering && r.support_in_U, "hypotheses on w");
    o.require(r.E_in_preimage_of_U, "E inside T^{-1}U");
    o.require(r.E_no_short_returns, "E meets T^{-n}E");
    o.require(r.additive_off_E && r.stop_mass_is_one, "self-checks");
    for (std::size_t x = 0; x < 12; ++x) o.require(r.phi[x] == static_cast<long long>(x), "phi(x) = x");

    // Micro-systems on which {w = 1} and its first translate cover.
    auto z4 = cyclic_system(4);
    for (const auto& wm : std::vector<std::vector<Rational>>{{1, Rational(1, 2), 1, 0},
                                                             {1, 0, 1, Rational(2, 3)},
                                                             {1, 1, Rational(1, 3), 1}}) {
      auto m1 = lindenstrauss_phi(z4, wm, 1, {0, 1, 2, 3}, 0);
      o.require(m1.covering, "M=1 micro-system covers");
      for (std::size_t x = 0; x < 4; ++x) o.require(m1.phi[x] == 1 - wm[x], "M=1 closed form");
    }
    auto z5 = cyclic_system(5);
    std::vector<Rational> w5{1, Rational(1, 2), Rational(1, 3), 1, Rational(1, 4)};
    auto m2 = lindenstrauss_phi_values(z5, w5, 2);
    for (std::size_t x = 0; x < 5; ++x) {
      const auto a = z5.T_inverse(x), b = z5.T_inverse(a);
      const Rational closed = (1 - w5[x]) * w5[a] + 2 * (1 - w5[x]) * (1 - w5[a]) * w5[b];
      o.require(m2[x] == closed, "M=2 closed form");
    }
    auto res = suite.emit("c7_phi.json", {"phi", "--cyclic", "12", "--w-indicator", "0", "--M", "11",
                                          "--U", "0,1", "--N", "2"});
    o.require(res.at("phi").at("E") == Json::array({11}), "CLI E");
    o.require(res.at("phi").at("checks").at("E_no_short_returns") == true, "CLI E returns");
  });

  criterion(8, "consistency sentinel: coind <= ind never violated", 0, suite,
            [&](Outcome& o) { o.require(suite.sentinel_ok(), "coindex_le_index_check fired"); });

  criterion(9, "determinism: artifacts byte-identical across two runs", 0, suite, [&](Outcome& o) {
    auto diffs = suite.replay_and_compare();
    for (const auto& d : diffs) o.require(false, d + " differs");
    o.require(suite.artifact_count() > 0, "no artifacts");
    o.require(suite.sentinel_ok(), "sentinel fired during the replay");
  });

  return failures == 0 ? 0 : 1;
}
