#include <doctest.h>

#include <numeric>
#include <random>

#include "zpindex/dynsys.hpp"
#include "zpindex/errors.hpp"
#include "zpindex/marker.hpp"

using namespace zpindex;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Points on a line: d(i, j) = |x_i - x_j|.
Matrix line_metric(const std::vector<Rational>& xs) {
  Matrix m(xs.size(), std::vector<Rational>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) m[i][j] = abs(xs[i] - xs[j]);
  return m;
}

FiniteDynSys two_point_swap() { return FiniteDynSys(line_metric({0, 1}), {1, 0}); }

// Disjoint cycles of the given lengths, points numbered cycle by cycle,
// each cycle placed on its own stretch of the line.
FiniteDynSys cycles(const std::vector<std::size_t>& lengths, std::vector<std::vector<std::uint32_t>>* out = nullptr) {
  std::vector<Rational> xs;
  std::vector<std::uint32_t> map;
  std::uint32_t base = 0;
  for (std::size_t L : lengths) {
    std::vector<std::uint32_t> cyc;
    for (std::size_t i = 0; i < L; ++i) {
      xs.emplace_back(static_cast<long long>(xs.size()), 7);
      map.push_back(base + static_cast<std::uint32_t>((i + 1) % L));
      cyc.push_back(base + static_cast<std::uint32_t>(i));
    }
    if (out) out->push_back(cyc);
    base += static_cast<std::uint32_t>(L);
  }
  return FiniteDynSys(line_metric(xs), map);
}

// phi for M = 2 written out by hand.
Rational phi_m2(const FiniteDynSys& s, const std::vector<Rational>& w, std::size_t x) {
  const auto a = s.T_inverse(x), b = s.T_inverse(a);
  return (1 - w[x]) * w[a] + 2 * (1 - w[x]) * (1 - w[a]) * w[b];
}

}  // namespace

TEST_CASE("finite systems are validated") {
  CHECK_THROWS_AS(FiniteDynSys(line_metric({0, 1}), {0, 0}), ValidationError);
  CHECK_THROWS_AS(FiniteDynSys(line_metric({0, 0}), {1, 0}), ValidationError);
  Matrix asym = line_metric({0, 1});
  asym[0][1] = Rational(1, 2);
  CHECK_THROWS_AS(FiniteDynSys(asym, {1, 0}), ValidationError);
  Matrix tri = line_metric({0, 1, 2});
  tri[0][2] = tri[2][0] = 3;
  CHECK_THROWS_AS(FiniteDynSys(tri, {1, 2, 0}), ValidationError);
  CHECK_NOTHROW(FiniteDynSys(line_metric({0, 1, 2}), {1, 2, 0}));
}

TEST_CASE("cyclic systems") {
  auto s = cyclic_system(6);
  CHECK(s.size() == 6);
  CHECK(s.diameter() == 1);
  CHECK(s.d(0, 2) == Rational(2, 3));
  CHECK(s.T(5) == 0);
  CHECK(s.T_inverse(0) == 5);
  CHECK(s.T_power(1, -3) == 4);
  CHECK(s.period(3) == 6);
  CHECK_FALSE(s.has_fixed_point());
}

TEST_CASE("system JSON round trip") {
  auto s = cyclic_system(5);
  Json j = to_json(s);
  CHECK(j.at("points") == 5);
  CHECK(dynsys_from_json(j) == s);
  j["T"][0] = 0;
  CHECK_THROWS_AS(dynsys_from_json(j), ValidationError);
}

TEST_CASE("marker checks on Z/10") {
  auto s = cyclic_system(10);
  auto ok = check_marker(s, 3, {0});
  CHECK(ok.return_times_ok);
  CHECK(ok.covering_ok);
  auto periodic = check_marker(s, 10, {0});
  CHECK_FALSE(periodic.return_times_ok);
  CHECK(periodic.covering_ok);
  auto none = check_marker(s, 3, {});
  CHECK(none.return_times_ok);
  CHECK_FALSE(none.covering_ok);
  CHECK_THROWS_AS(check_marker(s, 3, {10}), ValidationError);
}

TEST_CASE("property: a short periodic orbit meeting U blocks the marker condition") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 10;
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Rational> xs;
    for (std::size_t i = 0; i < n; ++i) xs.emplace_back(static_cast<long long>(i), static_cast<long long>(n));
    FiniteDynSys s(line_metric(xs), perm);
    const auto x = rng() % n;
    const int N = static_cast<int>(s.period(x)) + static_cast<int>(rng() % 3);
    PointSet U{static_cast<std::uint32_t>(s.T_power(x, static_cast<long long>(rng() % 5)))};
    if (rng() % 2) U.push_back(static_cast<std::uint32_t>(rng() % n));
    CHECK_FALSE(check_marker(s, N, U).return_times_ok);
  }
}

TEST_CASE("epsilon embeddings") {
  auto two = epsilon_embedding(two_point_swap(), Rational(1, 2));
  CHECK(two.centers.size() == 2);
  CHECK(two.injective);
  CHECK(two.modulus_ok);

  auto s = cyclic_system(6);
  auto one = epsilon_embedding(s, Rational(3, 2));
  CHECK(one.centers.size() == 1);
  CHECK(one.fibers_ok);
  CHECK(one.modulus_ok);

  auto five = epsilon_embedding(cyclic_system(5), Rational(2, 5));
  CHECK(five.fibers_ok);
  CHECK(five.modulus_ok);
  CHECK(five.delta_sq > 0);
  // Direct check of the modulus over all pairs.
  for (std::size_t x = 0; x < 5; ++x)
    for (std::size_t y = 0; y < 5; ++y)
      if (squared_distance(five.images[x], five.images[y]) < five.delta_sq)
        CHECK(cyclic_system(5).d(x, y) < Rational(2, 5));

  CHECK_THROWS_AS(epsilon_embedding(s, Rational(0)), ValidationError);
  FiniteDynSys wide(line_metric({0, 3}), {1, 0});
  CHECK_THROWS_AS(epsilon_embedding(wide, Rational(1, 2)), ValidationError);
}

TEST_CASE("property: every point lies within eps/2 of a center") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<Rational> xs;
    for (std::size_t i = 0; i < n; ++i) xs.emplace_back(static_cast<long long>(i), static_cast<long long>(n - 1));
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    FiniteDynSys s(line_metric(xs), perm);
    Rational eps(static_cast<long long>(1 + rng() % 10), 10);
    auto e = epsilon_embedding(s, eps);
    for (std::size_t x = 0; x < n; ++x) {
      Rational best = s.diameter();
      for (auto c : e.centers) best = std::min(best, s.d(x, c));
      if (s.diameter() >= eps) CHECK(best < eps / 2);
    }
    CHECK(e.fibers_ok);
    CHECK(e.modulus_ok);
  }
}

TEST_CASE("universality maps") {
  auto u6 = universality_map(cyclic_system(6));
  CHECK(u6.in_X);
  CHECK(u6.equivariant);
  CHECK(u6.trajectories.size() == 6);
  CHECK(u6.delta_sq > 0);
  for (const auto& word : u6.trajectories) {
    CHECK(word.size() == 6);
    for (std::size_t i = 0; i < word.size(); ++i)
      CHECK(squared_distance(word[i], word[(i + 1) % word.size()]) >= u6.delta_sq);
  }

  auto u2 = universality_map(two_point_swap());
  CHECK(u2.in_X);
  CHECK(u2.equivariant);
  CHECK(u2.N() <= 2);
  CHECK(u2.delta_sq == squared_distance(u2.embedding.images[0], u2.embedding.images[1]));

  FiniteDynSys fixed(line_metric({0, 1, 2}), {0, 2, 1});
  CHECK_THROWS_AS(universality_map(fixed), ValidationError);
}

TEST_CASE("property: universality images lie in X(N, delta) and commute with the shift") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::size_t> lengths;
    const std::size_t parts = 1 + rng() % 3;
    for (std::size_t i = 0; i < parts; ++i) lengths.push_back(2 + rng() % 4);
    auto s = cycles(lengths);
    auto u = universality_map(s);
    CHECK(u.in_X);
    CHECK(u.equivariant);
    for (std::size_t x = 0; x < s.size(); ++x) {
      CHECK(u.trajectories[x].size() == s.period(x));
      for (const auto& v : u.trajectories[x])
        for (const auto& c : v) CHECK((c >= 0 && c <= 1));
    }
  }
}

TEST_CASE("phi for M = 1 reduces to 1 - w under the covering hypothesis") {
  auto s = cyclic_system(4);
  std::vector<Rational> w{1, Rational(1, 2), 1, 0};
  auto r = lindenstrauss_phi(s, w, 1, {0, 1, 2}, 1);
  REQUIRE(r.covering);
  for (std::size_t x = 0; x < 4; ++x) CHECK(r.phi[x] == 1 - w[x]);

  // Without covering the general expression and 1 - w differ.
  std::vector<Rational> thin{1, 0, 0, 0};
  auto r2 = lindenstrauss_phi(s, thin, 1, {0}, 1);
  CHECK_FALSE(r2.covering);
  CHECK(r2.phi[2] == 0);
}

TEST_CASE("phi for M = 2 matches the two-step expression") {
  std::mt19937 rng(8);
  auto s = cyclic_system(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> w;
    for (int i = 0; i < 7; ++i) w.emplace_back(static_cast<long long>(rng() % 5), 4);
    auto phi = lindenstrauss_phi_values(s, w, 2);
    for (std::size_t x = 0; x < 7; ++x) CHECK(phi[x] == phi_m2(s, w, x));
  }
}

TEST_CASE("phi on Z/12 with w the indicator of 0") {
  auto s = cyclic_system(12);
  std::vector<Rational> w(12, 0);
  w[0] = 1;
  auto r = lindenstrauss_phi(s, w, 11, {0, 1}, 2);
  for (std::size_t x = 0; x < 12; ++x) CHECK(r.phi[x] == static_cast<long long>(x));
  CHECK(r.E == PointSet{11});
  CHECK(r.E_in_preimage_of_U);
  CHECK(r.E_no_short_returns);
  CHECK(r.additive_off_E);
  CHECK(r.stop_mass_is_one);
  CHECK(r.covering);
  CHECK(r.support_in_U);
  CHECK_FALSE(r.marker);
}

TEST_CASE("phi input validation") {
  auto s = cyclic_system(3);
  CHECK_THROWS_AS(lindenstrauss_phi(s, {0, 2, 0}, 1, {}, 1), ValidationError);
  CHECK_THROWS_AS(lindenstrauss_phi(s, {0, -1, 0}, 1, {}, 1), ValidationError);
  CHECK_THROWS_AS(lindenstrauss_phi(s, {1, 0, 0}, 0, {}, 1), ValidationError);
  CHECK_THROWS_AS(lindenstrauss_phi(s, {1, 0}, 1, {}, 1), ValidationError);
}

TEST_CASE("property: under the hypotheses E sits in T^{-1}U and has no short returns") {
  std::mt19937 rng(4242);
  const int N = 2;
  int runs = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::size_t> lengths;
    const std::size_t parts = 1 + rng() % 3;
    for (std::size_t i = 0; i < parts; ++i) lengths.push_back(6 + rng() % 7);
    std::vector<std::vector<std::uint32_t>> orbit;
    auto s = cycles(lengths, &orbit);

    // U: positions spaced at least N + 1 apart around each cycle.
    // K: a nonempty part of U where w = 1; w is random elsewhere on U.
    std::vector<Rational> w(s.size(), 0);
    PointSet U;
    int M = 0;
    for (const auto& cyc : orbit) {
      std::vector<std::size_t> marks;
      for (std::size_t i = 0; i + N + 1 <= cyc.size(); i += N + 1 + rng() % 2) marks.push_back(i);
      std::vector<std::size_t> k_marks;
      for (std::size_t j = 0; j < marks.size(); ++j) {
        U.push_back(cyc[marks[j]]);
        if (j == 0 || rng() % 2) {
          w[cyc[marks[j]]] = 1;
          k_marks.push_back(marks[j]);
        } else {
          w[cyc[marks[j]]] = Rational(static_cast<long long>(rng() % 4), 4);
        }
      }
      for (std::size_t j = 0; j < k_marks.size(); ++j) {
        const std::size_t next = j + 1 < k_marks.size() ? k_marks[j + 1] : k_marks[0] + cyc.size();
        M = std::max(M, static_cast<int>(next - k_marks[j]) - 1);
      }
    }
    M = std::max(M, N);
    auto r = lindenstrauss_phi(s, w, M, U, N);
    REQUIRE(r.covering);
    REQUIRE(r.support_in_U);
    REQUIRE(r.marker);
    ++runs;
    CHECK(r.stop_mass_is_one);
    CHECK(r.additive_off_E);
    CHECK(r.E_in_preimage_of_U);
    CHECK(r.E_no_short_returns);
  }
  CHECK(runs == 60);
}

TEST_CASE("property: off E, phi(Tx) = phi(x) + 1 for arbitrary weights") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = cyclic_system(3 + rng() % 8);
    std::vector<Rational> w;
    for (std::size_t i = 0; i < s.size(); ++i) w.emplace_back(static_cast<long long>(rng() % 3), 2);
    auto r = lindenstrauss_phi(s, w, 1 + static_cast<int>(rng() % 6), {}, 1);
    CHECK(r.additive_off_E);
    for (std::size_t x = 0; x < s.size(); ++x) {
      const bool in_E = std::find(r.E.begin(), r.E.end(), x) != r.E.end();
      CHECK(in_E == (r.phi[s.T(x)] != r.phi[x] + 1));
    }
  }
}
