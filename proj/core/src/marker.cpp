#include "zpindex/marker.hpp"

#include <algorithm>
#include <string>

#include "zpindex/errors.hpp"

namespace zpindex {

namespace {

std::vector<char> membership(const FiniteDynSys& sys, const PointSet& U) {
  std::vector<char> in(sys.size(), 0);
  for (auto u : U) {
    if (u >= sys.size()) throw ValidationError("point " + std::to_string(u) + " is not in the system");
    in[u] = 1;
  }
  return in;
}

bool no_short_returns(const FiniteDynSys& sys, const std::vector<char>& in, int N) {
  for (std::size_t x = 0; x < sys.size(); ++x) {
    if (!in[x]) continue;
    auto y = static_cast<std::uint32_t>(x);
    for (int n = 1; n <= N; ++n) {
      y = sys.T(y);
      if (in[y]) return false;
    }
  }
  return true;
}

Json rational_list(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

}  // namespace

MarkerWitness check_marker(const FiniteDynSys& sys, int N, const PointSet& U) {
  if (N < 0) throw ValidationError("N must be non-negative");
  const auto in = membership(sys, U);
  MarkerWitness w;
  w.N = N;
  w.U = U;
  std::sort(w.U.begin(), w.U.end());
  w.U.erase(std::unique(w.U.begin(), w.U.end()), w.U.end());
  w.return_times_ok = no_short_returns(sys, in, N);
  w.covering_ok = true;
  for (std::size_t x = 0; x < sys.size(); ++x) {
    bool meets = false;
    auto y = static_cast<std::uint32_t>(x);
    do {
      meets = meets || in[y];
      y = sys.T(y);
    } while (y != x && !meets);
    if (!meets) {
      w.covering_ok = false;
      break;
    }
  }
  return w;
}

Rational squared_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += (a[i] - b[i]) * (a[i] - b[i]);
  return total;
}

EpsilonEmbedding epsilon_embedding(const FiniteDynSys& sys, const Rational& eps) {
  if (eps <= 0) throw ValidationError("eps must be positive");
  if (sys.diameter() > 1)
    throw ValidationError("diameter exceeds 1; rescale the metric first");
  const std::size_t n = sys.size();
  EpsilonEmbedding e;
  e.eps = eps;
  e.centers.push_back(0);
  if (sys.diameter() >= eps) {
    const Rational radius = eps / 2;
    std::vector<Rational> nearest(n);
    for (std::size_t x = 0; x < n; ++x) nearest[x] = sys.d(x, 0);
    while (true) {
      std::size_t far = 0;
      for (std::size_t x = 1; x < n; ++x)
        if (nearest[x] > nearest[far]) far = x;
      if (nearest[far] < radius) break;
      e.centers.push_back(static_cast<std::uint32_t>(far));
      for (std::size_t x = 0; x < n; ++x) nearest[x] = std::min(nearest[x], sys.d(x, far));
    }
  }

  e.images.assign(n, {});
  for (std::size_t x = 0; x < n; ++x)
    for (auto c : e.centers) e.images[x].push_back(sys.d(x, c));

  // Least image gap among eps-separated pairs; N + 1 exceeds every squared
  // distance in [0,1]^N when there is no such pair.
  e.delta_sq = Rational(static_cast<long long>(e.centers.size()) + 1);
  e.injective = true;
  e.fibers_ok = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const Rational gap = squared_distance(e.images[x], e.images[y]);
      if (gap == 0) {
        e.injective = false;
        if (sys.d(x, y) >= eps) e.fibers_ok = false;
      }
      if (sys.d(x, y) >= eps && gap < e.delta_sq) e.delta_sq = gap;
    }
  e.modulus_ok = e.delta_sq > 0;
  for (std::size_t x = 0; x < n && e.modulus_ok; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (squared_distance(e.images[x], e.images[y]) < e.delta_sq && sys.d(x, y) >= eps) {
        e.modulus_ok = false;
        break;
      }
  return e;
}

UniversalityMap universality_map(const FiniteDynSys& original) {
  if (original.has_fixed_point())
    throw ValidationError("the system has a fixed point, so no displacement bound exists");
  const FiniteDynSys sys = original.rescaled_to_unit_diameter();
  const std::size_t n = sys.size();
  UniversalityMap u;
  u.eps = sys.d(0, sys.T(0));
  for (std::size_t x = 1; x < n; ++x) u.eps = std::min(u.eps, sys.d(x, sys.T(x)));
  u.eps /= 2;
  u.embedding = epsilon_embedding(sys, u.eps);
  const auto& f = u.embedding.images;

  u.delta_sq = squared_distance(f[0], f[sys.T(0)]);
  for (std::size_t x = 1; x < n; ++x)
    u.delta_sq = std::min(u.delta_sq, squared_distance(f[x], f[sys.T(x)]));

  u.trajectories.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto y = static_cast<std::uint32_t>(x);
    do {
      u.trajectories[x].push_back(f[y]);
      y = sys.T(y);
    } while (y != x);
  }

  u.in_X = u.delta_sq > 0;
  u.equivariant = true;
  for (std::size_t x = 0; x < n; ++x) {
    const auto& word = u.trajectories[x];
    const auto& next = u.trajectories[sys.T(x)];
    if (next.size() != word.size()) u.equivariant = false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (squared_distance(word[i], word[(i + 1) % word.size()]) < u.delta_sq) u.in_X = false;
      if (u.equivariant && next[i] != word[(i + 1) % word.size()]) u.equivariant = false;
    }
  }
  return u;
}

std::vector<Rational> lindenstrauss_phi_values(const FiniteDynSys& sys,
                                               const std::vector<Rational>& w, int M) {
  if (M < 1) throw ValidationError("M must be at least 1");
  if (w.size() != sys.size()) throw ValidationError("w needs one value per point");
  for (const auto& v : w)
    if (v < 0 || v > 1) throw ValidationError("w must take values in [0, 1]");
  std::vector<Rational> phi(sys.size());
  for (std::size_t x = 0; x < sys.size(); ++x) {
    Rational survive = 1;  // prod_{k<n} (1 - w(T^{-k} x))
    auto y = static_cast<std::uint32_t>(x);
    for (int step = 1; step <= M; ++step) {
      survive *= 1 - w[y];
      y = sys.T_inverse(y);
      phi[x] += step * survive * w[y];
    }
  }
  return phi;
}

PhiResult lindenstrauss_phi(const FiniteDynSys& sys, const std::vector<Rational>& w, int M,
                            const PointSet& U, int N) {
  PhiResult r;
  r.M = M;
  r.phi = lindenstrauss_phi_values(sys, w, M);
  const std::size_t n = sys.size();
  const auto in_U = membership(sys, U);

  std::vector<char> in_E(n, 0);
  r.additive_off_E = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (r.phi[sys.T(x)] != r.phi[x] + 1) {
      in_E[x] = 1;
      r.E.push_back(static_cast<std::uint32_t>(x));
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    if (!in_E[x] && r.phi[sys.T(x)] - r.phi[x] != 1) r.additive_off_E = false;

  r.stop_mass.assign(n, 0);
  r.stop_mass_is_one = true;
  r.covering = true;
  r.support_in_U = true;
  for (std::size_t x = 0; x < n; ++x) {
    Rational survive = 1;
    auto y = static_cast<std::uint32_t>(x);
    bool reaches_K = false;
    for (int step = 0; step <= M; ++step) {
      r.stop_mass[x] += survive * w[y];
      reaches_K = reaches_K || w[y] == 1;
      survive *= 1 - w[y];
      y = sys.T_inverse(y);
    }
    if (r.stop_mass[x] != 1) r.stop_mass_is_one = false;
    if (!reaches_K) r.covering = false;
    if (w[x] != 0 && !in_U[x]) r.support_in_U = false;
  }
  r.marker = no_short_returns(sys, in_U, N);

  r.E_in_preimage_of_U = true;
  for (auto x : r.E)
    if (!in_U[sys.T(x)]) r.E_in_preimage_of_U = false;
  r.E_no_short_returns = no_short_returns(sys, in_E, N);
  return r;
}

Json to_json(const MarkerWitness& w) {
  return Json{{"N", w.N},
              {"U", w.U},
              {"return_times_ok", w.return_times_ok},
              {"covering_ok", w.covering_ok}};
}

Json to_json(const EpsilonEmbedding& e) {
  Json images = Json::array();
  for (const auto& img : e.images) images.push_back(rational_list(img));
  return Json{{"eps", to_string(e.eps)},
              {"N", e.centers.size()},
              {"centers", e.centers},
              {"images", std::move(images)},
              {"delta_sq", to_string(e.delta_sq)},
              {"injective", e.injective},
              {"fibers_ok", e.fibers_ok},
              {"modulus_ok", e.modulus_ok}};
}

Json to_json(const UniversalityMap& u) {
  Json trajectories = Json::array();
  for (const auto& word : u.trajectories) {
    Json t = Json::array();
    for (const auto& img : word) t.push_back(rational_list(img));
    trajectories.push_back(std::move(t));
  }
  return Json{{"eps", to_string(u.eps)},
              {"N", u.N()},
              {"delta_sq", to_string(u.delta_sq)},
              {"embedding", to_json(u.embedding)},
              {"trajectories", std::move(trajectories)},
              {"in_X", u.in_X},
              {"equivariant", u.equivariant}};
}

Json to_json(const PhiResult& r) {
  return Json{{"M", r.M},
              {"phi", rational_list(r.phi)},
              {"E", r.E},
              {"stop_mass", rational_list(r.stop_mass)},
              {"hypotheses",
               {{"covering", r.covering}, {"support_in_U", r.support_in_U}, {"marker", r.marker}}},
              {"checks",
               {{"E_in_preimage_of_U", r.E_in_preimage_of_U},
                {"E_no_short_returns", r.E_no_short_returns},
                {"additive_off_E", r.additive_off_E},
                {"stop_mass_is_one", r.stop_mass_is_one}}}};
}

}  // namespace zpindex
