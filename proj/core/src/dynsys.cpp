#include "zpindex/dynsys.hpp"

#include <algorithm>
#include <string>

#include "zpindex/errors.hpp"

namespace zpindex {

FiniteDynSys::FiniteDynSys(std::vector<std::vector<Rational>> metric,
                           std::vector<std::uint32_t> map)
    : metric_(std::move(metric)), map_(std::move(map)) {
  const std::size_t n = map_.size();
  if (n == 0) throw ValidationError("a dynamical system needs at least one point");
  if (metric_.size() != n) throw ValidationError("metric has the wrong number of rows");
  for (const auto& row : metric_)
    if (row.size() != n) throw ValidationError("metric is not square");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y && metric_[x][y] != 0) throw ValidationError("metric diagonal must be zero");
      if (x != y && metric_[x][y] <= 0)
        throw ValidationError("distinct points must have positive distance");
      if (metric_[x][y] != metric_[y][x]) throw ValidationError("metric is not symmetric");
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (metric_[x][z] > metric_[x][y] + metric_[y][z])
          throw ValidationError("triangle inequality fails at (" + std::to_string(x) + ", " +
                                std::to_string(y) + ", " + std::to_string(z) + ")");

  inverse_.assign(n, static_cast<std::uint32_t>(n));
  for (std::size_t x = 0; x < n; ++x) {
    if (map_[x] >= n) throw ValidationError("T maps outside the point set");
    if (inverse_[map_[x]] != n) throw ValidationError("T is not a bijection");
    inverse_[map_[x]] = static_cast<std::uint32_t>(x);
  }
}

std::uint32_t FiniteDynSys::T_power(std::size_t x, long long k) const {
  auto point = static_cast<std::uint32_t>(x);
  const long long steps = k % static_cast<long long>(period(x));
  for (long long i = 0; i < steps; ++i) point = map_[point];
  for (long long i = 0; i > steps; --i) point = inverse_[point];
  return point;
}

std::size_t FiniteDynSys::period(std::size_t x) const {
  std::size_t n = 1;
  for (auto y = map_[x]; y != x; y = map_[y]) ++n;
  return n;
}

Rational FiniteDynSys::diameter() const {
  Rational best = 0;
  for (const auto& row : metric_)
    for (const auto& v : row)
      if (v > best) best = v;
  return best;
}

bool FiniteDynSys::has_fixed_point() const {
  for (std::size_t x = 0; x < map_.size(); ++x)
    if (map_[x] == x) return true;
  return false;
}

FiniteDynSys FiniteDynSys::rescaled_to_unit_diameter() const {
  const Rational diam = diameter();
  if (diam <= 1) return *this;
  auto metric = metric_;
  for (auto& row : metric)
    for (auto& v : row) v /= diam;
  return FiniteDynSys(std::move(metric), map_);
}

FiniteDynSys cyclic_system(std::size_t n) {
  if (n == 0) throw ValidationError("cyclic system needs n >= 1");
  const long long half = std::max<long long>(1, static_cast<long long>(n / 2));
  std::vector<std::vector<Rational>> metric(n, std::vector<Rational>(n));
  std::vector<std::uint32_t> map(n);
  for (std::size_t i = 0; i < n; ++i) {
    map[i] = static_cast<std::uint32_t>((i + 1) % n);
    for (std::size_t j = 0; j < n; ++j) {
      const long long gap = i > j ? static_cast<long long>(i - j) : static_cast<long long>(j - i);
      metric[i][j] = Rational(std::min<long long>(gap, static_cast<long long>(n) - gap), half);
    }
  }
  return FiniteDynSys(std::move(metric), std::move(map));
}

FiniteDynSys dynsys_from_json(const Json& j) {
  try {
    const auto n = j.at("points").get<std::size_t>();
    std::vector<std::vector<Rational>> metric;
    for (const auto& row : j.at("metric")) {
      std::vector<Rational> values;
      for (const auto& v : row)
        values.push_back(v.is_string() ? parse_rational(v.get<std::string>())
                                       : Rational(v.get<long long>()));
      metric.push_back(std::move(values));
    }
    auto map = j.at("T").get<std::vector<std::uint32_t>>();
    if (map.size() != n) throw ValidationError("T has the wrong length");
    return FiniteDynSys(std::move(metric), std::move(map));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed system JSON: ") + e.what());
  }
}

Json to_json(const FiniteDynSys& sys) {
  Json metric = Json::array();
  for (const auto& row : sys.metric()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    metric.push_back(std::move(r));
  }
  return Json{{"points", sys.size()}, {"metric", std::move(metric)}, {"T", sys.map()}};
}

}  // namespace zpindex
