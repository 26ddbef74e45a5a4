#pragma once

#include <cstdint>
#include <vector>

#include "zpindex/json.hpp"
#include "zpindex/rational.hpp"

namespace zpindex {

/// Finite metric space with a bijection T. Points are 0..size()-1.
class FiniteDynSys {
 public:
  /// Validates the metric (zero diagonal, positive off-diagonal, symmetric,
  /// triangle inequality) and that T is a bijection.
  FiniteDynSys(std::vector<std::vector<Rational>> metric, std::vector<std::uint32_t> map);

  std::size_t size() const noexcept { return map_.size(); }
  const Rational& d(std::size_t x, std::size_t y) const { return metric_[x][y]; }
  std::uint32_t T(std::size_t x) const { return map_[x]; }
  std::uint32_t T_inverse(std::size_t x) const { return inverse_[x]; }
  /// T^k for any integer k.
  std::uint32_t T_power(std::size_t x, long long k) const;
  /// Least n >= 1 with T^n x = x.
  std::size_t period(std::size_t x) const;

  const std::vector<std::vector<Rational>>& metric() const noexcept { return metric_; }
  const std::vector<std::uint32_t>& map() const noexcept { return map_; }
  Rational diameter() const;
  bool has_fixed_point() const;

  /// Metric divided by the diameter when the diameter exceeds 1.
  FiniteDynSys rescaled_to_unit_diameter() const;

  friend bool operator==(const FiniteDynSys&, const FiniteDynSys&) = default;

 private:
  std::vector<std::vector<Rational>> metric_;
  std::vector<std::uint32_t> map_;
  std::vector<std::uint32_t> inverse_;
};

/// Z/nZ with x -> x + 1 and the arc metric min(|i-j|, n-|i-j|) / floor(n/2).
FiniteDynSys cyclic_system(std::size_t n);

/// {"points": n, "metric": [["a/b", ...], ...], "T": [...]}.
FiniteDynSys dynsys_from_json(const Json& j);
Json to_json(const FiniteDynSys& sys);

}  // namespace zpindex
