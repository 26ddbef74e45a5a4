#include "zpindex/errors.hpp"

namespace zpindex {

bool is_prime(long long n) noexcept {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_prime(long long p, const char* what) {
  if (!is_prime(p))
    throw ValidationError(std::string(what) + " must be prime, got " + std::to_string(p));
}

}  // namespace zpindex
