#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zpindex {

/// Rejected input: bad parameters, malformed files, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or enumeration ran past its budget. Never a negative answer.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t spent)
      : std::runtime_error(what), spent_(spent) {}
  std::uint64_t spent() const noexcept { return spent_; }

 private:
  std::uint64_t spent_;
};

/// Internal contradiction, e.g. a certified coindex above a certified index.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool is_prime(long long n) noexcept;

/// Throws ValidationError unless p is prime.
void require_prime(long long p, const char* what = "p");

}  // namespace zpindex
