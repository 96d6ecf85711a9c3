#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace orbitk {

/// Smallest-prime-factor sieve over [0, limit].
///
/// Immutable after construction, so a single table can be shared read-only
/// by any number of worker threads.
class FactorTable {
 public:
  /// Builds the sieve. Throws DomainError for limit < 2 and ResourceError
  /// when the table cannot be allocated.
  explicit FactorTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }

  /// Smallest prime factor of n; requires 2 <= n <= limit().
  std::uint32_t spf(std::uint64_t n) const noexcept { return spf_[n]; }

  bool contains(std::uint64_t n) const noexcept { return n <= limit_; }

  /// All primes <= limit(), ascending.
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

FactorTable build_factor_table(std::uint64_t limit);

/// Deterministic for every 64-bit n (Miller-Rabin with a fixed base set).
bool is_prime(std::uint64_t n);

/// Table lookup when n <= table.limit(), otherwise falls back to is_prime(n).
bool is_prime(std::uint64_t n, const FactorTable& table);

/// Largest prime dividing n (n itself when n is prime). Throws DomainError for n < 2.
///
/// Values beyond the table are trial-divided by the table's primes; any
/// cofactor left once those run out is split with Pollard-Brent rho.
std::uint64_t largest_prime_factor(std::uint64_t n, const FactorTable& table);

/// Ascending primes <= limit. Throws DomainError when limit exceeds the table.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, const FactorTable& table);

/// Product of all primes <= n; 1 for n == 1. Throws OverflowError past 64 bits.
std::uint64_t primorial(std::uint64_t n);

/// Full prime factorization (with multiplicity, ascending) for any n >= 2.
std::vector<std::uint64_t> factorize(std::uint64_t n, const FactorTable& table);

}  // namespace orbitk
