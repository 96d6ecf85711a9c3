#include "orbitk/numtheory.hpp"

#include <algorithm>
#include <limits>
#include <new>
#include <numeric>
#include <string>

#include "orbitk/errors.hpp"

namespace orbitk {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Base set proven sufficient for all n < 2^64 (Jim Sinclair).
bool miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Returns a nontrivial factor of an odd composite n.
std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t done = 0;
      do {
        ys = y;
        const std::uint64_t batch = std::min(kBatch, r - done);
        for (std::uint64_t i = 0; i < batch; ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        done += batch;
      } while (done < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, const FactorTable& table, std::vector<std::uint64_t>& out) {
  if (n < 2) return;
  if (table.contains(n)) {
    while (n > 1) {
      const std::uint64_t p = table.spf(n);
      out.push_back(p);
      n /= p;
    }
    return;
  }
  for (std::uint64_t p : table.primes()) {
    if (p * p > n) break;
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
    if (table.contains(n)) {
      factor_into(n, table, out);
      return;
    }
  }
  if (n == 1) return;
  const std::uint64_t last = table.primes().empty() ? 1 : table.primes().back();
  if (last * last >= n || miller_rabin(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  factor_into(d, table, out);
  factor_into(n / d, table, out);
}

}  // namespace

FactorTable::FactorTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) throw DomainError("factor table limit must be >= 2");
  if (limit >= std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceError("factor table limit " + std::to_string(limit) + " exceeds 32-bit sieve capacity",
                        limit);
  }
  try {
    spf_.assign(limit + 1, 0);
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate factor table of " + std::to_string(limit + 1) + " entries", limit);
  }
  // Linear sieve: every composite is struck exactly once by its smallest prime.
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t si = spf_[i];
    for (std::uint32_t p : primes_) {
      if (p > si || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

FactorTable build_factor_table(std::uint64_t limit) { return FactorTable(limit); }

bool is_prime(std::uint64_t n) { return miller_rabin(n); }

bool is_prime(std::uint64_t n, const FactorTable& table) {
  if (n < 2) return false;
  if (table.contains(n)) return table.spf(n) == n;
  return miller_rabin(n);
}

std::uint64_t largest_prime_factor(std::uint64_t n, const FactorTable& table) {
  if (n < 2) throw DomainError("largest_prime_factor requires n >= 2, got " + std::to_string(n));
  if (table.contains(n)) {
    std::uint64_t largest = 0;
    while (n > 1) {
      largest = table.spf(n);
      n /= largest;
    }
    return largest;
  }
  std::vector<std::uint64_t> factors;
  factor_into(n, table, factors);
  return *std::max_element(factors.begin(), factors.end());
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, const FactorTable& table) {
  if (limit > table.limit()) {
    throw DomainError("primes_up_to(" + std::to_string(limit) + ") exceeds factor table limit " +
                      std::to_string(table.limit()));
  }
  const auto primes = table.primes();
  const auto end = std::upper_bound(primes.begin(), primes.end(), limit);
  return {primes.begin(), end};
}

std::uint64_t primorial(std::uint64_t n) {
  if (n < 1) throw DomainError("primorial requires n >= 1");
  std::uint64_t product = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (!miller_rabin(p)) continue;
    if (__builtin_mul_overflow(product, p, &product)) {
      throw OverflowError("primorial(" + std::to_string(n) + ") overflows 64 bits");
    }
  }
  return product;
}

std::vector<std::uint64_t> factorize(std::uint64_t n, const FactorTable& table) {
  if (n < 2) throw DomainError("factorize requires n >= 2");
  std::vector<std::uint64_t> factors;
  factor_into(n, table, factors);
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace orbitk
