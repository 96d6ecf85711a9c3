#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "orbitk/dynamics.hpp"
#include "orbitk/numtheory.hpp"

namespace orbitk {

/// How far up the primes enumerate_loops seeds its orbits.
enum class BoundMode {
  Safe,    ///< max(ceil(k^2/2), 2k)
  Paper,   ///< ceil(k^2/2)
  Remark,  ///< ceil(k*sqrt(k)/2)
};

std::string_view to_string(BoundMode mode) noexcept;

/// Parses "safe", "paper" or "remark"; throws DomainError otherwise.
BoundMode parse_bound_mode(std::string_view text);

std::uint64_t seed_bound(std::uint64_t k, BoundMode mode = BoundMode::Safe);

/// Sieve size the CLI and sweeps allocate for k up to k_max: twice the seed
/// bound so that the memo range is covered, with a small floor.
std::uint64_t recommended_table_limit(std::uint64_t k_max, BoundMode mode = BoundMode::Safe);

/// Every distinct loop of phi_k reachable from the seed primes.
struct LoopCatalog {
  std::uint64_t k = 0;
  /// Sorted by minimal element (distinct loops are disjoint, so minima differ).
  std::vector<Loop> loops;
  std::uint64_t seed_bound_used = 0;
  std::uint64_t seeds_processed = 0;
  BoundMode mode = BoundMode::Safe;
};

struct EnumerateOptions {
  /// Record resolved values so later seeds stop at the first known value.
  bool memoize = true;
  std::uint64_t max_steps = kDefaultMaxSteps;
};

/// Follows the orbit of each prime p <= seed_bound(k, mode).
/// Throws DomainError when the table is smaller than the seed bound.
LoopCatalog enumerate_loops(std::uint64_t k, const FactorTable& table, BoundMode mode = BoundMode::Safe,
                            const EnumerateOptions& options = {});

/// Reference catalog: analyze() on every x in [2, x_max].
LoopCatalog brute_force_loops(std::uint64_t k, std::uint64_t x_max, const FactorTable& table);

std::size_t loop_count(std::uint64_t k, const FactorTable& table, BoundMode mode = BoundMode::Safe);

}  // namespace orbitk
