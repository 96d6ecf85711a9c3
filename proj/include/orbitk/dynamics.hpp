#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orbitk/numtheory.hpp"

namespace orbitk {

inline constexpr std::uint64_t kDefaultMaxSteps = 10'000'000;

/// A cycle of phi_k, stored in map order and rotated so the minimum is first.
struct Loop {
  std::uint64_t k = 0;
  std::vector<std::uint64_t> elements;

  std::size_t period() const noexcept { return elements.size(); }
  std::uint64_t min_element() const noexcept { return elements.empty() ? 0 : elements.front(); }

  friend bool operator==(const Loop&, const Loop&) = default;
  friend auto operator<=>(const Loop&, const Loop&) = default;
};

/// Full analysis of one orbit S(x0, k).
struct TrajectoryRecord {
  std::uint64_t x0 = 0;
  std::uint64_t k = 0;
  std::uint64_t preperiod = 0;
  std::uint64_t period = 0;
  /// Number of distinct values in the orbit (preperiod + period).
  std::uint64_t stopping_time = 0;
  Loop loop;
  /// The preperiod values that precede the first cycle element.
  std::vector<std::uint64_t> prefix;
};

/// x + k for prime x, largest prime factor for composite x.
/// Throws DomainError for x < 2 or k < 1 and OverflowError if x + k wraps.
std::uint64_t phi(std::uint64_t x, std::uint64_t k, const FactorTable& table);

/// Iterates phi_k from x0 until a value repeats.
/// Throws IterationBudgetError if no value repeats within max_steps iterations.
TrajectoryRecord analyze(std::uint64_t x0, std::uint64_t k, const FactorTable& table,
                         std::uint64_t max_steps = kDefaultMaxSteps);

/// Rotates a cycle so its minimum leads. Throws DomainError if the values are
/// empty, repeat, or do not close under phi_k.
Loop canonicalize_loop(std::span<const std::uint64_t> cycle_values, std::uint64_t k,
                       const FactorTable& table);

/// First n terms of S(x0, k).
std::vector<std::uint64_t> orbit_prefix(std::uint64_t x0, std::uint64_t k, const FactorTable& table,
                                        std::size_t n);

}  // namespace orbitk
