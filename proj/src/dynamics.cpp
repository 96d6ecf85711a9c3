#include "orbitk/dynamics.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "orbitk/errors.hpp"

namespace orbitk {

std::uint64_t phi(std::uint64_t x, std::uint64_t k, const FactorTable& table) {
  if (x < 2) throw DomainError("phi is undefined for x = " + std::to_string(x));
  if (k < 1) throw DomainError("phi requires k >= 1");
  if (is_prime(x, table)) {
    std::uint64_t next = 0;
    if (__builtin_add_overflow(x, k, &next)) {
      throw OverflowError("phi: " + std::to_string(x) + " + " + std::to_string(k) + " overflows 64 bits");
    }
    return next;
  }
  return largest_prime_factor(x, table);
}

TrajectoryRecord analyze(std::uint64_t x0, std::uint64_t k, const FactorTable& table,
                         std::uint64_t max_steps) {
  if (x0 < 2) throw DomainError("analyze requires x0 >= 2, got " + std::to_string(x0));
  if (k < 1) throw DomainError("analyze requires k >= 1");

  std::vector<std::uint64_t> values;
  std::unordered_map<std::uint64_t, std::uint64_t> first_index;
  std::uint64_t x = x0;
  for (std::uint64_t step = 0;; ++step) {
    const auto [it, inserted] = first_index.emplace(x, values.size());
    if (!inserted) {
      const std::uint64_t start = it->second;
      TrajectoryRecord rec;
      rec.x0 = x0;
      rec.k = k;
      rec.preperiod = start;
      rec.period = values.size() - start;
      rec.stopping_time = values.size();
      rec.prefix.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(start));
      rec.loop = canonicalize_loop(std::span(values).subspan(start), k, table);
      return rec;
    }
    if (step >= max_steps) {
      throw IterationBudgetError("analyze(" + std::to_string(x0) + ", " + std::to_string(k) +
                                 ") exceeded " + std::to_string(max_steps) + " steps");
    }
    values.push_back(x);
    x = phi(x, k, table);
  }
}

Loop canonicalize_loop(std::span<const std::uint64_t> cycle_values, std::uint64_t k,
                       const FactorTable& table) {
  if (cycle_values.empty()) throw DomainError("canonicalize_loop: empty cycle");
  const std::size_t n = cycle_values.size();
  std::unordered_set<std::uint64_t> seen(cycle_values.begin(), cycle_values.end());
  if (seen.size() != n) throw DomainError("canonicalize_loop: cycle values are not distinct");
  for (std::size_t i = 0; i < n; ++i) {
    if (phi(cycle_values[i], k, table) != cycle_values[(i + 1) % n]) {
      throw DomainError("canonicalize_loop: phi_" + std::to_string(k) + "(" + std::to_string(cycle_values[i]) +
                        ") does not close the cycle");
    }
  }
  const auto min_it = std::min_element(cycle_values.begin(), cycle_values.end());
  Loop loop{.k = k, .elements = {}};
  loop.elements.reserve(n);
  loop.elements.insert(loop.elements.end(), min_it, cycle_values.end());
  loop.elements.insert(loop.elements.end(), cycle_values.begin(), min_it);
  return loop;
}

std::vector<std::uint64_t> orbit_prefix(std::uint64_t x0, std::uint64_t k, const FactorTable& table,
                                        std::size_t n) {
  if (n < 1) throw DomainError("orbit_prefix requires n >= 1");
  std::vector<std::uint64_t> terms;
  terms.reserve(n);
  std::uint64_t x = x0;
  if (x < 2) throw DomainError("orbit_prefix requires x0 >= 2");
  for (std::size_t i = 0; i < n; ++i) {
    terms.push_back(x);
    if (i + 1 < n) x = phi(x, k, table);
  }
  return terms;
}

}  // namespace orbitk
