#include "orbitk/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "orbitk/errors.hpp"

namespace orbitk {

namespace {

constexpr std::int32_t kUnknown = -1;
constexpr std::int32_t kOnPath = -2;

std::uint64_t ceil_half(std::uint64_t v) { return v / 2 + (v % 2); }

// Smallest n with 4 n^2 >= k^3, i.e. ceil(k * sqrt(k) / 2).
std::uint64_t ceil_k_sqrt_k_half(std::uint64_t k) {
  using u128 = unsigned __int128;
  const u128 k3 = static_cast<u128>(k) * k * k;
  auto n = static_cast<std::uint64_t>(std::ceil(static_cast<long double>(k) * std::sqrt(static_cast<long double>(k)) / 2));
  while (n > 0 && 4 * static_cast<u128>(n - 1) * (n - 1) >= k3) --n;
  while (4 * static_cast<u128>(n) * n < k3) ++n;
  return n;
}

void sort_loops(std::vector<Loop>& loops) {
  std::sort(loops.begin(), loops.end(), [](const Loop& a, const Loop& b) {
    if (a.min_element() != b.min_element()) return a.min_element() < b.min_element();
    return a.period() < b.period();
  });
}

LoopCatalog enumerate_memoized(std::uint64_t k, const FactorTable& table, BoundMode mode,
                               std::uint64_t bound, std::uint64_t max_steps) {
  const std::uint64_t memo_limit = 2 * bound;
  std::vector<std::int32_t> memo(memo_limit + 1, kUnknown);
  std::vector<Loop> loops;
  std::vector<std::uint64_t> path;
  std::vector<std::uint64_t> high;  // path values above memo_limit

  std::uint64_t seeds = 0;
  for (std::uint64_t p : table.primes()) {
    if (p > bound) break;
    ++seeds;
    if (memo[p] >= 0) continue;

    path.clear();
    high.clear();
    std::uint64_t x = p;
    std::int32_t id = kUnknown;
    for (std::uint64_t step = 0;; ++step) {
      std::size_t cycle_start = path.size();
      if (x <= memo_limit) {
        const std::int32_t m = memo[x];
        if (m >= 0) {
          id = m;
          break;
        }
        if (m == kOnPath) cycle_start = std::find(path.begin(), path.end(), x) - path.begin();
        else memo[x] = kOnPath;
      } else if (std::find(high.begin(), high.end(), x) != high.end()) {
        cycle_start = std::find(path.begin(), path.end(), x) - path.begin();
      } else {
        high.push_back(x);
      }
      if (cycle_start < path.size()) {
        id = static_cast<std::int32_t>(loops.size());
        loops.push_back(canonicalize_loop(std::span(path).subspan(cycle_start), k, table));
        break;
      }
      if (step >= max_steps) {
        throw IterationBudgetError("enumerate_loops: seed " + std::to_string(p) + " for k=" +
                                   std::to_string(k) + " exceeded " + std::to_string(max_steps) + " steps");
      }
      path.push_back(x);
      x = phi(x, k, table);
    }
    for (std::uint64_t v : path) {
      if (v <= memo_limit) memo[v] = id;
    }
  }

  sort_loops(loops);
  return LoopCatalog{.k = k, .loops = std::move(loops), .seed_bound_used = bound, .seeds_processed = seeds,
                     .mode = mode};
}

LoopCatalog enumerate_plain(std::uint64_t k, const FactorTable& table, BoundMode mode, std::uint64_t bound,
                            std::uint64_t max_steps) {
  std::map<std::uint64_t, Loop> by_min;
  std::uint64_t seeds = 0;
  for (std::uint64_t p : table.primes()) {
    if (p > bound) break;
    ++seeds;
    Loop loop = analyze(p, k, table, max_steps).loop;
    by_min.try_emplace(loop.min_element(), std::move(loop));
  }
  std::vector<Loop> loops;
  for (auto& [min, loop] : by_min) loops.push_back(std::move(loop));
  return LoopCatalog{.k = k, .loops = std::move(loops), .seed_bound_used = bound, .seeds_processed = seeds,
                     .mode = mode};
}

}  // namespace

std::string_view to_string(BoundMode mode) noexcept {
  switch (mode) {
    case BoundMode::Safe: return "safe";
    case BoundMode::Paper: return "paper";
    case BoundMode::Remark: return "remark";
  }
  return "safe";
}

BoundMode parse_bound_mode(std::string_view text) {
  if (text == "safe") return BoundMode::Safe;
  if (text == "paper") return BoundMode::Paper;
  if (text == "remark") return BoundMode::Remark;
  throw DomainError("unknown bound mode '" + std::string(text) + "' (expected safe, paper or remark)");
}

std::uint64_t seed_bound(std::uint64_t k, BoundMode mode) {
  if (k < 1) throw DomainError("seed_bound requires k >= 1");
  if (k > 3'000'000'000ull) throw OverflowError("seed_bound: k too large");
  switch (mode) {
    case BoundMode::Paper: return ceil_half(k * k);
    case BoundMode::Remark: return ceil_k_sqrt_k_half(k);
    case BoundMode::Safe: break;
  }
  return std::max(ceil_half(k * k), 2 * k);
}

std::uint64_t recommended_table_limit(std::uint64_t k_max, BoundMode mode) {
  return std::max<std::uint64_t>(2 * seed_bound(k_max, mode) + 2 * k_max, 1024);
}

LoopCatalog enumerate_loops(std::uint64_t k, const FactorTable& table, BoundMode mode,
                            const EnumerateOptions& options) {
  const std::uint64_t bound = seed_bound(k, mode);
  if (table.limit() < bound) {
    throw DomainError("enumerate_loops(k=" + std::to_string(k) + ", " + std::string(to_string(mode)) +
                      ") needs a factor table up to " + std::to_string(bound) + ", have " +
                      std::to_string(table.limit()));
  }
  return options.memoize ? enumerate_memoized(k, table, mode, bound, options.max_steps)
                         : enumerate_plain(k, table, mode, bound, options.max_steps);
}

LoopCatalog brute_force_loops(std::uint64_t k, std::uint64_t x_max, const FactorTable& table) {
  if (x_max < 2) throw DomainError("brute_force_loops requires x_max >= 2");
  std::map<std::uint64_t, Loop> by_min;
  for (std::uint64_t x = 2; x <= x_max; ++x) {
    Loop loop = analyze(x, k, table).loop;
    by_min.try_emplace(loop.min_element(), std::move(loop));
  }
  LoopCatalog cat{.k = k, .loops = {}, .seed_bound_used = x_max, .seeds_processed = x_max - 1,
                  .mode = BoundMode::Safe};
  for (auto& [min, loop] : by_min) cat.loops.push_back(std::move(loop));
  return cat;
}

std::size_t loop_count(std::uint64_t k, const FactorTable& table, BoundMode mode) {
  return enumerate_loops(k, table, mode).loops.size();
}

}  // namespace orbitk
