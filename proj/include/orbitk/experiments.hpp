#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbitk/catalog.hpp"
#include "orbitk/dynamics.hpp"
#include "orbitk/numtheory.hpp"

namespace orbitk {

struct SweepRow {
  std::uint64_t k = 0;
  std::uint64_t num_loops = 0;
  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct PeriodRow {
  std::uint64_t period = 0;
  std::optional<std::uint64_t> least_k;
  friend bool operator==(const PeriodRow&, const PeriodRow&) = default;
};

/// first, first + difference, ..., first + (length-1) * difference, all prime.
struct PrimeAP {
  std::uint64_t first = 0;
  std::uint64_t difference = 0;
  std::uint64_t length = 0;

  std::vector<std::uint64_t> terms() const;
  friend bool operator==(const PrimeAP&, const PrimeAP&) = default;
};

/// One counterexample found by a verifier.
struct Violation {
  std::uint64_t k = 0;
  /// The instance value: the seed prime p, the loop's minimal prime, or the AP's first term.
  std::uint64_t value = 0;
  /// Which bound or condition failed.
  std::string condition;
  /// Orbit, loop or AP terms demonstrating the failure.
  std::vector<std::uint64_t> witness;
};

struct VerificationReport {
  std::string claim;
  std::string grid;
  std::uint64_t checked = 0;
  std::vector<Violation> violations;

  bool holds() const noexcept { return violations.empty(); }
};

/// Identity of a violation, independent of its witness.
struct ViolationKey {
  std::uint64_t k = 0;
  std::uint64_t value = 0;
  std::string condition;
  friend auto operator<=>(const ViolationKey&, const ViolationKey&) = default;
};

/// Violations known to occur for a claim ("odd", "even", "primorial",
/// "loop-bound"): the k=2, p=3 even-descent counterexample and the k <= 3
/// loop-bound failures. Throws DomainError for an unknown claim.
std::vector<ViolationKey> known_violations(std::string_view claim);

/// True iff the report's violations are exactly the known ones with k in [k_lo, k_hi].
bool matches_known_violations(const VerificationReport& report, std::uint64_t k_lo, std::uint64_t k_hi);

/// Loop counts for k in [k_min, k_max], ascending in k for any thread count.
std::vector<SweepRow> sweep_loop_counts(std::uint64_t k_min, std::uint64_t k_max, const FactorTable& table,
                                        BoundMode mode = BoundMode::Safe, unsigned threads = 1);

/// For l = 2..l_max, the least k <= k_max whose catalog has a loop of period l.
std::vector<PeriodRow> least_k_for_periods(std::uint64_t l_max, std::uint64_t k_max, const FactorTable& table,
                                           BoundMode mode = BoundMode::Safe, unsigned threads = 1);

/// Smallest difference, then smallest first term, among APs of `length` primes
/// with difference <= difference_limit and first <= first_limit.
///
/// Every difference in range is tried, so the primorial divisibility of the
/// result is an outcome of the search rather than an assumption of it.
std::optional<PrimeAP> find_prime_ap(std::uint64_t length, std::uint64_t difference_limit,
                                     std::uint64_t first_limit, const FactorTable& table);

/// analyze(ap.first, ap.difference). Throws DomainError if any AP term is composite.
TrajectoryRecord stopping_time_demo(const PrimeAP& ap, const FactorTable& table);

/// primorial(length - 1) divides the difference of every AP.
VerificationReport verify_primorial_lemma(std::span<const PrimeAP> aps);

/// For odd k >= 3 and primes k < p <= p_limit: p + k is composite and its
/// largest prime factor is below p.
VerificationReport verify_odd_lemma(std::span<const std::uint64_t> k_values, std::uint64_t p_limit,
                                    const FactorTable& table, unsigned threads = 1);

inline constexpr std::uint64_t kDefaultDescentCap = 1'000'000;

/// For even k and primes k^2/2 < p <= p_limit: the orbit of p reaches a prime
/// below p before any value repeats.
VerificationReport verify_even_descent(std::span<const std::uint64_t> k_values, std::uint64_t p_limit,
                                       const FactorTable& table, std::uint64_t s_cap = kDefaultDescentCap,
                                       unsigned threads = 1);

/// Checks each safe-mode loop's minimal prime against k^2/2 and k*sqrt(k)/2.
VerificationReport verify_loop_prime_bound(std::uint64_t k_min, std::uint64_t k_max, const FactorTable& table,
                                           unsigned threads = 1);

}  // namespace orbitk
