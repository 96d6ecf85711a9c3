#include "orbitk/experiments.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "orbitk/errors.hpp"
#include "orbitk/parallel.hpp"

namespace orbitk {

namespace {

using u128 = unsigned __int128;

std::string describe_k_values(std::span<const std::uint64_t> ks) {
  if (ks.empty()) return "k in {}";
  return "k in {" + std::to_string(ks.front()) + ".." + std::to_string(ks.back()) + "} (" +
         std::to_string(ks.size()) + " values)";
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo_exclusive, std::uint64_t hi, const FactorTable& table) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_up_to(hi, table)) {
    if (p > lo_exclusive) out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> PrimeAP::terms() const {
  std::vector<std::uint64_t> out;
  out.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) {
    std::uint64_t t = 0;
    if (__builtin_mul_overflow(i, difference, &t) || __builtin_add_overflow(first, t, &t)) {
      throw OverflowError("prime AP term overflows 64 bits");
    }
    out.push_back(t);
  }
  return out;
}

std::vector<SweepRow> sweep_loop_counts(std::uint64_t k_min, std::uint64_t k_max, const FactorTable& table,
                                        BoundMode mode, unsigned threads) {
  if (k_min < 1 || k_max < k_min) throw DomainError("sweep_loop_counts requires 1 <= k_min <= k_max");
  const std::uint64_t need = seed_bound(k_max, mode);
  if (table.limit() < need) {
    throw DomainError("sweep_loop_counts needs a factor table up to " + std::to_string(need) + ", have " +
                      std::to_string(table.limit()));
  }
  std::vector<SweepRow> rows(k_max - k_min + 1);
  // Largest k first: the expensive catalogs start early and balance better.
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const std::size_t slot = rows.size() - 1 - i;
    const std::uint64_t k = k_min + slot;
    rows[slot] = SweepRow{k, loop_count(k, table, mode)};
  });
  return rows;
}

std::vector<PeriodRow> least_k_for_periods(std::uint64_t l_max, std::uint64_t k_max, const FactorTable& table,
                                           BoundMode mode, unsigned threads) {
  if (l_max < 2) throw DomainError("least_k_for_periods requires l_max >= 2");
  if (k_max < 1) throw DomainError("least_k_for_periods requires k_max >= 1");
  std::vector<PeriodRow> rows;
  for (std::uint64_t l = 2; l <= l_max; ++l) rows.push_back(PeriodRow{l, std::nullopt});
  std::uint64_t unfilled = rows.size();

  const std::uint64_t batch = std::max<std::uint64_t>(threads, 1);
  std::vector<std::vector<std::uint64_t>> periods;
  for (std::uint64_t k0 = 1; k0 <= k_max && unfilled > 0; k0 += batch) {
    const std::uint64_t n = std::min(batch, k_max - k0 + 1);
    periods.assign(n, {});
    parallel_for(n, threads, [&](std::size_t i) {
      for (const Loop& loop : enumerate_loops(k0 + i, table, mode).loops) periods[i].push_back(loop.period());
    });
    // Scan ascending so the first k to reach a period wins, whatever the schedule.
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t l : periods[i]) {
        if (l < 2 || l > l_max) continue;
        auto& row = rows[l - 2];
        if (!row.least_k) {
          row.least_k = k0 + i;
          --unfilled;
        }
      }
    }
  }
  return rows;
}

std::optional<PrimeAP> find_prime_ap(std::uint64_t length, std::uint64_t difference_limit,
                                     std::uint64_t first_limit, const FactorTable& table) {
  if (length < 2) throw DomainError("find_prime_ap requires length >= 2");
  const auto firsts = primes_up_to(std::min(first_limit, table.limit()), table);
  for (std::uint64_t d = 1; d <= difference_limit; ++d) {
    for (std::uint64_t first : firsts) {
      bool all_prime = true;
      std::uint64_t term = first;
      for (std::uint64_t i = 1; i < length && all_prime; ++i) {
        if (__builtin_add_overflow(term, d, &term)) throw OverflowError("find_prime_ap: term overflows");
        all_prime = is_prime(term, table);
      }
      if (all_prime) return PrimeAP{first, d, length};
    }
  }
  return std::nullopt;
}

TrajectoryRecord stopping_time_demo(const PrimeAP& ap, const FactorTable& table) {
  if (ap.length < 2 || ap.difference < 1) throw DomainError("stopping_time_demo: malformed AP");
  for (std::uint64_t t : ap.terms()) {
    if (!is_prime(t, table)) {
      throw DomainError("stopping_time_demo: AP term " + std::to_string(t) + " is not prime");
    }
  }
  return analyze(ap.first, ap.difference, table);
}

VerificationReport verify_primorial_lemma(std::span<const PrimeAP> aps) {
  VerificationReport report{.claim = "primorial", .grid = std::to_string(aps.size()) + " prime APs",
                            .checked = 0, .violations = {}};
  for (const PrimeAP& ap : aps) {
    ++report.checked;
    const std::uint64_t modulus = primorial(std::max<std::uint64_t>(ap.length - 1, 1));
    if (ap.difference % modulus != 0) {
      report.violations.push_back(Violation{.k = ap.difference, .value = ap.first,
                                            .condition = std::to_string(ap.length - 1) + "# divides difference",
                                            .witness = ap.terms()});
    }
  }
  return report;
}

VerificationReport verify_odd_lemma(std::span<const std::uint64_t> k_values, std::uint64_t p_limit,
                                    const FactorTable& table, unsigned threads) {
  for (std::uint64_t k : k_values) {
    if (k < 3 || k % 2 == 0) throw DomainError("verify_odd_lemma: k=" + std::to_string(k) + " is not odd >= 3");
  }
  std::vector<VerificationReport> parts(k_values.size());
  parallel_for(k_values.size(), threads, [&](std::size_t i) {
    const std::uint64_t k = k_values[i];
    auto& part = parts[i];
    for (std::uint64_t p : primes_in(k, p_limit, table)) {
      ++part.checked;
      const std::uint64_t next = p + k;
      if (is_prime(next, table)) {
        part.violations.push_back(Violation{k, p, "p+k composite", {p, next}});
        continue;
      }
      const std::uint64_t q = largest_prime_factor(next, table);
      if (q >= p) part.violations.push_back(Violation{k, p, "phi^2(p) < p", {p, next, q}});
    }
  });
  VerificationReport report{.claim = "odd", .grid = describe_k_values(k_values) + ", primes k < p <= " +
                                                    std::to_string(p_limit),
                            .checked = 0, .violations = {}};
  for (auto& part : parts) {
    report.checked += part.checked;
    for (auto& v : part.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

VerificationReport verify_even_descent(std::span<const std::uint64_t> k_values, std::uint64_t p_limit,
                                       const FactorTable& table, std::uint64_t s_cap, unsigned threads) {
  for (std::uint64_t k : k_values) {
    if (k < 1 || k % 2 != 0) throw DomainError("verify_even_descent: k=" + std::to_string(k) + " is not even");
  }
  std::vector<VerificationReport> parts(k_values.size());
  parallel_for(k_values.size(), threads, [&](std::size_t i) {
    const std::uint64_t k = k_values[i];
    auto& part = parts[i];
    std::vector<std::uint64_t> orbit;
    for (std::uint64_t p : primes_in(k * k / 2, p_limit, table)) {
      ++part.checked;
      orbit.assign(1, p);
      std::uint64_t x = p;
      for (std::uint64_t step = 1;; ++step) {
        x = phi(x, k, table);
        if (x < p && is_prime(x, table)) break;
        if (std::find(orbit.begin(), orbit.end(), x) != orbit.end()) {
          orbit.push_back(x);
          part.violations.push_back(Violation{k, p, "reaches a prime < p", orbit});
          break;
        }
        if (step >= s_cap) {
          throw IterationBudgetError("verify_even_descent: k=" + std::to_string(k) + ", p=" + std::to_string(p) +
                                     " did not resolve within " + std::to_string(s_cap) + " steps");
        }
        orbit.push_back(x);
      }
    }
  });
  VerificationReport report{.claim = "even", .grid = describe_k_values(k_values) + ", primes k^2/2 < p <= " +
                                                     std::to_string(p_limit),
                            .checked = 0, .violations = {}};
  for (auto& part : parts) {
    report.checked += part.checked;
    for (auto& v : part.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

VerificationReport verify_loop_prime_bound(std::uint64_t k_min, std::uint64_t k_max, const FactorTable& table,
                                           unsigned threads) {
  if (k_min < 1 || k_max < k_min) throw DomainError("verify_loop_prime_bound requires 1 <= k_min <= k_max");
  const std::size_t n = k_max - k_min + 1;
  std::vector<VerificationReport> parts(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const std::uint64_t k = k_min + i;
    auto& part = parts[i];
    for (const Loop& loop : enumerate_loops(k, table, BoundMode::Safe).loops) {
      ++part.checked;
      std::uint64_t min_prime = 0;
      for (std::uint64_t v : loop.elements) {
        if (is_prime(v, table) && (min_prime == 0 || v < min_prime)) min_prime = v;
      }
      // min_prime < k^2/2  <=>  2 min_prime < k^2
      if (2 * static_cast<u128>(min_prime) >= static_cast<u128>(k) * k) {
        part.violations.push_back(Violation{k, min_prime, "min prime < k^2/2", loop.elements});
      }
      // min_prime < k sqrt(k)/2  <=>  4 min_prime^2 < k^3
      if (4 * static_cast<u128>(min_prime) * min_prime >= static_cast<u128>(k) * k * k) {
        part.violations.push_back(Violation{k, min_prime, "min prime < k*sqrt(k)/2", loop.elements});
      }
    }
  });
  VerificationReport report{.claim = "loop-bound",
                            .grid = "k in [" + std::to_string(k_min) + ", " + std::to_string(k_max) + "], safe mode",
                            .checked = 0, .violations = {}};
  for (auto& part : parts) {
    report.checked += part.checked;
    for (auto& v : part.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

std::vector<ViolationKey> known_violations(std::string_view claim) {
  if (claim == "odd" || claim == "primorial") return {};
  if (claim == "even") return {{2, 3, "reaches a prime < p"}};
  if (claim == "loop-bound") {
    return {
        {1, 2, "min prime < k^2/2"}, {1, 2, "min prime < k*sqrt(k)/2"},
        {2, 2, "min prime < k^2/2"}, {2, 2, "min prime < k*sqrt(k)/2"},
        {2, 3, "min prime < k^2/2"}, {2, 3, "min prime < k*sqrt(k)/2"},
        {3, 3, "min prime < k*sqrt(k)/2"},
    };
  }
  throw DomainError("unknown claim '" + std::string(claim) + "'");
}

bool matches_known_violations(const VerificationReport& report, std::uint64_t k_lo, std::uint64_t k_hi) {
  std::set<ViolationKey> expected;
  for (auto& key : known_violations(report.claim)) {
    if (key.k >= k_lo && key.k <= k_hi) expected.insert(key);
  }
  std::set<ViolationKey> found;
  for (const Violation& v : report.violations) found.insert(ViolationKey{v.k, v.value, v.condition});
  return found == expected && found.size() == report.violations.size();
}

}  // namespace orbitk
