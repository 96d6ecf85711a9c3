#include "orbitk/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "orbitk/catalog.hpp"
#include "orbitk/dynamics.hpp"
#include "orbitk/errors.hpp"
#include "orbitk/experiments.hpp"
#include "orbitk/numtheory.hpp"

namespace orbitk::cli {

namespace {

// Ranges used when --long selects the full published sweeps.
constexpr std::uint64_t kLongSweepKMax = 5000;
constexpr std::uint64_t kLongPeriodsLMax = 50;
constexpr std::uint64_t kLongPeriodsKMax = 1500;

struct RunConfig {
  std::string command;
  std::uint64_t k = 0;
  std::uint64_t k_min = 0;
  std::uint64_t k_max = 0;
  std::uint64_t x0 = 0;
  std::uint64_t n = 0;
  std::uint64_t l_max = 0;
  std::uint64_t p_max = 100'000;
  std::uint64_t length = 0;
  std::uint64_t d_max = 5000;
  std::uint64_t first_max = 10'000;
  std::string mode = "safe";
  unsigned threads = 1;
  std::uint64_t max_steps = 0;
  std::string output_path;
  std::string format = "csv";
  std::uint64_t sieve_limit = 0;
  bool long_run = false;
  std::string claim;
  std::vector<std::string> aps;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A flat table rendered either as CSV (header + LF rows) or as a JSON array
// of objects keyed by the header names.
using Cell = std::variant<std::monostate, std::uint64_t, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string join(const std::vector<std::uint64_t>& values, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(values[i]);
  }
  return s;
}

std::string render(const Table& table, const std::string& format) {
  if (format == "json") {
    auto array = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < table.header.size(); ++i) {
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, std::monostate>) obj[table.header[i]] = nullptr;
              else obj[table.header[i]] = v;
            },
            row[i]);
      }
      array.push_back(std::move(obj));
    }
    return array.dump(2) + "\n";
  }
  std::string s;
  for (std::size_t i = 0; i < table.header.size(); ++i) s += (i ? "," : "") + table.header[i];
  s += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      if (const auto* u = std::get_if<std::uint64_t>(&row[i])) s += std::to_string(*u);
      else if (const auto* str = std::get_if<std::string>(&row[i])) s += *str;
    }
    s += '\n';
  }
  return s;
}

void emit(const Table& table, const RunConfig& cfg, std::ostream& out) {
  const std::string text = render(table, cfg.format);
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw ResourceError("cannot open output file '" + cfg.output_path + "'", 0);
  file << text;
  if (!file) throw ResourceError("failed writing output file '" + cfg.output_path + "'", 0);
}

FactorTable make_table(const RunConfig& cfg, std::uint64_t required, std::uint64_t recommended) {
  const std::uint64_t limit = cfg.sieve_limit ? cfg.sieve_limit : std::max(required, recommended);
  if (limit < required) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " is below the required " +
                            std::to_string(required) + "; pass --sieve-limit " + std::to_string(required) +
                            " or larger",
                        required);
  }
  return FactorTable(std::max<std::uint64_t>(limit, 2));
}

PrimeAP parse_ap(const std::string& text) {
  std::vector<std::uint64_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      parts.push_back(std::stoull(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--ap expects first,difference,length; got '" + text + "'");
    }
  }
  if (parts.size() != 3) throw UsageError("--ap expects first,difference,length; got '" + text + "'");
  return PrimeAP{parts[0], parts[1], parts[2]};
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out) {
  if (cfg.x0 < 2) throw UsageError("--x0 must be >= 2");
  if (cfg.k < 1) throw UsageError("--k must be >= 1");
  const std::uint64_t hint = cfg.x0 > (1ull << 40) ? (1ull << 22) : 2 * (cfg.x0 + cfg.k);
  const FactorTable table = make_table(cfg, 2, std::clamp<std::uint64_t>(hint, 1024, 1ull << 22));
  const TrajectoryRecord rec = analyze(cfg.x0, cfg.k, table, cfg.max_steps ? cfg.max_steps : kDefaultMaxSteps);

  const std::uint64_t n = cfg.n ? cfg.n : rec.stopping_time + rec.period;
  const auto terms = orbit_prefix(cfg.x0, cfg.k, table, n);
  out << "S(" << cfg.x0 << "," << cfg.k << ") = ";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out << ", ";
    if (i == rec.preperiod) out << "[";
    out << terms[i];
    if (i + 1 == rec.stopping_time) out << "]";
  }
  out << ", ...\n";
  out << "loop: " << join(rec.loop.elements) << "\n";
  out << "preperiod: " << rec.preperiod << "\n";
  out << "period: " << rec.period << "\n";
  out << "stopping_time: " << rec.stopping_time << "\n";

  if (!cfg.output_path.empty()) {
    Table t{{"x0", "k", "preperiod", "period", "stopping_time", "loop"}, {}};
    t.rows.push_back({rec.x0, rec.k, rec.preperiod, rec.period, rec.stopping_time, join(rec.loop.elements)});
    emit(t, cfg, out);
  }
  return kOk;
}

int cmd_loops(const RunConfig& cfg, std::ostream& out) {
  if (cfg.k < 1) throw UsageError("--k must be >= 1");
  const BoundMode mode = parse_bound_mode(cfg.mode);
  const FactorTable table = make_table(cfg, seed_bound(cfg.k, mode), recommended_table_limit(cfg.k, mode));
  EnumerateOptions options;
  if (cfg.max_steps) options.max_steps = cfg.max_steps;
  const LoopCatalog cat = enumerate_loops(cfg.k, table, mode, options);
  Table t{{"loop_id", "period", "min_element", "elements"}, {}};
  for (std::size_t i = 0; i < cat.loops.size(); ++i) {
    const Loop& loop = cat.loops[i];
    t.rows.push_back({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(loop.period()),
                      loop.min_element(), join(loop.elements)});
  }
  emit(t, cfg, out);
  return kOk;
}

int cmd_sweep_loops(RunConfig cfg, std::ostream& out) {
  if (cfg.k_min == 0) cfg.k_min = 1;
  if (cfg.k_max == 0) cfg.k_max = cfg.long_run ? kLongSweepKMax : 100;
  if (cfg.k_max < cfg.k_min) throw UsageError("--k-max must be >= --k-min");
  const BoundMode mode = parse_bound_mode(cfg.mode);
  const FactorTable table =
      make_table(cfg, seed_bound(cfg.k_max, mode), recommended_table_limit(cfg.k_max, mode));
  Table t{{"k", "num_loops"}, {}};
  for (const SweepRow& row : sweep_loop_counts(cfg.k_min, cfg.k_max, table, mode, cfg.threads)) {
    t.rows.push_back({row.k, row.num_loops});
  }
  emit(t, cfg, out);
  return kOk;
}

int cmd_sweep_periods(RunConfig cfg, std::ostream& out) {
  if (cfg.l_max == 0) cfg.l_max = cfg.long_run ? kLongPeriodsLMax : 20;
  if (cfg.k_max == 0) cfg.k_max = cfg.long_run ? kLongPeriodsKMax : 200;
  if (cfg.l_max < 2) throw UsageError("--l-max must be >= 2");
  const BoundMode mode = parse_bound_mode(cfg.mode);
  const FactorTable table =
      make_table(cfg, seed_bound(cfg.k_max, mode), recommended_table_limit(cfg.k_max, mode));
  Table t{{"period", "least_k"}, {}};
  for (const PeriodRow& row : least_k_for_periods(cfg.l_max, cfg.k_max, table, mode, cfg.threads)) {
    t.rows.push_back({row.period, row.least_k ? Cell{*row.least_k} : Cell{}});
  }
  emit(t, cfg, out);
  return kOk;
}

std::vector<std::uint64_t> k_values_with_parity(std::uint64_t lo, std::uint64_t hi, int parity) {
  std::vector<std::uint64_t> ks;
  for (std::uint64_t k = lo; k <= hi; ++k) {
    if (static_cast<int>(k % 2) == parity) ks.push_back(k);
  }
  return ks;
}

int cmd_verify(RunConfig cfg, std::ostream& out, std::ostream& err) {
  VerificationReport report;
  std::uint64_t k_lo = 0;
  std::uint64_t k_hi = ~0ull;
  const std::uint64_t s_cap = cfg.max_steps ? cfg.max_steps : kDefaultDescentCap;

  if (cfg.claim == "odd" || cfg.claim == "even") {
    const bool odd = cfg.claim == "odd";
    k_lo = cfg.k_min ? cfg.k_min : (odd ? 3 : 2);
    k_hi = cfg.k_max ? cfg.k_max : (odd ? 99 : 200);
    if (k_hi < k_lo) throw UsageError("--k-max must be >= --k-min");
    if (odd && k_lo < 3) throw UsageError("odd claim requires --k-min >= 3");
    const auto ks = k_values_with_parity(k_lo, k_hi, odd ? 1 : 0);
    const FactorTable table = make_table(cfg, std::max<std::uint64_t>(cfg.p_max, 2),
                                         std::max<std::uint64_t>(cfg.p_max + 2 * k_hi, 1024));
    report = odd ? verify_odd_lemma(ks, cfg.p_max, table, cfg.threads)
                 : verify_even_descent(ks, cfg.p_max, table, s_cap, cfg.threads);
  } else if (cfg.claim == "primorial") {
    std::vector<PrimeAP> aps;
    const FactorTable table = make_table(cfg, std::max<std::uint64_t>(cfg.first_max, 2),
                                         std::max<std::uint64_t>(cfg.first_max, 1 << 16));
    if (!cfg.aps.empty()) {
      for (const auto& text : cfg.aps) {
        PrimeAP ap = parse_ap(text);
        if (ap.length < 2 || ap.difference < 1) throw UsageError("--ap needs length >= 2 and difference >= 1");
        for (std::uint64_t t : ap.terms()) {
          if (!is_prime(t, table)) throw UsageError("--ap " + text + ": term " + std::to_string(t) + " is not prime");
        }
        aps.push_back(ap);
      }
    } else {
      for (std::uint64_t len = 3; len <= 10; ++len) {
        if (auto ap = find_prime_ap(len, cfg.d_max, cfg.first_max, table)) aps.push_back(*ap);
      }
    }
    report = verify_primorial_lemma(aps);
  } else if (cfg.claim == "loop-bound") {
    k_lo = cfg.k_min ? cfg.k_min : 1;
    k_hi = cfg.k_max ? cfg.k_max : 200;
    if (k_hi < k_lo) throw UsageError("--k-max must be >= --k-min");
    const FactorTable table = make_table(cfg, seed_bound(k_hi), recommended_table_limit(k_hi));
    report = verify_loop_prime_bound(k_lo, k_hi, table, cfg.threads);
  } else {
    throw UsageError("unknown claim '" + cfg.claim + "' (expected primorial, odd, even or loop-bound)");
  }

  Table t{{"claim", "k", "value", "condition", "witness"}, {}};
  for (const Violation& v : report.violations) {
    t.rows.push_back({report.claim, v.k, v.value, v.condition, join(v.witness)});
  }
  emit(t, cfg, out);

  const bool expected = matches_known_violations(report, k_lo, k_hi);
  err << "verify " << report.claim << ": " << report.grid << "; checked " << report.checked << ", "
      << report.violations.size() << " violation(s), " << (expected ? "as expected" : "UNEXPECTED") << "\n";
  return expected ? kOk : kUnexpectedViolation;
}

int cmd_find_ap(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.length < 2) throw UsageError("--length must be >= 2");
  const FactorTable table = make_table(cfg, std::max<std::uint64_t>(cfg.first_max, 2),
                                       std::max<std::uint64_t>(cfg.first_max, 1 << 16));
  Table t{{"first", "difference", "length", "terms"}, {}};
  if (auto ap = find_prime_ap(cfg.length, cfg.d_max, cfg.first_max, table)) {
    t.rows.push_back({ap->first, ap->difference, ap->length, join(ap->terms())});
  } else {
    err << "no AP of " << cfg.length << " primes with difference <= " << cfg.d_max << " and first <= "
        << cfg.first_max << "\n";
  }
  emit(t, cfg, out);
  return kOk;
}

unsigned default_threads() {
  if (const char* env = std::getenv("ORBITK_THREADS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.threads = default_threads();

  CLI::App app{"Orbits, loop catalogs and sweeps for the prime-step / largest-prime-factor maps"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output_path, "Write results to this file instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--sieve-limit", cfg.sieve_limit, "Override the automatic factor-table size");
    sub->add_option("--max-steps", cfg.max_steps, "Iteration budget per orbit");
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "Seed bound: safe, paper or remark")
        ->check(CLI::IsMember({"safe", "paper", "remark"}));
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads (default $ORBITK_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  };

  auto* orbit = app.add_subcommand("orbit", "Print an orbit with its loop, preperiod, period and stopping time");
  orbit->add_option("--x0", cfg.x0, "Starting value (>= 2)")->required();
  orbit->add_option("--k", cfg.k, "Map parameter (>= 1)")->required();
  orbit->add_option("--n", cfg.n, "Number of terms to print (default: through one repeat of the loop)");
  add_common(orbit);

  auto* loops = app.add_subcommand("loops", "Write the loop catalog for one k");
  loops->add_option("--k", cfg.k, "Map parameter (>= 1)")->required();
  add_mode(loops);
  add_common(loops);

  auto* sweep_loops = app.add_subcommand("sweep-loops", "Loop count for each k in a range (k,num_loops)");
  sweep_loops->add_option("--k-min", cfg.k_min, "First k (default 1)");
  sweep_loops->add_option("--k-max", cfg.k_max, "Last k (default 100, or 5000 with --long)");
  sweep_loops->add_flag("--long", cfg.long_run, "Default to the full k=1..5000 range");
  add_mode(sweep_loops);
  add_threads(sweep_loops);
  add_common(sweep_loops);

  auto* sweep_periods = app.add_subcommand("sweep-periods", "Least k attaining each period (period,least_k)");
  sweep_periods->add_option("--l-max", cfg.l_max, "Largest period (default 20, or 50 with --long)");
  sweep_periods->add_option("--k-max", cfg.k_max, "Largest k searched (default 200, or 1500 with --long)");
  sweep_periods->add_flag("--long", cfg.long_run, "Default to l <= 50, k <= 1500");
  add_mode(sweep_periods);
  add_threads(sweep_periods);
  add_common(sweep_periods);

  auto* verify = app.add_subcommand("verify", "Check a lemma-level claim over a grid");
  verify->add_option("claim", cfg.claim, "primorial, odd, even or loop-bound")->required();
  verify->add_option("--k-min", cfg.k_min, "Smallest k in the grid");
  verify->add_option("--k-max", cfg.k_max, "Largest k in the grid");
  verify->add_option("--p-max", cfg.p_max, "Largest seed prime (odd, even)");
  verify->add_option("--ap", cfg.aps, "Prime AP as first,difference,length (primorial; repeatable)");
  verify->add_option("--d-max", cfg.d_max, "Largest AP difference searched (primorial)");
  verify->add_option("--first-max", cfg.first_max, "Largest AP first term searched (primorial)");
  add_threads(verify);
  add_common(verify);

  auto* find_ap = app.add_subcommand("find-ap", "Smallest-difference arithmetic progression of primes");
  find_ap->add_option("--length", cfg.length, "Number of terms (>= 2)")->required();
  find_ap->add_option("--d-max", cfg.d_max, "Largest difference searched");
  find_ap->add_option("--first-max", cfg.first_max, "Largest first term searched");
  add_common(find_ap);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (orbit->parsed()) return cmd_orbit(cfg, out);
    if (loops->parsed()) return cmd_loops(cfg, out);
    if (sweep_loops->parsed()) return cmd_sweep_loops(cfg, out);
    if (sweep_periods->parsed()) return cmd_sweep_periods(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (find_ap->parsed()) return cmd_find_ap(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  }
  return kUsage;
}

}  // namespace orbitk::cli
