#pragma once

// Prime sweeps over the conjecture registry: configuration, parallel
// per-prime execution, aggregation, and report serialization.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "supercong/conjdsl.hpp"

namespace supercong {

struct SweepConfig {
  std::uint64_t lo = 3;               // inclusive; must be >= 3
  std::uint64_t hi = 3;               // inclusive; must be >= lo
  std::vector<std::string> patterns;  // id globs; empty selects everything
  unsigned exponent_cap = 4;          // highest modulus exponent to check
  unsigned jobs = 1;                  // worker threads (>= 1)
  std::string report_path;            // optional output file
  std::string format = "json";        // json | csv | text
  bool fail_fast = false;             // stop claiming primes after a failure

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

// Glob match with '*' (any run) and '?' (any one character).
bool glob_match(std::string_view pattern, std::string_view text);
// True when the id matches any configured pattern (or none are given).
bool selected(const SweepConfig& config, std::string_view id);

struct ConjectureStats {
  std::string id;
  bool is_theorem = false;
  bool low_confidence = false;
  std::uint64_t primes = 0;  // primes that contributed at least one record
  std::uint64_t passes = 0;
  std::uint64_t failures = 0;
  std::uint64_t errors = 0;
  std::map<std::string, std::uint64_t> skips;  // reason -> count
  double seconds = 0.0;                        // timing field

  friend bool operator==(const ConjectureStats&, const ConjectureStats&) = default;
};

struct Report {
  SweepConfig config;
  std::string engine;                       // "supercong <version>"
  std::uint64_t primes_swept = 0;           // primes processed
  std::vector<VerificationRecord> records;  // (prime, id, case index) order
  std::vector<ConjectureStats> stats;       // by id, ascending
  double seconds = 0.0;                     // timing field

  std::uint64_t passes() const;
  std::uint64_t failures() const;
  std::uint64_t errors() const;
  std::uint64_t skips() const;
};

bool record_equal(const VerificationRecord& a, const VerificationRecord& b);
bool report_equal(const Report& a, const Report& b);

// Sweeps all primes in [config.lo, config.hi] over the selected registry
// entries.  Primes are distributed across config.jobs workers; each prime
// gets one shared evaluation context for every entry.  Records land in
// canonical order regardless of parallelism.  Throws std::invalid_argument
// on a malformed config; evaluation problems are captured as records.
Report run_sweep(const SweepConfig& config);
Report run_sweep(const SweepConfig& config,
                 const std::vector<ConjectureSpec>& registry);

// Canonical machine format (schema "supercong-report/1"); objects use sorted
// keys, so output is byte-stable except for the timing fields.
std::string report_json(const Report& report);
// One row per record: conjecture,case,prime,exponent,modulus,outcome,detail,lhs,rhs.
std::string report_csv(const Report& report);
// Human summary table; ends with "failures: N" / "errors: N" lines.
std::string report_text(const Report& report);
// Inverse of report_json; throws std::runtime_error on malformed input.
Report report_from_json(const std::string& text);

// 2 when any error record is present, else 1 when any failure record is
// present, else 0 (passes and skips only).
int report_exit_code(const Report& report);

// Writes in the requested format ("json", "csv" or "text"); throws
// std::runtime_error on I/O failure or an unknown format.
void write_report(const Report& report, const std::string& path,
                  const std::string& format);

}  // namespace supercong
