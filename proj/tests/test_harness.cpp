#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "supercong/harness.hpp"

using namespace supercong;

namespace {

Report normalized(Report r) {
  r.seconds = 0.0;
  for (ConjectureStats& s : r.stats) s.seconds = 0.0;
  return r;
}

std::vector<ConjectureSpec> tiny_registry(const std::string& text) {
  return parse_registry(text, "inline");
}

}  // namespace

TEST_CASE("glob matching") {
  CHECK(glob_match("abc", "abc"));
  CHECK_FALSE(glob_match("abc", "abd"));
  CHECK_FALSE(glob_match("abc", "ab"));
  CHECK(glob_match("*", ""));
  CHECK(glob_match("*", "anything"));
  CHECK(glob_match("bs-*", "bs-07"));
  CHECK_FALSE(glob_match("bs-*", "al-07"));
  CHECK(glob_match("*-w?", "re-8-w5"));
  CHECK(glob_match("thm-*-w21", "thm-cube-w21"));
  CHECK(glob_match("?", "x"));
  CHECK_FALSE(glob_match("?", ""));
  CHECK(glob_match("a*b*c", "a-xx-b-yy-c"));
  CHECK_FALSE(glob_match("a*b*c", "a-xx-c-yy-b"));
  CHECK(glob_match("**", "ab"));
  CHECK(glob_match("re-8", "re-8"));
  CHECK_FALSE(glob_match("re-8", "re-81"));
}

TEST_CASE("pattern selection") {
  SweepConfig config;
  CHECK(selected(config, "anything"));  // empty pattern list selects all
  config.patterns = {"thm-*", "bs-0?"};
  CHECK(selected(config, "thm-t4"));
  CHECK(selected(config, "bs-07"));
  CHECK_FALSE(selected(config, "bs-17"));
  CHECK_FALSE(selected(config, "al-01"));
}

TEST_CASE("config validation") {
  SweepConfig config;
  config.lo = 2;
  config.hi = 10;
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
  config.lo = 11;
  config.hi = 7;
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
  config.lo = 5;
  config.hi = 7;
  config.exponent_cap = 0;
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
  config.exponent_cap = 6;
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
  config.exponent_cap = 3;
  config.jobs = 0;
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
}

TEST_CASE("sweep over an inline registry") {
  auto registry = tiny_registry(
      "conjecture \"t-pass\" { case all: p === p (mod p^2); }\n"
      "conjecture \"t-fail\" { case all: 1 === 2 (mod p^1); }\n"
      "conjecture \"t-skip\" { exclude 5, 7, 11, 13; case all: p === p (mod p^1); }\n");
  SweepConfig config;
  config.lo = 5;
  config.hi = 13;
  Report report = run_sweep(config, registry);
  CHECK(report.primes_swept == 4);  // 5, 7, 11, 13
  CHECK(report.records.size() == 12);
  CHECK(report.passes() == 4);
  CHECK(report.failures() == 4);
  CHECK(report.skips() == 4);
  CHECK(report.errors() == 0);
  // canonical order: per prime ascending, entries by id
  CHECK(report.records[0].conjecture_id == "t-fail");
  CHECK(report.records[0].prime == 5);
  CHECK(report.records[1].conjecture_id == "t-pass");
  CHECK(report.records[2].conjecture_id == "t-skip");
  CHECK(report.records[2].detail == "excluded-prime");
  CHECK(report.records[3].prime == 7);
  // stats sorted by id
  REQUIRE(report.stats.size() == 3);
  CHECK(report.stats[0].id == "t-fail");
  CHECK(report.stats[0].failures == 4);
  CHECK(report.stats[1].id == "t-pass");
  CHECK(report.stats[1].passes == 4);
  CHECK(report.stats[2].id == "t-skip");
  CHECK(report.stats[2].skips.at("excluded-prime") == 4);
  CHECK(report_exit_code(report) == 1);
}

TEST_CASE("selection narrows the sweep") {
  SweepConfig config;
  config.lo = 5;
  config.hi = 50;
  config.patterns = {"thm-cube-w*"};
  Report report = run_sweep(config);
  REQUIRE(report.stats.size() == 3);  // thm-cube-w21, thm-cube-wm64, thm-cube-wm8
  CHECK(report.stats[0].id == "thm-cube-w21");
  CHECK(report.failures() == 0);
  CHECK(report.errors() == 0);

  config.patterns = {"no-such-entry-*"};
  Report empty = run_sweep(config);
  CHECK(empty.stats.empty());
  CHECK(empty.records.empty());
  CHECK(empty.primes_swept == report.primes_swept);
}

TEST_CASE("parallel and serial sweeps agree") {
  SweepConfig serial;
  serial.lo = 3;
  serial.hi = 199;
  serial.exponent_cap = 3;
  serial.jobs = 1;
  SweepConfig parallel = serial;
  parallel.jobs = 8;
  Report a = run_sweep(serial);
  Report b = run_sweep(parallel);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i)
    CHECK(record_equal(a.records[i], b.records[i]));
  Report na = normalized(a);
  Report nb = normalized(b);
  nb.config = na.config;  // jobs differ by construction
  CHECK(na.stats == nb.stats);
  CHECK(na.primes_swept == nb.primes_swept);
}

TEST_CASE("determinism: identical runs give identical reports") {
  SweepConfig config;
  config.lo = 3;
  config.hi = 97;
  config.exponent_cap = 4;
  config.jobs = 4;
  Report a = run_sweep(config);
  Report b = run_sweep(config);
  CHECK(report_equal(normalized(a), normalized(b)));
  CHECK(report_json(normalized(a)) == report_json(normalized(b)));
  CHECK(report_csv(a) == report_csv(b));
}

TEST_CASE("adjacent ranges compose") {
  SweepConfig whole;
  whole.lo = 3;
  whole.hi = 61;
  whole.exponent_cap = 3;
  Report full = run_sweep(whole);

  SweepConfig first = whole, second = whole;
  first.hi = 30;   // primes 3..29
  second.lo = 31;  // primes 31..61
  Report lowpart = run_sweep(first);
  Report highpart = run_sweep(second);

  CHECK(full.primes_swept == lowpart.primes_swept + highpart.primes_swept);
  REQUIRE(full.records.size() == lowpart.records.size() + highpart.records.size());
  for (std::size_t i = 0; i < lowpart.records.size(); ++i)
    CHECK(record_equal(full.records[i], lowpart.records[i]));
  for (std::size_t i = 0; i < highpart.records.size(); ++i)
    CHECK(record_equal(full.records[lowpart.records.size() + i], highpart.records[i]));
}

TEST_CASE("json report round-trips") {
  SweepConfig config;
  config.lo = 5;
  config.hi = 30;
  config.patterns = {"bs-1*"};
  config.exponent_cap = 3;
  Report report = normalized(run_sweep(config));
  Report back = report_from_json(report_json(report));
  CHECK(report_equal(report, back));

  CHECK_THROWS_AS(report_from_json("not json"), std::runtime_error);
  CHECK_THROWS_AS(report_from_json("{\"schema\":\"other/9\"}"), std::runtime_error);
}

TEST_CASE("report formats carry the verdict") {
  auto registry = tiny_registry(
      "conjecture \"f\" { case all: 1 === 2 (mod p^1); }\n");
  SweepConfig config;
  config.lo = 5;
  config.hi = 11;
  Report report = run_sweep(config, registry);

  std::string text = report_text(report);
  CHECK(text.find("failures: 3") != std::string::npos);
  CHECK(text.find("errors: 0") != std::string::npos);

  std::string csv = report_csv(report);
  CHECK(csv.rfind("conjecture,case,prime,exponent,modulus,outcome,detail,lhs,rhs\n", 0) == 0);
  CHECK(csv.find("f,0,5,1,5^1,fail,,1,2") != std::string::npos);

  CHECK(report_exit_code(report) == 1);
  Report clean = run_sweep(config);  // builtin registry has no failures here
  CHECK(report_exit_code(clean) == 0);
}

TEST_CASE("fail fast stops claiming primes") {
  auto registry = tiny_registry(
      "conjecture \"g\" { case p mod 100 in {37}: 1 === 2 (mod p^1); }\n");
  SweepConfig config;
  config.lo = 3;
  config.hi = 97;
  config.jobs = 1;
  config.fail_fast = true;
  Report report = run_sweep(config, registry);
  CHECK(report.failures() == 1);
  // 37 fails; with one worker nothing past 41 is claimed
  CHECK(report.primes_swept < 25);
  for (const VerificationRecord& rec : report.records) CHECK(rec.prime <= 41);
}

TEST_CASE("exponent cap versus stated modulus") {
  auto registry = tiny_registry(
      "conjecture \"h\" { case all: p === p (mod p^4); }\n");
  SweepConfig config;
  config.lo = 5;
  config.hi = 5;
  config.exponent_cap = 2;
  Report report = run_sweep(config, registry);
  REQUIRE(report.records.size() == 1);
  CHECK(report.records[0].outcome == VerificationRecord::Outcome::skipped);
  CHECK(report.records[0].detail == "exponent-cap");
  config.exponent_cap = 4;
  Report full = run_sweep(config, registry);
  REQUIRE(full.records.size() == 1);
  CHECK(full.records[0].outcome == VerificationRecord::Outcome::pass);
  CHECK(full.records[0].mod_exp == 4);
}

TEST_CASE("huge primes stay within native moduli") {
  // p^5 for this prime exceeds 2^63, so a cap-5 request must degrade to the
  // largest exponent that fits instead of overflowing.
  auto registry = tiny_registry(
      "conjecture \"i\" { case all: p === p (mod p^5); }\n"
      "conjecture \"j\" { case all: p === p (mod p^2); }\n");
  SweepConfig config;
  config.lo = 9000000;
  config.hi = 9000100;
  config.exponent_cap = 5;
  Report report = run_sweep(config, registry);
  CHECK(report.primes_swept > 0);
  CHECK(report.failures() == 0);
  CHECK(report.errors() == 0);
  bool saw_skip = false, saw_pass = false;
  for (const VerificationRecord& rec : report.records) {
    if (rec.conjecture_id == "i") {
      CHECK(rec.outcome == VerificationRecord::Outcome::skipped);
      CHECK(rec.detail == "modulus-too-large");
      saw_skip = true;
    } else {
      CHECK(rec.outcome == VerificationRecord::Outcome::pass);
      saw_pass = true;
    }
  }
  CHECK(saw_skip);
  CHECK(saw_pass);
}

TEST_CASE("report files are written in the requested format") {
  SweepConfig config;
  config.lo = 5;
  config.hi = 13;
  config.patterns = {"thm-t4*"};
  Report report = run_sweep(config);
  CHECK_THROWS_AS(write_report(report, "/tmp/supercong_test_report.xml", "xml"),
                  std::runtime_error);
  write_report(report, "/tmp/supercong_test_report.json", "json");
  write_report(report, "/tmp/supercong_test_report.csv", "csv");
  write_report(report, "/tmp/supercong_test_report.txt", "text");
}
