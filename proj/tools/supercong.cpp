// Command line front end: sweep primes against the built-in registry,
// list registry entries, or validate statement files.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "supercong/conjdsl.hpp"
#include "supercong/harness.hpp"
#include "supercong/version.hpp"

namespace {

// Accepts "LO..HI", "LO-HI" or a single value.
bool parse_prime_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi) {
  std::size_t sep = text.find("..");
  std::size_t skip = 2;
  if (sep == std::string::npos) {
    sep = text.find('-', 1);
    skip = 1;
  }
  try {
    if (sep == std::string::npos) {
      lo = hi = std::stoull(text);
      return true;
    }
    lo = std::stoull(text.substr(0, sep));
    hi = std::stoull(text.substr(sep + skip));
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

int run_verify(const supercong::SweepConfig& config) {
  supercong::Report report = supercong::run_sweep(config);
  if (!config.report_path.empty()) {
    supercong::write_report(report, config.report_path, config.format);
    std::cerr << "report written to " << config.report_path << "\n";
    std::cout << supercong::report_text(report);
  } else if (config.format == "json") {
    std::cout << supercong::report_json(report);
  } else if (config.format == "csv") {
    std::cout << supercong::report_csv(report);
  } else {
    std::cout << supercong::report_text(report);
  }
  return supercong::report_exit_code(report);
}

int run_list(bool verbose) {
  const auto& registry = supercong::builtin_registry();
  for (const supercong::ConjectureSpec& spec : registry) {
    std::cout << spec.id;
    std::cout << (spec.is_theorem ? "  [proved]" : "  [open]");
    if (spec.low_confidence) std::cout << " [low-confidence]";
    std::cout << "  cases=" << spec.cases.size();
    if (!spec.excluded.empty()) {
      std::cout << "  excludes=";
      for (std::size_t i = 0; i < spec.excluded.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << spec.excluded[i];
      }
    }
    std::cout << "\n";
    if (verbose) std::cout << supercong::print_conjecture(spec) << "\n";
  }
  std::cerr << registry.size() << " entries\n";
  return 0;
}

int run_parse(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    return 2;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    std::vector<supercong::ConjectureSpec> specs =
        supercong::parse_registry(buffer.str(), path);
    for (const supercong::ConjectureSpec& spec : specs)
      std::cout << spec.id << "\n";
    std::cerr << path << ": " << specs.size() << " entries ok\n";
    return 0;
  } catch (const supercong::parse_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(supercong::engine_name) +
               " - prime-power congruence checker for binomial sums"};
  app.set_version_flag("--version", std::string(supercong::engine_version));
  app.require_subcommand(1);

  // verify
  supercong::SweepConfig config;
  config.lo = 3;
  config.hi = 199;
  std::string primes_arg;
  bool allow_large = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check registry entries over a range of primes");
  verify->add_option("--primes", primes_arg,
                     "Prime range LO..HI, inclusive (default 3..199)");
  verify->add_option("--conjectures", config.patterns,
                     "Entry id globs ('*' and '?'); repeatable; default all");
  verify->add_option("--exponent-cap", config.exponent_cap,
                     "Highest modulus exponent to check (1-5)")
      ->check(CLI::Range(1u, 5u));
  verify->add_option("--jobs", config.jobs, "Worker threads")
      ->check(CLI::Range(1u, 256u));
  verify->add_option("--report", config.report_path, "Write the report to this file");
  verify->add_option("--format", config.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  verify->add_flag("--fail-fast", config.fail_fast,
                   "Stop claiming new primes after the first failure");
  verify->add_flag("--large-range-ok", allow_large,
                   "Acknowledge a sweep beyond 10000 (can take a long time)");

  // list
  bool list_verbose = false;
  CLI::App* list = app.add_subcommand("list", "List registry entries");
  list->add_flag("-v,--verbose", list_verbose, "Print each entry's full text");

  // parse
  std::string parse_path;
  CLI::App* parse = app.add_subcommand("parse", "Validate a statement file");
  parse->add_option("file", parse_path, "File to parse")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      if (!primes_arg.empty() && !parse_prime_range(primes_arg, config.lo, config.hi)) {
        std::cerr << "error: bad prime range '" << primes_arg << "'\n";
        return 2;
      }
      if (config.hi > 10000 && !allow_large) {
        std::cerr << "error: sweeping past 10000 takes a while; pass "
                     "--large-range-ok to confirm\n";
        return 2;
      }
      return run_verify(config);
    }
    if (list->parsed()) return run_list(list_verbose);
    if (parse->parsed()) return run_parse(parse_path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
