#include "supercong/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "supercong/version.hpp"

namespace supercong {

namespace {

using json = nlohmann::json;
using clock_type = std::chrono::steady_clock;

double elapsed_seconds(clock_type::time_point from) {
  return std::chrono::duration<double>(clock_type::now() - from).count();
}

// Largest exponent e' <= e with p^e' < 2^63.
unsigned fitting_exponent(std::uint64_t p, unsigned e) {
  unsigned fit = 1;
  unsigned __int128 pe = p;
  for (unsigned r = 2; r <= e; ++r) {
    pe *= p;
    if (pe >= (static_cast<unsigned __int128>(1) << 63)) break;
    fit = r;
  }
  return fit;
}

std::string outcome_str(VerificationRecord::Outcome o) {
  return std::string(outcome_name(o));
}

VerificationRecord::Outcome outcome_from(const std::string& s) {
  for (auto o : {VerificationRecord::Outcome::pass, VerificationRecord::Outcome::fail,
                 VerificationRecord::Outcome::skipped, VerificationRecord::Outcome::error})
    if (s == outcome_name(o)) return o;
  throw std::runtime_error("unknown outcome '" + s + "'");
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view text) {
  // Iterative wildcard match with backtracking to the last '*'.
  std::size_t pi = 0, ti = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (ti < text.size()) {
    if (pi < pattern.size() &&
        (pattern[pi] == '?' || pattern[pi] == text[ti])) {
      ++pi;
      ++ti;
    } else if (pi < pattern.size() && pattern[pi] == '*') {
      star = pi++;
      mark = ti;
    } else if (star != std::string_view::npos) {
      pi = star + 1;
      ti = ++mark;
    } else {
      return false;
    }
  }
  while (pi < pattern.size() && pattern[pi] == '*') ++pi;
  return pi == pattern.size();
}

bool selected(const SweepConfig& config, std::string_view id) {
  if (config.patterns.empty()) return true;
  for (const std::string& pat : config.patterns)
    if (glob_match(pat, id)) return true;
  return false;
}

std::uint64_t Report::passes() const {
  std::uint64_t n = 0;
  for (const ConjectureStats& s : stats) n += s.passes;
  return n;
}

std::uint64_t Report::failures() const {
  std::uint64_t n = 0;
  for (const ConjectureStats& s : stats) n += s.failures;
  return n;
}

std::uint64_t Report::errors() const {
  std::uint64_t n = 0;
  for (const ConjectureStats& s : stats) n += s.errors;
  return n;
}

std::uint64_t Report::skips() const {
  std::uint64_t n = 0;
  for (const ConjectureStats& s : stats)
    for (const auto& [reason, count] : s.skips) n += count;
  return n;
}

bool record_equal(const VerificationRecord& a, const VerificationRecord& b) {
  return a.conjecture_id == b.conjecture_id && a.case_index == b.case_index &&
         a.prime == b.prime && a.mod_exp == b.mod_exp && a.outcome == b.outcome &&
         a.detail == b.detail && a.lhs == b.lhs && a.rhs == b.rhs;
}

bool report_equal(const Report& a, const Report& b) {
  if (!(a.config == b.config) || a.engine != b.engine ||
      a.primes_swept != b.primes_swept || a.seconds != b.seconds ||
      a.stats != b.stats || a.records.size() != b.records.size())
    return false;
  for (std::size_t i = 0; i < a.records.size(); ++i)
    if (!record_equal(a.records[i], b.records[i])) return false;
  return true;
}

Report run_sweep(const SweepConfig& config) {
  return run_sweep(config, builtin_registry());
}

Report run_sweep(const SweepConfig& config,
                 const std::vector<ConjectureSpec>& registry) {
  if (config.lo < 3) throw std::invalid_argument("prime range must start at 3 or above");
  if (config.hi < config.lo) throw std::invalid_argument("prime range is empty");
  if (config.exponent_cap < 1 || config.exponent_cap > 5)
    throw std::invalid_argument("exponent cap must be between 1 and 5");
  if (config.jobs < 1) throw std::invalid_argument("need at least one worker");

  const auto sweep_start = clock_type::now();

  // Selection, ordered by id: canonical within-prime record order.
  std::vector<const ConjectureSpec*> picked;
  for (const ConjectureSpec& spec : registry)
    if (selected(config, spec.id)) picked.push_back(&spec);
  std::sort(picked.begin(), picked.end(),
            [](const ConjectureSpec* a, const ConjectureSpec* b) { return a->id < b->id; });

  unsigned stated_max = 1;
  for (const ConjectureSpec* spec : picked)
    for (const CaseSpec& c : spec->cases) stated_max = std::max(stated_max, c.mod_exp);
  const unsigned wanted_exp = std::min(stated_max, config.exponent_cap);

  const std::vector<std::uint64_t> primes = sieve_primes(config.lo, config.hi);

  struct PrimeSlot {
    std::vector<VerificationRecord> records;
    std::vector<double> entry_seconds;  // parallel to `picked`
    bool done = false;
  };
  std::vector<PrimeSlot> slots(primes.size());

  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> stop{false};

  auto worker = [&] {
    while (true) {
      if (stop.load(std::memory_order_relaxed) && config.fail_fast) break;
      const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
      if (i >= primes.size()) break;
      const std::uint64_t p = primes[i];
      PrimeSlot& slot = slots[i];
      slot.entry_seconds.assign(picked.size(), 0.0);
      Modulus mod(p, fitting_exponent(p, wanted_exp));
      EvalContext ctx(mod);
      for (std::size_t j = 0; j < picked.size(); ++j) {
        const auto entry_start = clock_type::now();
        std::vector<VerificationRecord> recs =
            check_conjecture(ctx, *picked[j], config.exponent_cap);
        slot.entry_seconds[j] = elapsed_seconds(entry_start);
        for (VerificationRecord& rec : recs) {
          if (rec.outcome == VerificationRecord::Outcome::fail && config.fail_fast)
            stop.store(true, std::memory_order_relaxed);
          slot.records.push_back(std::move(rec));
        }
      }
      slot.done = true;
    }
  };

  const unsigned thread_count =
      static_cast<unsigned>(std::min<std::size_t>(config.jobs, primes.size()));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  Report report;
  report.config = config;
  report.engine = std::string(engine_name) + " " + std::string(engine_version);
  std::map<std::string, ConjectureStats> stats;
  for (const ConjectureSpec* spec : picked) {
    ConjectureStats& s = stats[spec->id];
    s.id = spec->id;
    s.is_theorem = spec->is_theorem;
    s.low_confidence = spec->low_confidence;
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    PrimeSlot& slot = slots[i];
    if (!slot.done) continue;
    ++report.primes_swept;
    for (std::size_t j = 0; j < picked.size(); ++j)
      stats[picked[j]->id].seconds += slot.entry_seconds[j];
    std::string last_id;
    for (VerificationRecord& rec : slot.records) {
      ConjectureStats& s = stats[rec.conjecture_id];
      if (rec.conjecture_id != last_id) {
        ++s.primes;
        last_id = rec.conjecture_id;
      }
      switch (rec.outcome) {
        case VerificationRecord::Outcome::pass: ++s.passes; break;
        case VerificationRecord::Outcome::fail: ++s.failures; break;
        case VerificationRecord::Outcome::error: ++s.errors; break;
        case VerificationRecord::Outcome::skipped: ++s.skips[rec.detail]; break;
      }
      report.records.push_back(std::move(rec));
    }
  }
  report.stats.reserve(stats.size());
  for (auto& [id, s] : stats) report.stats.push_back(std::move(s));
  report.seconds = elapsed_seconds(sweep_start);
  return report;
}

namespace {

json config_to_json(const SweepConfig& c) {
  return json{{"lo", c.lo},
              {"hi", c.hi},
              {"patterns", c.patterns},
              {"exponent_cap", c.exponent_cap},
              {"jobs", c.jobs},
              {"report_path", c.report_path},
              {"format", c.format},
              {"fail_fast", c.fail_fast}};
}

SweepConfig config_from_json(const json& j) {
  SweepConfig c;
  c.lo = j.at("lo").get<std::uint64_t>();
  c.hi = j.at("hi").get<std::uint64_t>();
  c.patterns = j.at("patterns").get<std::vector<std::string>>();
  c.exponent_cap = j.at("exponent_cap").get<unsigned>();
  c.jobs = j.at("jobs").get<unsigned>();
  c.report_path = j.at("report_path").get<std::string>();
  c.format = j.at("format").get<std::string>();
  c.fail_fast = j.at("fail_fast").get<bool>();
  return c;
}

}  // namespace

std::string report_json(const Report& report) {
  json results = json::array();
  for (const VerificationRecord& rec : report.records) {
    json row{{"id", rec.conjecture_id}, {"case", rec.case_index},
             {"p", rec.prime},          {"e", rec.mod_exp},
             {"outcome", outcome_str(rec.outcome)}, {"detail", rec.detail}};
    if (rec.outcome == VerificationRecord::Outcome::fail) {
      row["lhs"] = rec.lhs;
      row["rhs"] = rec.rhs;
    }
    results.push_back(std::move(row));
  }
  json conjectures = json::array();
  for (const ConjectureStats& s : report.stats) {
    conjectures.push_back(json{{"id", s.id},
                               {"theorem", s.is_theorem},
                               {"low_confidence", s.low_confidence},
                               {"primes", s.primes},
                               {"passes", s.passes},
                               {"failures", s.failures},
                               {"errors", s.errors},
                               {"skips", s.skips},
                               {"seconds", s.seconds}});
  }
  json doc{{"schema", "supercong-report/1"},
           {"engine", report.engine},
           {"config", config_to_json(report.config)},
           {"summary",
            json{{"primes", report.primes_swept},
                 {"records", report.records.size()},
                 {"passes", report.passes()},
                 {"failures", report.failures()},
                 {"errors", report.errors()},
                 {"skips", report.skips()},
                 {"seconds", report.seconds}}},
           {"conjectures", std::move(conjectures)},
           {"results", std::move(results)}};
  return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("bad report json: ") + ex.what());
  }
  if (doc.value("schema", "") != "supercong-report/1")
    throw std::runtime_error("unsupported report schema");
  Report report;
  report.engine = doc.at("engine").get<std::string>();
  report.config = config_from_json(doc.at("config"));
  report.primes_swept = doc.at("summary").at("primes").get<std::uint64_t>();
  report.seconds = doc.at("summary").at("seconds").get<double>();
  for (const json& row : doc.at("conjectures")) {
    ConjectureStats s;
    s.id = row.at("id").get<std::string>();
    s.is_theorem = row.at("theorem").get<bool>();
    s.low_confidence = row.at("low_confidence").get<bool>();
    s.primes = row.at("primes").get<std::uint64_t>();
    s.passes = row.at("passes").get<std::uint64_t>();
    s.failures = row.at("failures").get<std::uint64_t>();
    s.errors = row.at("errors").get<std::uint64_t>();
    s.skips = row.at("skips").get<std::map<std::string, std::uint64_t>>();
    s.seconds = row.at("seconds").get<double>();
    report.stats.push_back(std::move(s));
  }
  for (const json& row : doc.at("results")) {
    VerificationRecord rec;
    rec.conjecture_id = row.at("id").get<std::string>();
    rec.case_index = row.at("case").get<unsigned>();
    rec.prime = row.at("p").get<std::uint64_t>();
    rec.mod_exp = row.at("e").get<unsigned>();
    rec.outcome = outcome_from(row.at("outcome").get<std::string>());
    rec.detail = row.at("detail").get<std::string>();
    rec.lhs = row.value("lhs", std::uint64_t{0});
    rec.rhs = row.value("rhs", std::uint64_t{0});
    report.records.push_back(std::move(rec));
  }
  return report;
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_csv(const Report& report) {
  std::string out = "conjecture,case,prime,exponent,modulus,outcome,detail,lhs,rhs\n";
  for (const VerificationRecord& rec : report.records) {
    out += csv_escape(rec.conjecture_id);
    out += ',';
    out += std::to_string(rec.case_index);
    out += ',';
    out += std::to_string(rec.prime);
    out += ',';
    out += std::to_string(rec.mod_exp);
    out += ',';
    out += std::to_string(rec.prime) + "^" + std::to_string(rec.mod_exp);
    out += ',';
    out += outcome_str(rec.outcome);
    out += ',';
    out += csv_escape(rec.detail);
    if (rec.outcome == VerificationRecord::Outcome::fail) {
      out += ',';
      out += std::to_string(rec.lhs);
      out += ',';
      out += std::to_string(rec.rhs);
    } else {
      out += ",,";
    }
    out += '\n';
  }
  return out;
}

std::string report_text(const Report& report) {
  std::ostringstream out;
  out << report.engine << " sweep: primes " << report.config.lo << ".."
      << report.config.hi << ", exponent cap " << report.config.exponent_cap
      << ", " << report.primes_swept << " primes, " << report.records.size()
      << " records\n\n";
  std::size_t width = 10;
  for (const ConjectureStats& s : report.stats) width = std::max(width, s.id.size());
  out << std::string(width, ' ') << "  primes   pass   fail  error   skip\n";
  for (const ConjectureStats& s : report.stats) {
    std::uint64_t skip_total = 0;
    for (const auto& [reason, count] : s.skips) skip_total += count;
    out << s.id << std::string(width - s.id.size(), ' ');
    auto cell = [&out](std::uint64_t v) {
      std::string t = std::to_string(v);
      out << std::string(t.size() < 7 ? 7 - t.size() : 1, ' ') << t;
    };
    cell(s.primes);
    cell(s.passes);
    cell(s.failures);
    cell(s.errors);
    cell(skip_total);
    if (s.failures > 0 && s.low_confidence) out << "  (low confidence)";
    out << '\n';
  }
  out << '\n';
  bool failure_detail = false;
  for (const VerificationRecord& rec : report.records) {
    if (rec.outcome != VerificationRecord::Outcome::fail &&
        rec.outcome != VerificationRecord::Outcome::error)
      continue;
    if (!failure_detail) {
      out << "problem records:\n";
      failure_detail = true;
    }
    out << "  " << rec.conjecture_id << " case " << rec.case_index << " p="
        << rec.prime << " mod p^" << rec.mod_exp << ": "
        << outcome_str(rec.outcome);
    if (rec.outcome == VerificationRecord::Outcome::fail)
      out << " lhs=" << rec.lhs << " rhs=" << rec.rhs;
    else
      out << " (" << rec.detail << ")";
    out << '\n';
  }
  if (failure_detail) out << '\n';
  std::uint64_t lowconf_failures = 0;
  for (const ConjectureStats& s : report.stats)
    if (s.low_confidence) lowconf_failures += s.failures;
  out << "passes: " << report.passes() << '\n';
  out << "skips: " << report.skips() << '\n';
  out << "failures: " << report.failures() << '\n';
  if (lowconf_failures > 0)
    out << "  of which low-confidence transcriptions: " << lowconf_failures << '\n';
  out << "errors: " << report.errors() << '\n';
  return std::move(out).str();
}

int report_exit_code(const Report& report) {
  if (report.errors() > 0) return 2;
  if (report.failures() > 0) return 1;
  return 0;
}

void write_report(const Report& report, const std::string& path,
                  const std::string& format) {
  std::string body;
  if (format == "json") body = report_json(report);
  else if (format == "csv") body = report_csv(report);
  else if (format == "text") body = report_text(report);
  else throw std::runtime_error("unknown report format '" + format + "'");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace supercong
