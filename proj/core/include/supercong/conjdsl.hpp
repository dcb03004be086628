#pragma once

// Statement language for prime-power congruences: parse, print, evaluate.
// A registry entry looks like
//
//   conjecture "bs-07" {
//     exclude 2, 3;
//     define s2 = sum(k, 0, p-1, k^2 * cb2(k)^3 / (-512)^k);
//     case p mod 8 in {1, 3} with p = x^2 + 2*y^2:
//       s2 === (3/2)*x^2 - p  (mod p^3);
//     case p mod 8 in {5, 7}:
//       s2 === 3*R1 - 2*p  (mod p^2);
//   }
//
// The grammar is documented in docs/grammar.ebnf.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "supercong/modring.hpp"
#include "supercong/ntbase.hpp"
#include "supercong/seqgen.hpp"
#include "supercong/sumeval.hpp"

namespace supercong {

class parse_error : public std::runtime_error {
 public:
  parse_error(std::string file, int line, int col, const std::string& what)
      : std::runtime_error(file.empty()
                               ? std::to_string(line) + ":" + std::to_string(col) + ": " + what
                               : file + ":" + std::to_string(line) + ":" +
                                     std::to_string(col) + ": " + what),
        file_(std::move(file)), line_(line), col_(col) {}
  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  std::string file_;
  int line_;
  int col_;
};

// floor((a*p + b) / c), c > 0.
struct FloorLin {
  long long a = 0, b = 0, c = 1;
  friend bool operator==(const FloorLin&, const FloorLin&) = default;
};

enum class ExprKind {
  number,      // ival
  prime,       // p
  var_x, var_y,
  add, sub, mul, div_,  // lhs, rhs
  neg,                  // lhs
  pow_int,     // lhs ^ ival
  pow_fl,      // lhs ^ (sign * fl(...)), sign in ival (+1/-1), floor in flin
  legendre_a,  // (ival | p)
  legendre_p,  // (p | ival)
  floor_lin,   // fl(...) as a value
  fbinom,      // C(fl(flin), fl(flin2))
  special,     // B/E/U with index flin (a*p + b, c == 1); ival: 0=B,1=E,2=U
  builtin,     // R-quantity, ival is the builtin index
  sum_node,    // weighted sum, payload in sum
  ident,       // named define, payload in name
  // Parse-internal kinds, only valid inside a sum body; normalization into
  // SumSpec consumes them, so finished ASTs never contain them.
  var_k,       // the summation variable
  pow_k,       // lhs ^ k, lhs a constant
  binom_k,     // table factor, ival in {2, 3, 4, 6}
  seq_k,       // sequence factor, ival is the Seq index
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  long long ival = 0;
  FloorLin flin, flin2;
  SumSpec sum;
  std::string name;
  ExprPtr lhs, rhs;
};

bool expr_equal(const Expr& a, const Expr& b);

// The R-quantities, indexed; names are "R1", "R2", "R3", "R7", "R11",
// "R20", "R24", "R40".
inline constexpr std::string_view builtin_names[] = {
    "R1", "R2", "R3", "R7", "R11", "R20", "R24", "R40"};
inline constexpr int builtin_count = 8;
int builtin_index(std::string_view name);  // -1 when not a builtin

struct RepClause {
  QuadForm form;
  friend bool operator==(const RepClause&, const RepClause&) = default;
};

struct CaseSpec {
  PrimeCondition cond;
  std::optional<RepClause> rep;
  ExprPtr lhs, rhs;
  unsigned mod_exp = 1;
};

struct ConjectureSpec {
  std::string id;
  bool is_theorem = false;
  bool low_confidence = false;
  std::vector<std::uint64_t> excluded;
  std::vector<std::pair<std::string, ExprPtr>> defines;
  std::vector<CaseSpec> cases;
};

bool spec_equal(const ConjectureSpec& a, const ConjectureSpec& b);

// Parsing stops at the first error and reports file:line:col.
std::vector<ConjectureSpec> parse_registry(std::string_view text,
                                           std::string_view filename = "");

// Canonical text form; parse(print(specs)) reproduces the same ASTs.
std::string print_expr(const Expr& e);
std::string print_conjecture(const ConjectureSpec& spec);
std::string print_registry(std::span<const ConjectureSpec> specs);

// Built-in registry, parsed once from text embedded at build time.
const std::vector<ConjectureSpec>& builtin_registry();
// The embedded sources, for tooling: name -> text.
std::span<const std::pair<std::string_view, std::string_view>> registry_files();

// Per-prime evaluation state.  Everything expensive is cached so that every
// case of every conjecture checked at this prime shares tables, sequence
// prefixes, named sums and special numbers.
struct EvalContext {
  EvalContext(const Modulus& mod_) : mod(mod_), tables(build_binom_tables(mod_)) {}
  const Modulus& mod;
  BinomTables tables;
  std::unordered_map<int, std::vector<Residue>> seq_cache;
  std::unordered_map<std::string, Residue> sum_cache;   // canonical print
  std::unordered_map<int, Residue> builtin_cache;
  std::unordered_map<long long, std::uint64_t> special_cache;  // kind*2^32+n
  const QuadRep* rep = nullptr;  // bound during one case
  const ConjectureSpec* owner = nullptr;

  const std::vector<Residue>& seq_values(Seq s);
};

Residue eval_expr(EvalContext& ctx, const Expr& e);

struct VerificationRecord {
  std::string conjecture_id;
  unsigned case_index = 0;
  std::uint64_t prime = 0;
  unsigned mod_exp = 0;  // exponent the claim was checked at
  enum class Outcome { pass, fail, skipped, error } outcome = Outcome::pass;
  std::string detail;              // skip reason or error kind
  std::uint64_t lhs = 0, rhs = 0;  // residues mod p^mod_exp when outcome == fail
};

std::string_view outcome_name(VerificationRecord::Outcome o);

// One record per case whose condition holds at p (plus a single skip record
// when p is excluded).  exponent_cap limits the stated modulus; the context's
// modulus must satisfy mod.e >= min(stated, cap) or the case is skipped as
// modulus-too-large.  Errors are captured in records, never thrown.
std::vector<VerificationRecord> check_conjecture(EvalContext& ctx,
                                                 const ConjectureSpec& spec,
                                                 unsigned exponent_cap);

}  // namespace supercong
