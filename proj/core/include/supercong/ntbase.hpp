#pragma once

// Prime sieving, Legendre symbols, exact floor arithmetic and representation
// of primes by binary quadratic forms t*p = alpha*x^2 + beta*y^2.

#include <cstdint>
#include <optional>
#include <vector>

#include "supercong/modring.hpp"

namespace supercong {

// Primes in [lo, hi], ascending.
std::vector<std::uint64_t> sieve_primes(std::uint64_t lo, std::uint64_t hi);

// Legendre symbol (a|p) in {-1, 0, 1} for an odd prime p; a may be negative.
int legendre(long long a, std::uint64_t p);

// floor(num / den) for den > 0, exact for negative numerators too.
long long floor_div(long long num, long long den);

// floor((a*p + b) / c) with c > 0.  This is the only floor shape the
// evaluator needs ([p/4], [3p/8], (p-1)/2, ...).
long long floor_linear(long long a, long long b, long long c, std::uint64_t p);

struct QuadForm {
  unsigned t = 1;      // 1, 2 or 4
  unsigned alpha = 1;
  unsigned beta = 1;
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

struct QuadRep {
  QuadForm form;
  std::uint64_t x = 0;
  std::uint64_t y = 0;
};

// Searches x, y >= 1 with t*p = alpha*x^2 + beta*y^2 by brute force over y.
// Returns nullopt when no representation exists.  Throws
// ambiguous_representation if two solutions with different x^2 show up; for
// forms with alpha != beta (all forms used here) a represented prime has a
// unique solution up to signs, so this never fires in normal operation.
std::optional<QuadRep> represent_form(std::uint64_t p, QuadForm form);

// Conjunction of primality side conditions attached to a congruence case.
struct CondAtom {
  enum class Kind {
    always,
    mod_in,        // p mod n is one of `classes`
    legendre_is,   // (value | p) == sign
    legendre_of_p, // (p | value) == sign, value an odd prime
    prime_neq,     // p != value
  };
  Kind kind = Kind::always;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> classes;
  long long value = 0;
  int sign = 0;
  friend bool operator==(const CondAtom&, const CondAtom&) = default;
};

struct PrimeCondition {
  std::vector<CondAtom> atoms;  // empty means "all primes"
  friend bool operator==(const PrimeCondition&, const PrimeCondition&) = default;
};

bool check_condition(const PrimeCondition& cond, std::uint64_t p);

}  // namespace supercong
