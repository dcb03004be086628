#pragma once

// Tables of the four central binomial families as valuation-unit pairs, and
// the evaluator for sums
//   sum_{k=0}^{L} w(k) * C(2k,k)^a C(3k,k)^b C(4k,2k)^c C(6k,3k)^d * u_k
//                 * (bn/bd)^k / ((k+1)^j or (2k-1)^j)
// with L = p-1 or (p-1)/2.  Each term is assembled exactly as p^v * unit and
// divided once, so terms whose numerator valuation exactly covers a
// p-divisible denominator still come out right mod p^e.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "supercong/modring.hpp"
#include "supercong/seqgen.hpp"

namespace supercong {

struct BinomTables {
  // Entry k holds the exact valuation and unit (mod p^e) of the binomial.
  std::vector<ValUnit> c2;  // C(2k,k)
  std::vector<ValUnit> c3;  // C(3k,k)
  std::vector<ValUnit> c4;  // C(4k,2k)
  std::vector<ValUnit> c6;  // C(6k,3k)
};

// k = 0 .. p-1, built incrementally from the term ratios.
BinomTables build_binom_tables(const Modulus& mod);

// C(n, r) mod p^e for 0 <= n < p (all factors are then units).
// Out-of-range r gives 0.
Residue binom_floor(const Modulus& mod, long long n, long long r);

// Weight polynomial sum_i c[i] * k^i.
struct KPoly {
  std::vector<long long> c{1};
  friend bool operator==(const KPoly&, const KPoly&) = default;
};

enum class DenomKind { none, k_plus_1, two_k_minus_1 };
enum class SumLimit { full, half };  // p-1 resp. (p-1)/2

struct SumSpec {
  KPoly weight;
  unsigned n2 = 0, n3 = 0, n4 = 0, n6 = 0;  // binomial family exponents
  std::optional<Seq> seq;                   // extra factor u_k
  long long base_num = 1;                   // term gains (base_num/base_den)^k
  long long base_den = 1;
  DenomKind denom = DenomKind::none;
  unsigned denom_exp = 0;  // 1..3
  SumLimit limit = SumLimit::full;
  friend bool operator==(const SumSpec&, const SumSpec&) = default;
};

// Throws base_divisible_by_p when p | base_den (the caller records a skip),
// negative_valuation when a term's denominator valuation is uncovered.
// SumSpecs carrying a sequence factor must go through sequence_weighted_sum.
Residue weighted_sum(const Modulus& mod, const BinomTables& tables,
                     const SumSpec& spec);
Residue sequence_weighted_sum(const Modulus& mod, const BinomTables& tables,
                              const SumSpec& spec,
                              std::span<const Residue> seq_values);

}  // namespace supercong
